#include "edsm/harness/presets.hpp"

#include <functional>
#include <map>

#include "edsm/errors.hpp"

namespace edsm::harness {
namespace {

constexpr double kFigureNoise = 0.3;
constexpr double kRetrievalNoise = 0.1;
constexpr double kFewIncidentNoise = 0.1;
// Absolute Tikhonov parameter for the retrieval preset; see README.
constexpr double kRetrievalAlpha = 1e-2;

ComponentSpec shape(CurveKind kind, double cx = 0.0, double cy = 0.0, double scale = 1.0) {
    return {kind, Vec2(cx, cy), scale};
}

ExperimentConfig base(std::string name, std::vector<ComponentSpec> scene, BoundaryCondition bc) {
    ExperimentConfig c;
    c.name = std::move(name);
    c.scene = std::move(scene);
    c.bc = bc;
    c.delta = kFigureNoise;
    c.seed = 1;
    return c;
}

SamplingGrid square_grid(int points) { return SamplingGrid(-6.0, 6.0, -6.0, 6.0, points, points); }

Preset single(std::string name, std::string summary, ExperimentConfig c) {
    return {std::move(name), std::move(summary), {std::move(c)}};
}

Preset limited_quarters() {
    Preset p{"limited-quarters", "kite, Dirichlet, no noise, observation on one quarter arc", {}};
    const char* arcs[4] = {"[0, pi/2)", "[pi/2, pi)", "[pi, 3pi/2)", "[3pi/2, 2pi)"};
    for (int q = 0; q < 4; ++q) {
        ExperimentConfig c = base("q" + std::to_string(q + 1), {shape(CurveKind::Kite)},
                                  BoundaryCondition::Dirichlet);
        c.delta = 0.0;
        c.mask = MaskSpec{};
        c.mask->observed = {parse_arc(arcs[q])};
        p.variants.push_back(std::move(c));
    }
    return p;
}

Preset limited_retrieval() {
    Preset p{"limited-retrieval",
             "kite, Dirichlet, ω = 4π, 10% noise, observation on [0, π/2): naive and retrieved",
             {}};
    ExperimentConfig naive = base("naive", {shape(CurveKind::Kite)}, BoundaryCondition::Dirichlet);
    naive.omega = 4.0 * kPi;
    naive.delta = kRetrievalNoise;
    naive.mask = MaskSpec{};
    naive.mask->observed = {parse_arc("[0, pi/2)")};

    ExperimentConfig retrieved = naive;
    retrieved.name = "retrieved";
    retrieved.fill = true;
    retrieved.retrieval = RetrievalParams{5.0, 256, kRetrievalAlpha};

    p.variants = {naive, retrieved};
    return p;
}

Preset few_incident() {
    Preset p{"few-incident", "kite, Dirichlet, SS indicator from a few incident directions", {}};
    const std::pair<const char*, double> singles[4] = {
        {"d-1-0", 0.0}, {"d-0-1", kPi / 2.0}, {"d-m1-0", kPi}, {"d-0-m1", 1.5 * kPi}};
    auto variant = [](std::string name) {
        ExperimentConfig c = base(std::move(name), {shape(CurveKind::Kite)}, BoundaryCondition::Dirichlet);
        c.delta = kFewIncidentNoise;
        c.kinds = {IndicatorKind::SS};
        // With one incident direction d the SS field scales with |q·d⊥|; a diagonal q keeps
        // every axis-aligned direction visible.
        c.polarization = Vec2(1.0, 1.0).normalized();
        c.mask = MaskSpec{};
        return c;
    };
    for (const auto& [name, angle] : singles) {
        ExperimentConfig c = variant(name);
        c.mask->incident_angles = {angle};
        p.variants.push_back(std::move(c));
    }
    for (int count : {2, 4, 8, 16}) {
        ExperimentConfig c = variant("count-" + std::to_string(count));
        c.mask->incident_count = count;
        p.variants.push_back(std::move(c));
    }
    return p;
}

const std::map<std::string, std::function<Preset()>>& registry() {
    using BC = BoundaryCondition;
    static const std::map<std::string, std::function<Preset()>> presets = {
        {"dirichlet-kite",
         [] {
             return single("dirichlet-kite", "rigid kite, 30% noise",
                           base("dirichlet-kite", {shape(CurveKind::Kite)}, BC::Dirichlet));
         }},
        {"dirichlet-pear",
         [] {
             return single("dirichlet-pear", "rigid pear, 30% noise",
                           base("dirichlet-pear", {shape(CurveKind::Pear)}, BC::Dirichlet));
         }},
        {"neumann-kite",
         [] {
             return single("neumann-kite", "kite cavity, 30% noise",
                           base("neumann-kite", {shape(CurveKind::Kite)}, BC::Neumann));
         }},
        {"neumann-pear",
         [] {
             return single("neumann-pear", "pear cavity, 30% noise",
                           base("neumann-pear", {shape(CurveKind::Pear)}, BC::Neumann));
         }},
        {"multiple",
         [] {
             ExperimentConfig c = base("multiple",
                                       {shape(CurveKind::Kite, -3.0, 3.0),
                                        shape(CurveKind::Peanut, 3.0, -3.0)},
                                       BC::Dirichlet);
             c.grid = square_grid(641);
             return single("multiple", "kite at (-3,3) and peanut at (3,-3), 30% noise", c);
         }},
        {"multiscalar",
         [] {
             ExperimentConfig c = base("multiscalar",
                                       {shape(CurveKind::Pear, 0.0, 0.0, 2.0),
                                        shape(CurveKind::Circle, 4.0, 4.0, 0.1)},
                                       BC::Dirichlet);
             return single("multiscalar", "pear of scale 2 and a disk of radius 0.1 at (4,4), 30% noise",
                           c);
         }},
        {"resolutionlimit",
         [] {
             ExperimentConfig c = base("resolutionlimit",
                                       {shape(CurveKind::Circle, -2.0, 0.0, 3.0),
                                        shape(CurveKind::Kite, 2.75, 0.0)},
                                       BC::Dirichlet);
             c.grid = square_grid(641);
             return single("resolutionlimit", "disk of radius 3 at (-2,0) and kite at (2.75,0), 30% noise",
                           c);
         }},
        {"limited-quarters", limited_quarters},
        {"limited-retrieval", limited_retrieval},
        {"few-incident", few_incident},
    };
    return presets;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, make] : registry()) names.push_back(name);
    return names;
}

void make_small(ExperimentConfig& config) {
    config.m = 64;
    config.n = 256;
    config.grid.nx = 161;
    config.grid.ny = 161;
}

Preset preset(std::string_view name, bool small) {
    const auto& presets = registry();
    auto it = presets.find(std::string(name));
    if (it == presets.end()) {
        std::string list;
        for (const auto& n : preset_names()) list += (list.empty() ? "" : ", ") + n;
        throw ConfigError(ConfigError::Kind::UnknownKey, 0,
                          "unknown preset '" + std::string(name) + "'; available presets: " + list);
    }
    Preset p = it->second();
    if (small)
        for (auto& v : p.variants) make_small(v);
    return p;
}

}  // namespace edsm::harness
