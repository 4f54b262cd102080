#include "edsm/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "edsm/errors.hpp"

namespace edsm::harness {
namespace {

using Kind = ConfigError::Kind;

int line_of(const YAML::Node& node) { return node.Mark().line >= 0 ? node.Mark().line + 1 : 0; }

[[noreturn]] void invariant(const YAML::Node& node, const std::string& what) {
    throw ConfigError(Kind::Invariant, line_of(node), what);
}

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double plain_number(std::string_view s, std::string_view context) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw InvalidArgument("cannot parse number '" + std::string(context) + "'");
    }
    return v;
}

// Checks that a mapping has only allowed, non-repeated keys.
void check_keys(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
                std::string_view where) {
    if (!map.IsMap()) invariant(map, std::string(where) + " must be a mapping");
    std::set<std::string> seen;
    for (const auto& kv : map) {
        const std::string key = kv.first.Scalar();
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            std::string list;
            for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
            throw ConfigError(Kind::UnknownKey, line_of(kv.first),
                              "unknown key '" + key + "' in " + std::string(where) +
                                  " (allowed: " + list + ")");
        }
        if (!seen.insert(key).second) {
            throw ConfigError(Kind::Syntax, line_of(kv.first), "duplicate key '" + key + "'");
        }
    }
}

std::string scalar(const YAML::Node& node, std::string_view what) {
    if (!node.IsScalar()) invariant(node, std::string(what) + " must be a scalar");
    return node.Scalar();
}

double number(const YAML::Node& node, std::string_view what) {
    const std::string text = scalar(node, what);
    try {
        return parse_pi_expression(text);
    } catch (const InvalidArgument&) {
        invariant(node, std::string(what) + ": cannot parse number '" + text + "'");
    }
}

template <class Int>
Int integer(const YAML::Node& node, std::string_view what) {
    const std::string text = scalar(node, what);
    std::string_view s = trim(text);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    Int v{};
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        invariant(node, std::string(what) + ": expected an integer, got '" + text + "'");
    }
    return v;
}

bool boolean(const YAML::Node& node, std::string_view what) {
    const std::string text = scalar(node, what);
    if (text == "true") return true;
    if (text == "false") return false;
    invariant(node, std::string(what) + ": expected true or false, got '" + text + "'");
}

Vec2 pair(const YAML::Node& node, std::string_view what) {
    if (!node.IsSequence() || node.size() != 2) invariant(node, std::string(what) + " must be [a, b]");
    return Vec2(number(node[0], what), number(node[1], what));
}

template <class F>
auto sequence(const YAML::Node& node, std::string_view what, F&& item) {
    using T = decltype(item(node));
    std::vector<T> out;
    if (node.IsNull()) return out;
    if (!node.IsSequence()) invariant(node, std::string(what) + " must be a list");
    for (const auto& child : node) out.push_back(item(child));
    return out;
}

ComponentSpec component(const YAML::Node& node) {
    ComponentSpec c;
    if (node.IsScalar()) {
        const std::string text = node.Scalar();
        try {
            if (text.find('@') != std::string::npos) {
                const BoundaryCurve curve = curve_from_description(text);
                return {curve.kind(), curve.center(), curve.scale()};
            }
            c.shape = curve_kind_from_string(text);
        } catch (const InvalidArgument& e) {
            invariant(node, e.what());
        }
        return c;
    }
    check_keys(node, {"shape", "center", "scale"}, "scene component");
    if (!node["shape"]) invariant(node, "scene component needs a shape");
    try {
        c.shape = curve_kind_from_string(scalar(node["shape"], "shape"));
    } catch (const InvalidArgument& e) {
        invariant(node["shape"], e.what());
    }
    if (node["center"]) c.center = pair(node["center"], "center");
    if (node["scale"]) {
        c.scale = number(node["scale"], "scale");
        if (!(c.scale > 0.0) || !std::isfinite(c.scale)) {
            invariant(node["scale"], "scale must be positive, got " + format_number(c.scale));
        }
    }
    return c;
}

std::vector<ComponentSpec> scene_spec(const YAML::Node& node) {
    if (node.IsScalar() && node.Scalar().find('+') != std::string::npos) {
        std::vector<ComponentSpec> out;
        try {
            for (const auto& sc : scene_from_description(node.Scalar(), BoundaryCondition::Dirichlet)
                                      .components()) {
                out.push_back({sc.curve.kind(), sc.curve.center(), sc.curve.scale()});
            }
        } catch (const InvalidArgument& e) {
            invariant(node, e.what());
        }
        return out;
    }
    if (node.IsScalar() || node.IsMap()) return {component(node)};
    auto out = sequence(node, "scene", component);
    if (out.empty()) invariant(node, "scene needs at least one component");
    return out;
}

Arc arc(const YAML::Node& node) {
    if (node.IsSequence()) {
        const Vec2 ab = pair(node, "arc");
        return {ab.x(), ab.y()};
    }
    try {
        return parse_arc(scalar(node, "arc"));
    } catch (const InvalidArgument& e) {
        invariant(node, e.what());
    }
}

MaskSpec mask_spec(const YAML::Node& node) {
    check_keys(node,
               {"observed", "incident", "observed_angles", "incident_angles", "observed_indices",
                "incident_indices", "incident_count"},
               "mask");
    MaskSpec mask;
    auto angle = [](const YAML::Node& n) { return number(n, "angle"); };
    auto index = [](const YAML::Node& n) { return integer<int>(n, "direction index"); };
    if (node["observed"]) mask.observed = sequence(node["observed"], "observed", arc);
    if (node["incident"]) mask.incident = sequence(node["incident"], "incident", arc);
    if (node["observed_angles"]) mask.observed_angles = sequence(node["observed_angles"], "observed_angles", angle);
    if (node["incident_angles"]) mask.incident_angles = sequence(node["incident_angles"], "incident_angles", angle);
    if (node["observed_indices"]) mask.observed_indices = sequence(node["observed_indices"], "observed_indices", index);
    if (node["incident_indices"]) mask.incident_indices = sequence(node["incident_indices"], "incident_indices", index);
    if (node["incident_count"]) mask.incident_count = integer<int>(node["incident_count"], "incident_count");
    return mask;
}

RetrievalParams retrieval_params(const YAML::Node& node) {
    check_keys(node, {"radius", "n_boundary", "alpha"}, "retrieval");
    RetrievalParams p;
    if (node["radius"]) p.radius = number(node["radius"], "radius");
    if (node["n_boundary"]) p.n_boundary = integer<int>(node["n_boundary"], "n_boundary");
    if (node["alpha"]) p.alpha = number(node["alpha"], "alpha");
    if (!(p.radius > 0.0)) invariant(node, "retrieval radius must be positive");
    if (p.n_boundary < 8) invariant(node, "retrieval n_boundary must be at least 8");
    if (p.alpha && !(*p.alpha > 0.0)) invariant(node["alpha"], "retrieval alpha must be positive");
    return p;
}

SamplingGrid grid_spec(const YAML::Node& node) {
    check_keys(node, {"x", "y", "nx", "ny"}, "grid");
    SamplingGrid g;
    Vec2 x(g.x0, g.x1), y(g.y0, g.y1);
    if (node["x"]) x = pair(node["x"], "grid x");
    if (node["y"]) y = pair(node["y"], "grid y");
    int nx = node["nx"] ? integer<int>(node["nx"], "nx") : g.nx;
    int ny = node["ny"] ? integer<int>(node["ny"], "ny") : g.ny;
    try {
        return SamplingGrid(x[0], x[1], y[0], y[1], nx, ny);
    } catch (const InvalidArgument& e) {
        invariant(node, e.what());
    }
}

std::vector<int> resolve_side(int m, const std::vector<Arc>& arcs, const std::vector<double>& angles,
                              const std::vector<int>& indices, const char* what) {
    std::vector<int> out;
    if (arcs.empty() && angles.empty() && indices.empty()) {
        for (int i = 0; i < 2 * m; ++i) out.push_back(i);
        return out;
    }
    out = indices_in_arcs(m, arcs);
    for (double a : angles) {
        double k = std::fmod(a, kTwoPi) * m / kPi;
        if (k < 0.0) k += 2.0 * m;
        const long nearest = std::lround(k);
        if (std::abs(k - static_cast<double>(nearest)) > 1e-9) {
            throw InvalidArgument(std::string(what) + " angle " + format_number(a) +
                                  " is not one of the iπ/m grid directions");
        }
        out.push_back(static_cast<int>(nearest % (2 * m)));
    }
    for (int i : indices) {
        if (i < 0 || i >= 2 * m) {
            throw InvalidArgument(std::string(what) + " index " + std::to_string(i) +
                                  " outside 0.." + std::to_string(2 * m - 1));
        }
        out.push_back(i);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) throw InvalidArgument(std::string(what) + " direction set is empty");
    return out;
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

template <class T, class F>
std::string flow(const std::vector<T>& items, F&& fmt) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + fmt(items[i]);
    return out + "]";
}

std::string arc_text(const Arc& a) {
    return "\"[" + format_number(a.begin) + ", " + format_number(a.end) + ")\"";
}

}  // namespace

double parse_pi_expression(std::string_view text) {
    std::string_view s = trim(text);
    std::size_t at = s.find("pi");
    std::size_t len = 2;
    if (at == std::string_view::npos) {
        at = s.find("π");
        len = std::string_view("π").size();
    }
    if (at == std::string_view::npos) return plain_number(s, text);

    std::string_view coef = trim(s.substr(0, at));
    std::string_view rest = trim(s.substr(at + len));
    if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
    double c = 1.0;
    if (coef == "-")
        c = -1.0;
    else if (!coef.empty() && coef != "+")
        c = plain_number(coef, text);
    double den = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') throw InvalidArgument("cannot parse number '" + std::string(text) + "'");
        den = plain_number(rest.substr(1), text);
        if (den == 0.0) throw InvalidArgument("division by zero in '" + std::string(text) + "'");
    }
    return c * kPi / den;
}

Arc parse_arc(std::string_view text) {
    const std::string_view s = trim(text);
    const auto comma = s.find(',');
    if (s.size() < 5 || s.front() != '[' || s.back() != ')' || comma == std::string_view::npos) {
        throw InvalidArgument("arc must look like \"[a, b)\", got '" + std::string(text) + "'");
    }
    const Arc a{parse_pi_expression(s.substr(1, comma - 1)),
                parse_pi_expression(s.substr(comma + 1, s.size() - comma - 2))};
    if (!(a.end > a.begin)) throw InvalidArgument("arc '" + std::string(text) + "' needs end > begin");
    return a;
}

Scene ExperimentConfig::make_scene() const {
    std::vector<SceneComponent> comps;
    for (const auto& c : scene) comps.push_back({BoundaryCurve(c.shape, c.center, c.scale), bc});
    return Scene(std::move(comps));
}

Medium ExperimentConfig::make_medium() const { return Medium(lambda, mu, omega); }

std::optional<ApertureMask> ExperimentConfig::make_mask() const {
    if (!mask) return std::nullopt;
    const MaskSpec& s = *mask;
    ApertureMask out;
    out.observed = resolve_side(m, s.observed, s.observed_angles, s.observed_indices, "observed");
    if (s.incident_count) {
        if (!s.incident.empty() || !s.incident_angles.empty() || !s.incident_indices.empty()) {
            throw InvalidArgument("incident_count cannot be combined with other incident selections");
        }
        out.incident = evenly_spaced_indices(m, *s.incident_count);
        std::sort(out.incident.begin(), out.incident.end());
    } else {
        out.incident = resolve_side(m, s.incident, s.incident_angles, s.incident_indices, "incident");
    }
    return out;
}

ExperimentConfig parse_config(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ConfigError(Kind::Syntax, e.mark.line >= 0 ? e.mark.line + 1 : 0, e.msg);
    }
    if (!root.IsMap()) throw ConfigError(Kind::Syntax, 1, "config must be a mapping of keys to values");
    check_keys(root,
               {"name", "scene", "bc", "lambda", "mu", "omega", "m", "n", "grid", "delta", "seed",
                "kinds", "polarization", "mask", "fill", "retrieval", "out"},
               "config");

    ExperimentConfig c;
    if (root["name"]) c.name = scalar(root["name"], "name");
    if (c.name.empty() || c.name.find('/') != std::string::npos) {
        invariant(root["name"] ? root["name"] : root, "name must be non-empty without '/'");
    }
    if (!root["scene"]) invariant(root, "config needs a scene");
    c.scene = scene_spec(root["scene"]);
    if (root["bc"]) {
        try {
            c.bc = boundary_condition_from_string(scalar(root["bc"], "bc"));
        } catch (const InvalidArgument& e) {
            invariant(root["bc"], e.what());
        }
    }
    if (root["lambda"]) c.lambda = number(root["lambda"], "lambda");
    if (root["mu"]) c.mu = number(root["mu"], "mu");
    if (root["omega"]) c.omega = number(root["omega"], "omega");
    if (root["m"]) c.m = integer<int>(root["m"], "m");
    if (root["n"]) c.n = integer<int>(root["n"], "n");
    if (root["grid"]) c.grid = grid_spec(root["grid"]);
    if (root["delta"]) c.delta = number(root["delta"], "delta");
    if (root["seed"]) c.seed = integer<std::uint64_t>(root["seed"], "seed");
    if (root["kinds"]) {
        const YAML::Node k = root["kinds"];
        auto kind = [](const YAML::Node& n) {
            try {
                return indicator_kind_from_string(scalar(n, "kind"));
            } catch (const InvalidArgument& e) {
                invariant(n, e.what());
            }
        };
        c.kinds = k.IsScalar() ? std::vector<IndicatorKind>{kind(k)} : sequence(k, "kinds", kind);
        std::set<IndicatorKind> unique(c.kinds.begin(), c.kinds.end());
        if (c.kinds.empty() || unique.size() != c.kinds.size()) {
            invariant(k, "kinds must be a non-empty list without repeats");
        }
    }
    if (root["polarization"]) {
        c.polarization = pair(root["polarization"], "polarization");
        if (std::abs(c.polarization.norm() - 1.0) > 1e-12) {
            invariant(root["polarization"], "polarization must be a unit vector");
        }
    }
    if (root["mask"]) c.mask = mask_spec(root["mask"]);
    if (root["fill"]) c.fill = boolean(root["fill"], "fill");
    if (root["retrieval"]) c.retrieval = retrieval_params(root["retrieval"]);
    if (root["out"]) c.out = scalar(root["out"], "out");

    auto at = [&](const char* key) { return root[key] ? root[key] : root; };
    try {
        (void)Medium(c.lambda, c.mu, c.omega);
    } catch (const InvalidArgument& e) {
        invariant(at("omega"), e.what());
    }
    if (c.m < 1) invariant(at("m"), "m must be at least 1");
    if (c.n < 64 || c.n % 2 != 0) invariant(at("n"), "n must be even and at least 64");
    if (!(c.delta >= 0.0) || !std::isfinite(c.delta)) invariant(at("delta"), "delta must be non-negative");
    double circumradius = 0.0;
    try {
        circumradius = c.make_scene().circumradius();
    } catch (const InvalidArgument& e) {
        invariant(root["scene"], e.what());
    }
    try {
        c.make_mask();
    } catch (const InvalidArgument& e) {
        invariant(at("mask"), e.what());
    }
    if ((c.fill || c.retrieval) && !c.mask) {
        invariant(c.fill ? at("fill") : at("retrieval"), "fill and retrieval need a mask");
    }
    if (c.retrieval && !(c.retrieval->radius > circumradius)) {
        invariant(at("retrieval"), "retrieval radius must exceed the scene circumradius " +
                                        format_number(circumradius));
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string emit_config(const ExperimentConfig& c) {
    auto num = [](double v) { return format_number(v); };
    auto idx = [](int v) { return std::to_string(v); };
    std::ostringstream out;
    out << "name: " << quoted(c.name) << "\n";
    out << "scene:\n";
    for (const auto& s : c.scene) {
        out << "  - {shape: " << to_string(s.shape) << ", center: [" << num(s.center.x()) << ", "
            << num(s.center.y()) << "], scale: " << num(s.scale) << "}\n";
    }
    out << "bc: " << to_string(c.bc) << "\n";
    out << "lambda: " << num(c.lambda) << "\n";
    out << "mu: " << num(c.mu) << "\n";
    out << "omega: " << num(c.omega) << "\n";
    out << "m: " << c.m << "\n";
    out << "n: " << c.n << "\n";
    out << "grid: {x: [" << num(c.grid.x0) << ", " << num(c.grid.x1) << "], y: [" << num(c.grid.y0)
        << ", " << num(c.grid.y1) << "], nx: " << c.grid.nx << ", ny: " << c.grid.ny << "}\n";
    out << "delta: " << num(c.delta) << "\n";
    out << "seed: " << c.seed << "\n";
    out << "kinds: " << flow(c.kinds, [](IndicatorKind k) { return std::string(to_string(k)); })
        << "\n";
    out << "polarization: [" << num(c.polarization.x()) << ", " << num(c.polarization.y()) << "]\n";
    if (c.mask) {
        const MaskSpec& m = *c.mask;
        out << "mask:\n";
        out << "  observed: " << flow(m.observed, arc_text) << "\n";
        out << "  incident: " << flow(m.incident, arc_text) << "\n";
        out << "  observed_angles: " << flow(m.observed_angles, num) << "\n";
        out << "  incident_angles: " << flow(m.incident_angles, num) << "\n";
        out << "  observed_indices: " << flow(m.observed_indices, idx) << "\n";
        out << "  incident_indices: " << flow(m.incident_indices, idx) << "\n";
        if (m.incident_count) out << "  incident_count: " << *m.incident_count << "\n";
    }
    out << "fill: " << (c.fill ? "true" : "false") << "\n";
    if (c.retrieval) {
        out << "retrieval: {radius: " << num(c.retrieval->radius)
            << ", n_boundary: " << c.retrieval->n_boundary;
        if (c.retrieval->alpha) out << ", alpha: " << num(*c.retrieval->alpha);
        out << "}\n";
    }
    out << "out: " << quoted(c.out) << "\n";
    return out.str();
}

}  // namespace edsm::harness
