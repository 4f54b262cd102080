#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edsm/aperture.hpp"
#include "edsm/elastic.hpp"
#include "edsm/geometry.hpp"
#include "edsm/indicators.hpp"

namespace edsm::harness {

struct ComponentSpec {
    CurveKind shape = CurveKind::Kite;
    Vec2 center = Vec2::Zero();
    double scale = 1.0;

    bool operator==(const ComponentSpec&) const = default;
};

// Observed and incident direction sets. Arcs, exact angles and zero-based
// indices (θ_i = iπ/m) are unioned; a side with none of them means "all
// directions". incident_count instead picks that many evenly spaced incident
// directions starting at θ = 0.
struct MaskSpec {
    std::vector<Arc> observed;
    std::vector<Arc> incident;
    std::vector<double> observed_angles;
    std::vector<double> incident_angles;
    std::vector<int> observed_indices;
    std::vector<int> incident_indices;
    std::optional<int> incident_count;

    bool operator==(const MaskSpec&) const = default;
};

struct ExperimentConfig {
    std::string name = "experiment";
    std::vector<ComponentSpec> scene;
    BoundaryCondition bc = BoundaryCondition::Dirichlet;
    double lambda = 1.0;
    double mu = 1.0;
    double omega = 8.0 * kPi;
    int m = 256;
    int n = 512;
    SamplingGrid grid;
    double delta = 0.0;
    std::uint64_t seed = 1;
    std::vector<IndicatorKind> kinds{IndicatorKind::SS, IndicatorKind::PP, IndicatorKind::FF};
    Vec2 polarization = Vec2(1.0, 0.0);
    std::optional<MaskSpec> mask;
    bool fill = false;
    std::optional<RetrievalParams> retrieval;
    std::string out = "out";

    bool operator==(const ExperimentConfig&) const = default;

    Scene make_scene() const;
    Medium make_medium() const;
    std::optional<ApertureMask> make_mask() const;
};

// Strict YAML parsing: unknown keys are rejected, defaults applied, and every
// invariant of the owning modules checked. Errors carry 1-based line numbers.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

// Canonical YAML with every field written out; parse_config inverts it.
std::string emit_config(const ExperimentConfig& config);

// Numbers with an optional π factor: "0.5", "8pi", "pi/2", "3*pi/2", "-pi".
double parse_pi_expression(std::string_view text);

// "[a, b)" with a, b pi expressions.
Arc parse_arc(std::string_view text);

}  // namespace edsm::harness
