#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "edsm/harness/config.hpp"

namespace edsm::harness {

// A named experiment: one or more variants sharing an output directory.
struct Preset {
    std::string name;
    std::string summary;
    std::vector<ExperimentConfig> variants;
};

std::vector<std::string> preset_names();

// Desk-scale resolution used by `small`: m = 64, n = 256, 161 × 161 grid.
void make_small(ExperimentConfig& config);

// Throws ConfigError(UnknownKey) listing the available names.
Preset preset(std::string_view name, bool small = false);

}  // namespace edsm::harness
