#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edsm/aperture.hpp"
#include "edsm/harness/config.hpp"
#include "edsm/msr.hpp"

namespace edsm::harness {

// Environment variables consulted when the caller gives no explicit value.
inline constexpr const char* kOutEnv = "EDSM_OUT";
inline constexpr const char* kThreadsEnv = "EDSM_THREADS";

struct RunOptions {
    std::filesystem::path out;          // empty: $EDSM_OUT, then the first variant's `out`
    int threads = 0;                    // 0: $EDSM_THREADS, then the OpenMP default
    std::optional<std::uint64_t> seed;  // replaces every variant's seed
    std::ostream* log = nullptr;        // progress lines, or nothing
};

struct FileRecord {
    std::string path;  // relative to the output directory, '/' separated
    std::string sha256;
    std::uintmax_t bytes = 0;
};

struct VariantRecord {
    std::string name;
    std::string config;  // canonical YAML echo
    std::uint64_t seed = 0;
    std::string data_file;
    std::vector<std::pair<std::string, double>> timings;  // seconds
};

struct RunManifest {
    std::string experiment;
    std::filesystem::path out;
    int threads = 0;
    std::map<std::string, std::optional<std::string>> environment;
    std::vector<VariantRecord> variants;
    std::vector<FileRecord> files;  // sorted by path; excludes manifest.json itself
    double total_seconds = 0.0;

    std::string to_json() const;
};

// Data after the noise, mask, fill and retrieval stages of one variant.
struct PreparedData {
    MSRMatrix data;
    std::optional<MaskedMSR> masked;
    std::optional<MSRMatrix> retrieved;
};

MSRMatrix synthesize(const ExperimentConfig& config);
PreparedData prepare_data(const ExperimentConfig& config, const MSRMatrix& clean);
std::vector<IndicatorField> compute_fields(const ExperimentConfig& config, const PreparedData& data);

// Runs every variant, writing <out>/<variant>/{config.yaml, <kind>.csv, <kind>.pgm},
// <out>/data/*.msr and <out>/manifest.json. Synthesis is shared between variants
// with the same scene, medium and resolution. On failure every file written by
// this call is removed before the exception propagates.
RunManifest run_experiment(const std::string& name, const std::vector<ExperimentConfig>& variants,
                           const RunOptions& options);
RunManifest run_experiment(const ExperimentConfig& config, const RunOptions& options);

}  // namespace edsm::harness
