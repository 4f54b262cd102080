#include "edsm/harness/run.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <omp.h>

#include "edsm/errors.hpp"
#include "edsm/forward.hpp"
#include "edsm/harness/render.hpp"
#include "json.hpp"

namespace edsm::harness {
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::optional<std::string> env(const char* name) {
    const char* v = std::getenv(name);
    if (!v) return std::nullopt;
    return std::string(v);
}

std::string number_key(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

std::string synthesis_key(const ExperimentConfig& c) {
    return c.make_scene().description() + "|" + std::string(to_string(c.bc)) + "|" +
           number_key(c.lambda) + "|" + number_key(c.mu) + "|" + number_key(c.omega) + "|" +
           std::to_string(c.m) + "|" + std::to_string(c.n);
}

// Tracks files and directories created by one run so a failure can undo them.
class OutputTracker {
  public:
    explicit OutputTracker(fs::path root) : root_(std::move(root)) {}

    const fs::path& root() const { return root_; }

    FileRecord write(const std::string& relative, const std::string& bytes) {
        const fs::path path = root_ / relative;
        for (fs::path dir = path.parent_path(); !dir.empty() && !fs::exists(dir); dir = dir.parent_path()) {
            dirs_.push_back(dir);
        }
        files_.push_back(path);
        write_file(path, bytes);
        return {relative, sha256_hex(bytes), bytes.size()};
    }

    void rollback() noexcept {
        std::error_code ec;
        for (const auto& f : files_) fs::remove(f, ec);
        // Children before parents; removal only succeeds for empty directories.
        std::sort(dirs_.begin(), dirs_.end(),
                  [](const fs::path& a, const fs::path& b) { return a.string().size() > b.string().size(); });
        for (const auto& d : dirs_) fs::remove(d, ec);
    }

  private:
    fs::path root_;
    std::vector<fs::path> files_;
    std::vector<fs::path> dirs_;
};

// An existing output directory is reused only if it holds a previous run's
// manifest; the files it lists are removed so the new manifest stays complete.
void prepare_output(const fs::path& root) {
    std::error_code ec;
    if (!fs::exists(root, ec)) return;
    if (!fs::is_directory(root, ec)) throw IoError("output path '" + root.string() + "' is not a directory");
    if (fs::is_empty(root, ec)) return;
    const fs::path manifest = root / "manifest.json";
    if (!fs::exists(manifest)) {
        throw IoError("output directory '" + root.string() +
                      "' is not empty and holds no manifest.json from a previous run");
    }
    std::ifstream in(manifest);
    nlohmann::json previous;
    try {
        in >> previous;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("cannot read previous manifest '" + manifest.string() + "': " + e.what());
    }
    std::set<fs::path> dirs;
    for (const auto& f : previous.value("files", nlohmann::json::array())) {
        const fs::path p = root / f.at("path").get<std::string>();
        fs::remove(p, ec);
        for (fs::path d = p.parent_path(); d != root && !d.empty(); d = d.parent_path()) dirs.insert(d);
    }
    fs::remove(manifest, ec);
    std::vector<fs::path> ordered(dirs.begin(), dirs.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const fs::path& a, const fs::path& b) { return a.string().size() > b.string().size(); });
    for (const auto& d : ordered) fs::remove(d, ec);
    if (!fs::is_empty(root, ec)) {
        throw IoError("output directory '" + root.string() + "' holds files not listed in its manifest");
    }
}

int resolve_threads(const RunOptions& options) {
    if (options.threads > 0) return options.threads;
    if (auto t = env(kThreadsEnv)) {
        try {
            const int n = std::stoi(*t);
            if (n > 0) return n;
        } catch (const std::exception&) {
        }
        throw ConfigError(ConfigError::Kind::Invariant, 0,
                          std::string(kThreadsEnv) + " must be a positive integer, got '" + *t + "'");
    }
    return omp_get_max_threads();
}

std::string msr_bytes(const MSRMatrix& msr) {
    std::ostringstream s;
    write_msr(msr, s);
    return s.str();
}

}  // namespace

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["format"] = "edsm-manifest/1";
    j["experiment"] = experiment;
    j["output"] = out.generic_string();
    j["threads"] = threads;
    nlohmann::ordered_json e = nlohmann::ordered_json::object();
    for (const auto& [k, v] : environment) e[k] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json();
    j["environment"] = e;
    j["variants"] = nlohmann::ordered_json::array();
    for (const auto& v : variants) {
        nlohmann::ordered_json jv;
        jv["name"] = v.name;
        jv["seed"] = v.seed;
        jv["data"] = v.data_file;
        jv["config"] = v.config;
        nlohmann::ordered_json t = nlohmann::ordered_json::object();
        for (const auto& [k, s] : v.timings) t[k] = s;
        jv["timings"] = t;
        j["variants"].push_back(jv);
    }
    j["files"] = nlohmann::ordered_json::array();
    for (const auto& f : files) {
        j["files"].push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    }
    j["total_seconds"] = total_seconds;
    return j.dump(2) + "\n";
}

MSRMatrix synthesize(const ExperimentConfig& config) {
    return synthesize_msr(config.make_scene(), config.make_medium(), config.m, config.n);
}

PreparedData prepare_data(const ExperimentConfig& config, const MSRMatrix& clean) {
    PreparedData out{add_noise(clean, config.delta, config.seed), std::nullopt, std::nullopt};
    if (auto mask = config.make_mask()) {
        out.masked = apply_mask(out.data, *mask);
        if (config.fill) out.masked = reciprocity_fill(*out.masked);
        if (config.retrieval) out.retrieved = tikhonov_retrieve(*out.masked, *config.retrieval);
    }
    return out;
}

std::vector<IndicatorField> compute_fields(const ExperimentConfig& config, const PreparedData& data) {
    std::vector<IndicatorField> fields;
    for (IndicatorKind kind : config.kinds) {
        if (data.retrieved)
            fields.push_back(indicator(*data.retrieved, config.grid, config.polarization, kind));
        else if (data.masked)
            fields.push_back(limited_indicator(*data.masked, config.grid, config.polarization, kind));
        else
            fields.push_back(indicator(data.data, config.grid, config.polarization, kind));
    }
    return fields;
}

RunManifest run_experiment(const std::string& name, const std::vector<ExperimentConfig>& variants,
                           const RunOptions& options) {
    if (variants.empty()) throw InvalidArgument("experiment has no variants");
    std::set<std::string> names;
    for (const auto& v : variants) {
        if (!names.insert(v.name).second) throw InvalidArgument("duplicate variant name '" + v.name + "'");
    }

    const auto t_start = Clock::now();
    RunManifest manifest;
    manifest.experiment = name;
    manifest.environment[kOutEnv] = env(kOutEnv);
    manifest.environment[kThreadsEnv] = env(kThreadsEnv);
    manifest.out = !options.out.empty()        ? options.out
                   : manifest.environment[kOutEnv] ? fs::path(*manifest.environment[kOutEnv])
                                                   : fs::path(variants.front().out);
    manifest.threads = resolve_threads(options);
    omp_set_num_threads(manifest.threads);

    prepare_output(manifest.out);
    OutputTracker tracker(manifest.out);
    try {
        std::map<std::string, MSRMatrix> clean_cache;
        std::map<std::string, std::string> data_files;  // synthesis key + noise -> file
        for (ExperimentConfig config : variants) {
            if (options.seed) config.seed = *options.seed;
            VariantRecord record;
            record.name = config.name;
            record.seed = config.seed;
            record.config = emit_config(config);
            if (options.log) *options.log << "[" << name << "] " << config.name << ": synthesizing\n";

            auto t0 = Clock::now();
            const std::string key = synthesis_key(config);
            auto it = clean_cache.find(key);
            if (it == clean_cache.end()) it = clean_cache.emplace(key, synthesize(config)).first;
            record.timings.emplace_back("synthesize", seconds_since(t0));

            t0 = Clock::now();
            const PreparedData data = prepare_data(config, it->second);
            record.timings.emplace_back("prepare", seconds_since(t0));

            const std::string data_key = key + "|" + number_key(config.delta) + "|" + std::to_string(config.seed);
            auto df = data_files.find(data_key);
            if (df == data_files.end()) {
                const std::string file = "data/data-" + std::to_string(data_files.size()) + ".msr";
                manifest.files.push_back(tracker.write(file, msr_bytes(data.data)));
                df = data_files.emplace(data_key, file).first;
            }
            record.data_file = df->second;

            if (options.log) *options.log << "[" << name << "] " << config.name << ": indicators\n";
            t0 = Clock::now();
            const auto fields = compute_fields(config, data);
            record.timings.emplace_back("indicators", seconds_since(t0));

            t0 = Clock::now();
            const std::string dir = config.name + "/";
            manifest.files.push_back(tracker.write(dir + "config.yaml", record.config));
            if (data.retrieved) {
                manifest.files.push_back(tracker.write(dir + "retrieved.msr", msr_bytes(*data.retrieved)));
            }
            for (const auto& field : fields) {
                const std::string kind(to_string(field.kind));
                manifest.files.push_back(tracker.write(dir + kind + ".csv", field_csv(field)));
                manifest.files.push_back(tracker.write(dir + kind + ".pgm", render_heatmap(field)));
            }
            record.timings.emplace_back("write", seconds_since(t0));
            manifest.variants.push_back(std::move(record));
        }
        std::sort(manifest.files.begin(), manifest.files.end(),
                  [](const FileRecord& a, const FileRecord& b) { return a.path < b.path; });
        manifest.total_seconds = seconds_since(t_start);
        tracker.write("manifest.json", manifest.to_json());
    } catch (...) {
        tracker.rollback();
        throw;
    }
    return manifest;
}

RunManifest run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    return run_experiment(config.name, {config}, options);
}

}  // namespace edsm::harness
