#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "edsm/aperture.hpp"
#include "edsm/errors.hpp"
#include "edsm/harness/config.hpp"
#include "edsm/harness/presets.hpp"
#include "edsm/harness/render.hpp"
#include "edsm/harness/run.hpp"
#include "edsm/indicators.hpp"
#include "edsm/msr.hpp"

namespace fs = std::filesystem;
using namespace edsm;
using namespace edsm::harness;

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumeric = 3, kIo = 4 };

struct Globals {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    bool quiet = false;
};

void say(const Globals& g, const std::string& line) {
    if (!g.quiet) std::cerr << line << "\n";
}

fs::path output_dir(const Globals& g, const std::string& fallback) {
    if (!g.out.empty()) return g.out;
    if (const char* e = std::getenv(kOutEnv)) return e;
    return fallback;
}

void apply_threads(const Globals& g) {
    int n = g.threads;
    if (n <= 0) {
        if (const char* e = std::getenv(kThreadsEnv)) n = std::atoi(e);
    }
    if (n > 0) omp_set_num_threads(n);
}

// Variants selected by --preset/--variant or --config.
std::vector<ExperimentConfig> selected_configs(const Globals& g, const std::string& preset_name,
                                               const std::string& variant, bool small) {
    std::vector<ExperimentConfig> configs;
    if (!preset_name.empty()) {
        configs = preset(preset_name, small).variants;
    } else if (!g.config.empty()) {
        configs = {load_config(g.config)};
        if (small) make_small(configs.front());
    } else {
        throw ConfigError(ConfigError::Kind::Invariant, 0, "give --preset NAME or --config FILE");
    }
    if (!variant.empty()) {
        std::erase_if(configs, [&](const ExperimentConfig& c) { return c.name != variant; });
        if (configs.empty()) {
            throw ConfigError(ConfigError::Kind::UnknownKey, 0, "no variant named '" + variant + "'");
        }
    }
    if (g.seed)
        for (auto& c : configs) c.seed = *g.seed;
    return configs;
}

std::vector<Arc> parse_arcs(const std::vector<std::string>& texts) {
    std::vector<Arc> arcs;
    for (const auto& t : texts) arcs.push_back(parse_arc(t));
    return arcs;
}

Vec2 parse_polarization(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw InvalidArgument("polarization must be 'x,y'");
    return Vec2(parse_pi_expression(text.substr(0, comma)), parse_pi_expression(text.substr(comma + 1)));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Direct sampling for inverse elastic scattering: synthesis, indicators, experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", "edsm 0.1.0");

    Globals g;
    app.add_option("--config", g.config, "Experiment config file (YAML)");
    app.add_option("--out", g.out, "Output file or directory (default $EDSM_OUT)");
    app.add_option("--seed", g.seed, "Noise seed, overriding the config");
    app.add_option("--threads", g.threads, "Worker threads (default $EDSM_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--quiet", g.quiet, "Suppress progress messages");

    std::string preset_name, variant, msr_path;
    bool small = false;

    auto* synth = app.add_subcommand("synth", "Synthesize a clean MSR/1 file for each selected variant");
    synth->add_option("--preset", preset_name, "Preset name");
    synth->add_option("--variant", variant, "Only this variant of the preset");
    synth->add_flag("--small", small, "Desk-scale resolution (m=64, n=256, 161x161 grid)");

    double delta = 0.0;
    auto* noise = app.add_subcommand("noise", "Add relative Frobenius-norm noise to an MSR/1 file");
    noise->add_option("--msr", msr_path, "Input MSR/1 file")->required();
    noise->add_option("--delta", delta, "Relative noise level")->required()->check(CLI::NonNegativeNumber);

    std::vector<std::string> kinds{"ss", "pp", "ff"};
    std::string polarization = "1,0";
    int grid_n = 321;
    double half_width = 6.0;
    auto* indicate = app.add_subcommand("indicate", "Evaluate indicators of an MSR/1 file on a grid");
    indicate->add_option("--msr", msr_path, "Input MSR/1 file")->required();
    indicate->add_option("--kind", kinds, "Indicator kinds: ss, pp, ff")->capture_default_str();
    indicate->add_option("--grid", grid_n, "Grid points per axis")->capture_default_str();
    indicate->add_option("--half-width", half_width, "Grid covers [-w, w]^2")->capture_default_str();
    indicate->add_option("--polarization", polarization, "Unit vector q as 'x,y'")->capture_default_str();

    std::vector<std::string> observed, incident;
    bool fill = false;
    RetrievalParams retrieval;
    double alpha = 0.0;
    auto* retrieve = app.add_subcommand("retrieve", "Complete limited-aperture data by reciprocity and Tikhonov retrieval");
    retrieve->add_option("--msr", msr_path, "Input MSR/1 file")->required();
    retrieve->add_option("--observed", observed, "Observed arcs such as '[0, pi/2)'")->required();
    retrieve->add_option("--incident", incident, "Incident arcs (default: all)");
    retrieve->add_flag("--fill", fill, "Apply reciprocity fill before retrieval");
    retrieve->add_option("--radius", retrieval.radius, "Radius of the retrieval circle")->capture_default_str();
    retrieve->add_option("--n-boundary", retrieval.n_boundary, "Nodes on the retrieval circle")->capture_default_str();
    retrieve->add_option("--alpha", alpha, "Tikhonov parameter (default scales with the data)");

    std::vector<std::string> experiment_names;
    auto* experiment = app.add_subcommand("experiment", "Run presets by name, or the --config experiment");
    experiment->add_option("names", experiment_names, "Preset names");
    experiment->add_flag("--small", small, "Desk-scale resolution (m=64, n=256, 161x161 grid)");

    std::string show;
    auto* presets = app.add_subcommand("presets", "List presets, or print the configs of one");
    presets->add_option("name", show, "Preset to print");
    presets->add_flag("--small", small, "Print the desk-scale configs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        apply_threads(g);
        if (*synth) {
            const auto configs = selected_configs(g, preset_name, variant, small);
            const fs::path dir = output_dir(g, ".");
            for (const auto& c : configs) {
                say(g, "synthesizing " + c.name);
                const fs::path path = dir / (c.name + ".msr");
                save_msr(synthesize(c), path);
                say(g, "wrote " + path.string());
            }
        } else if (*noise) {
            const MSRMatrix in = load_msr(msr_path);
            const std::uint64_t seed = g.seed.value_or(1);
            const fs::path path = g.out.empty() ? fs::path(msr_path).replace_extension(".noisy.msr") : fs::path(g.out);
            save_msr(add_noise(in, delta, seed), path);
            say(g, "wrote " + path.string());
        } else if (*indicate) {
            const MSRMatrix msr = load_msr(msr_path);
            const SamplingGrid grid(-half_width, half_width, -half_width, half_width, grid_n, grid_n);
            const Vec2 q = parse_polarization(polarization);
            const fs::path dir = output_dir(g, ".");
            for (const auto& k : kinds) {
                const IndicatorField field = indicator(msr, grid, q, indicator_kind_from_string(k));
                const std::string stem(to_string(field.kind));
                write_file(dir / (stem + ".csv"), field_csv(field));
                write_file(dir / (stem + ".pgm"), render_heatmap(field));
                say(g, "wrote " + (dir / (stem + ".csv")).string() + " and .pgm");
            }
        } else if (*retrieve) {
            const MSRMatrix msr = load_msr(msr_path);
            ApertureMask mask = ApertureMask::full(msr.m());
            mask.observed = indices_in_arcs(msr.m(), parse_arcs(observed));
            if (!incident.empty()) mask.incident = indices_in_arcs(msr.m(), parse_arcs(incident));
            MaskedMSR masked = apply_mask(msr, mask);
            if (fill) masked = reciprocity_fill(masked);
            if (retrieve->count("--alpha")) retrieval.alpha = alpha;
            const fs::path path = g.out.empty() ? fs::path(msr_path).replace_extension(".retrieved.msr") : fs::path(g.out);
            save_msr(tikhonov_retrieve(masked, retrieval), path);
            say(g, "wrote " + path.string());
        } else if (*experiment) {
            if (experiment_names.empty() && g.config.empty()) {
                throw ConfigError(ConfigError::Kind::Invariant, 0, "give preset names or --config FILE");
            }
            RunOptions options;
            options.threads = g.threads;
            options.seed = g.seed;
            if (!g.quiet) options.log = &std::cerr;
            if (!g.config.empty()) {
                ExperimentConfig c = load_config(g.config);
                if (small) make_small(c);
                options.out = output_dir(g, c.out);
                const RunManifest m = run_experiment(c, options);
                say(g, "wrote " + std::to_string(m.files.size()) + " files to " + m.out.string());
            }
            // Several presets share --out as a parent directory.
            for (const auto& name : experiment_names) {
                const Preset p = preset(name, small);
                const fs::path base = output_dir(g, "out");
                options.out = experiment_names.size() > 1 || !g.config.empty() ? base / p.name : base;
                const RunManifest m = run_experiment(p.name, p.variants, options);
                say(g, "wrote " + std::to_string(m.files.size()) + " files to " + m.out.string());
            }
        } else if (*presets) {
            if (show.empty()) {
                for (const auto& name : preset_names()) {
                    const Preset p = preset(name);
                    std::cout << name << "  (" << p.variants.size() << " variant"
                              << (p.variants.size() > 1 ? "s" : "") << ")  " << p.summary << "\n";
                }
            } else {
                const Preset p = preset(show, small);
                for (const auto& c : p.variants) std::cout << "---\n" << emit_config(c);
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error" << (e.line() ? " (line " + std::to_string(e.line()) + ")" : "")
                  << ": " << e.what() << "\n";
        return kConfig;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kConfig;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kNumeric;
    } catch (const FormatError& e) {
        std::cerr << "bad MSR file" << (e.line() ? " (line " + std::to_string(e.line()) + ")" : "")
                  << ": " << e.what() << "\n";
        return kIo;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumeric;
    }
    return kOk;
}
