#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moaoff/config.hpp"
#include "moaoff/error.hpp"
#include "moaoff/pnm.hpp"
#include "moaoff/report.hpp"
#include "moaoff/workload.hpp"

namespace fs = std::filesystem;
using namespace moaoff;

namespace {

Config base_config(const std::string& config_path) {
    return config_path.empty() ? default_config() : load_config(config_path);
}

std::string lower_ext(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open text file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path);
    }
    out << content;
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

struct WorkloadOpts {
    std::string workload_path;
    bool synthetic = false;
    std::uint64_t requests = 0;
    bool requests_given = false;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

void add_workload_opts(CLI::App* cmd, WorkloadOpts& o) {
    cmd->add_option("--workload", o.workload_path,
                    "line-delimited JSON workload file (default: synthetic workload)");
    cmd->add_flag("--synthetic", o.synthetic, "generate the workload from the config");
    cmd->add_option("--requests", o.requests, "synthetic request count (overrides config)");
    cmd->add_option("--seed", o.seed, "seed for synthesis and simulation (overrides config)");
}

std::vector<Request> build_workload(const WorkloadOpts& o, Config& cfg) {
    if (o.synthetic && !o.workload_path.empty()) {
        throw DomainError("--workload and --synthetic are mutually exclusive");
    }
    if (o.requests_given) {
        cfg.simulation.synthetic.request_count = o.requests;
    }
    if (o.seed_given) {
        cfg.simulation.seed = o.seed;
        cfg.simulation.synthetic.seed = o.seed;
    }
    if (!o.workload_path.empty()) {
        return load_workload(o.workload_path, cfg.perception);
    }
    return synthesize_workload(cfg.simulation.synthetic);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"modality-aware complexity scoring and adaptive edge-cloud offload simulation"};
    app.require_subcommand(1);

    // score-image
    std::string si_path, si_config, si_calibration;
    auto* score_image_cmd =
        app.add_subcommand("score-image", "Score one image and print the component breakdown");
    score_image_cmd->add_option("path", si_path, "PGM (P5/P2) or PPM (P6/P3) image")->required();
    score_image_cmd->add_option("-c,--config", si_config, "JSON config file");
    score_image_cmd->add_option("--calibration", si_calibration,
                                "calibration key=value file (overrides the config)");
    score_image_cmd->callback([&] {
        Config cfg = base_config(si_config);
        if (!si_calibration.empty()) {
            cfg.perception.calibration = load_calibration(si_calibration);
            validate(cfg.perception);
        }
        const ImageComplexity c = score_image(load_image_auto(si_path), cfg.perception);
        std::printf("c_res %.6f\nc_edge %.6f\nc_ent %.6f\nc_lap %.6f\ntotal %.6f\n", c.c_res,
                    c.c_edge, c.c_ent, c.c_lap, c.total);
    });

    // score-text
    std::string st_text, st_file, st_config;
    auto* score_text_cmd =
        app.add_subcommand("score-text", "Score text and print the component breakdown");
    score_text_cmd->add_option("--text", st_text, "literal text to score");
    score_text_cmd->add_option("--file", st_file, "UTF-8 text file to score");
    score_text_cmd->add_option("-c,--config", st_config, "JSON config file");
    score_text_cmd->callback([&] {
        if (score_text_cmd->count("--text") > 0 && score_text_cmd->count("--file") > 0) {
            throw DomainError("give --text or --file, not both");
        }
        Config cfg = base_config(st_config);
        const std::string payload =
            score_text_cmd->count("--file") > 0 ? read_text_file(st_file) : st_text;
        const TextComplexity c = score_text(payload, cfg.perception);
        std::printf("c_l %.6f\nc_ner %.6f\ntotal %.6f\n", c.c_l, c.c_ner, c.total);
    });

    // calibrate
    std::string ca_dir, ca_out, ca_config;
    auto* calibrate_cmd = app.add_subcommand(
        "calibrate", "Fit gradient/Laplacian normalization constants over an image directory");
    calibrate_cmd->add_option("dir", ca_dir, "directory of .pgm/.ppm images (not recursive)")
        ->required();
    calibrate_cmd->add_option("-o,--out", ca_out, "output calibration file")->required();
    calibrate_cmd->add_option("-c,--config", ca_config, "JSON config file");
    calibrate_cmd->callback([&] {
        Config cfg = base_config(ca_config);
        if (!fs::is_directory(ca_dir)) {
            throw IoError("not a directory: " + ca_dir);
        }
        std::vector<fs::path> paths;
        for (const auto& entry : fs::directory_iterator(ca_dir)) {
            if (!entry.is_regular_file()) {
                continue;
            }
            const std::string ext = lower_ext(entry.path());
            if (ext == ".pgm" || ext == ".ppm") {
                paths.push_back(entry.path());
            }
        }
        std::sort(paths.begin(), paths.end(),
                  [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });
        std::vector<std::string> skipped;
        const Calibration cal =
            collect_calibration(paths, cfg.perception.calibration.epsilon, &skipped);
        for (const std::string& msg : skipped) {
            std::cerr << "warning: skipped " << msg << "\n";
        }
        save_calibration(ca_out, cal);
        std::cout << calibration_to_text(cal);
    });

    // simulate
    WorkloadOpts sim_wl;
    std::string sm_config, sm_calibration, sm_out;
    std::vector<double> sm_bandwidths;
    std::vector<std::string> sm_strategies;
    double sm_uniform_threshold = 0.5;
    auto* simulate_cmd = app.add_subcommand(
        "simulate", "Run every configured strategy at every bandwidth and write a CSV report");
    add_workload_opts(simulate_cmd, sim_wl);
    simulate_cmd->add_option("-c,--config", sm_config, "JSON config file");
    simulate_cmd->add_option("--calibration", sm_calibration,
                             "calibration key=value file (overrides the config)");
    simulate_cmd->add_option("-o,--out", sm_out, "output CSV path")->required();
    simulate_cmd->add_option("--bandwidths", sm_bandwidths,
                             "bandwidths in Mbps (overrides config)");
    simulate_cmd->add_option(
        "--strategies", sm_strategies,
        "subset of: moa-off edge-only cloud-only uniform-offload (overrides config)");
    simulate_cmd->add_option("--uniform-threshold", sm_uniform_threshold,
                             "request-mean threshold of the uniform-offload baseline");
    simulate_cmd->callback([&] {
        Config cfg = base_config(sm_config);
        if (!sm_calibration.empty()) {
            cfg.perception.calibration = load_calibration(sm_calibration);
            validate(cfg.perception);
        }
        if (!sm_bandwidths.empty()) {
            cfg.simulation.bandwidths_mbps = sm_bandwidths;
        }
        if (!sm_strategies.empty()) {
            cfg.simulation.strategies.clear();
            for (const std::string& name : sm_strategies) {
                cfg.simulation.strategies.push_back(strategy_from_name(name));
            }
        }
        if (simulate_cmd->count("--uniform-threshold") > 0) {
            cfg.simulation.uniform_threshold = sm_uniform_threshold;
        }
        sim_wl.requests_given = simulate_cmd->count("--requests") > 0;
        sim_wl.seed_given = simulate_cmd->count("--seed") > 0;
        validate(cfg);
        const std::vector<Request> workload = build_workload(sim_wl, cfg);
        if (workload.empty()) {
            throw DomainError("simulation needs a non-empty workload");
        }
        std::vector<Strategy> strategies;
        for (StrategyKind kind : cfg.simulation.strategies) {
            strategies.push_back(Strategy{kind, cfg.simulation.uniform_threshold});
        }
        const std::vector<SimReport> reports =
            run_comparison(workload, cfg.policy, cfg.cost_model, cfg.simulation.bandwidths_mbps,
                           cfg.simulation.seed, strategies);
        write_text_file(sm_out, reports_to_csv(reports));
        std::cout << summary_table(reports);
    });

    // ablate
    WorkloadOpts ab_wl;
    std::string ab_config, ab_out;
    double ab_bandwidth = 300.0;
    auto* ablate_cmd = app.add_subcommand(
        "ablate", "Compare full routing against modality-blind and scheduling-off variants");
    add_workload_opts(ablate_cmd, ab_wl);
    ablate_cmd->add_option("-c,--config", ab_config, "JSON config file");
    ablate_cmd->add_option("--bandwidth", ab_bandwidth, "bandwidth in Mbps");
    ablate_cmd->add_option("-o,--out", ab_out, "also write the report to this file");
    ablate_cmd->callback([&] {
        Config cfg = base_config(ab_config);
        ab_wl.requests_given = ablate_cmd->count("--requests") > 0;
        ab_wl.seed_given = ablate_cmd->count("--seed") > 0;
        const std::vector<Request> workload = build_workload(ab_wl, cfg);
        if (workload.empty()) {
            throw DomainError("ablation needs a non-empty workload");
        }
        const AblationReport rep =
            ablation(workload, cfg.policy, cfg.cost_model, ab_bandwidth, cfg.simulation.seed);
        const std::string text = ablation_text(rep, ab_bandwidth, cfg.simulation.seed);
        if (!ab_out.empty()) {
            write_text_file(ab_out, text);
        }
        std::cout << text;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
