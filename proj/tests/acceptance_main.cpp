// End-to-end acceptance gate. Each numbered check prints one PASS/FAIL line;
// the process exits nonzero if any check fails. Tolerances are pinned
// constants, written next to the checks they guard.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "moaoff/config.hpp"
#include "moaoff/error.hpp"
#include "moaoff/perception.hpp"
#include "moaoff/pnm.hpp"
#include "moaoff/sim.hpp"
#include "moaoff/text.hpp"
#include "moaoff/workload.hpp"
#include "oracle.hpp"

using namespace moaoff;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int number, const std::string& description, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", number,
                description.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) {
        ++g_failures;
    }
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "moaoff_acceptance";
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(MOAOFF_BIN_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct CsvRow {
    std::string strategy;
    double bandwidth = 0.0;
    double mean_s = 0.0;
    double p95_s = 0.0;
    double acc = 0.0;
    double cloud_busy_s = 0.0;
};

std::vector<CsvRow> parse_csv(const std::string& csv) {
    std::vector<CsvRow> rows;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() < 14) {
            throw ParseError("unexpected CSV row: " + line);
        }
        CsvRow row;
        row.strategy = cells[0];
        row.bandwidth = std::stod(cells[1]);
        row.mean_s = std::stod(cells[2]);
        row.p95_s = std::stod(cells[4]);
        row.acc = std::stod(cells[6]);
        row.cloud_busy_s = std::stod(cells[9]);
        rows.push_back(row);
    }
    return rows;
}

const CsvRow& find_row(const std::vector<CsvRow>& rows, const std::string& strategy,
                       double bandwidth) {
    for (const CsvRow& row : rows) {
        if (row.strategy == strategy && row.bandwidth == bandwidth) {
            return row;
        }
    }
    throw DomainError("missing CSV row for " + strategy);
}

bool close_to(double got, double want, double tol) {
    return std::abs(got - want) <= tol;
}

// --- criterion 1 -----------------------------------------------------------

void criterion_kernel_oracle() {
    const auto start = Clock::now();
    int worst_seed = -1;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const GrayImage img = oracle::random_image(seed, 16);
        const double sobel_err =
            oracle::rel_err(mean_sobel_gradient(img), oracle::naive_mean_sobel(img));
        const double lap_err =
            oracle::rel_err(laplacian_variance(img), oracle::naive_laplacian_variance(img));
        const double err = std::max(sobel_err, lap_err);
        if (err > worst) {
            worst = err;
            worst_seed = static_cast<int>(seed);
        }
    }
    const double elapsed = seconds_since(start);
    const bool pass = worst <= 1e-9 && elapsed < 5.0;
    const std::string detail =
        worst == 0.0 ? fmt("exact match on all 200 images, %.2f s", elapsed)
                     : fmt("max rel err %.3g (seed %d) over 200 images, %.2f s", worst,
                           worst_seed, elapsed);
    report(1, "gradient and laplacian kernels match a naive convolution oracle", pass, detail);
}

// --- criterion 2 -----------------------------------------------------------

void criterion_analytic_components() {
    std::vector<std::string> problems;
    auto expect = [&](bool ok, const char* what) {
        if (!ok) {
            problems.emplace_back(what);
        }
    };

    // Histogram entropy: constant, two equal levels, all 256 levels.
    expect(gray_entropy(constant_image(7, 5, 33)) == 0.0, "entropy of constant image");
    std::vector<std::uint8_t> two(64, 0);
    std::fill(two.begin() + 32, two.end(), 255);
    expect(close_to(gray_entropy(make_gray_image(8, 8, std::move(two))), 0.125, 1e-12),
           "entropy of two equal levels");
    std::vector<std::uint8_t> levels(256);
    for (int i = 0; i < 256; ++i) {
        levels[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    }
    expect(close_to(gray_entropy(make_gray_image(16, 16, std::move(levels))), 1.0, 1e-12),
           "entropy of uniform histogram");

    // Laplacian of a linear ramp is identically zero.
    std::vector<std::uint8_t> ramp(20 * 30);
    for (int r = 0; r < 20; ++r) {
        for (int c = 0; c < 30; ++c) {
            ramp[static_cast<std::size_t>(r) * 30 + c] = static_cast<std::uint8_t>(c);
        }
    }
    expect(laplacian_variance(make_gray_image(20, 30, std::move(ramp))) == 0.0,
           "laplacian variance of linear ramp");

    // Resolution ratios.
    expect(resolution_scale(constant_image(1024, 1024, 0), 1024, 1024) == 1.0,
           "resolution at reference size");
    expect(resolution_scale(constant_image(512, 1024, 0), 1024, 1024) == 0.5,
           "resolution at half the pixels");
    expect(resolution_scale(constant_image(4096, 4096, 0), 1024, 1024) == 1.0,
           "resolution clamps above reference");

    // Text term saturation.
    TextFeatures f;
    f.token_count = 2048;
    f.sentence_count = 4;
    f.entity_count = 24; // six entities per sentence, double the gamma default
    const TextComplexity t = text_complexity(f, TextParams{});
    expect(t.c_l == 1.0, "length term saturation");
    expect(t.c_ner == 1.0, "entity density saturation");
    const TextComplexity empty = text_complexity("", TextParams{});
    expect(empty.c_l == 0.0 && empty.c_ner == 0.0 && empty.total == 0.0, "empty text scores zero");

    std::string detail = "entropy, ramp, resolution, and text saturation cases";
    if (!problems.empty()) {
        detail = "failed: " + problems.front();
        if (problems.size() > 1) {
            detail += fmt(" (+%zu more)", problems.size() - 1);
        }
    }
    report(2, "analytic component values hold exactly", problems.empty(), detail);
}

// --- criterion 3 -----------------------------------------------------------

void criterion_policy_properties() {
    const auto start = Clock::now();
    const int cases = 10000;
    std::vector<std::string> problems;
    SplitMix64 rng(29);

    auto random_cfg = [&] {
        PolicyConfig cfg;
        cfg.tau_text = rng.next_double();
        cfg.tau_image = rng.next_double();
        cfg.ell_max = rng.next_double();
        cfg.beta_bw_mbps = 1.0 + 999.0 * rng.next_double();
        cfg.bandwidth_gate_literal = (rng.next() & 1) != 0;
        return cfg;
    };
    auto random_state = [&] {
        SystemState st;
        st.edge_load = rng.next_double();
        st.bandwidth_mbps = 1.0 + 999.0 * rng.next_double();
        return st;
    };
    auto gate_holds = [](const SystemState& st, const PolicyConfig& cfg) {
        return cfg.bandwidth_gate_literal ? st.bandwidth_mbps <= cfg.beta_bw_mbps
                                          : st.bandwidth_mbps >= cfg.beta_bw_mbps;
    };

    // Threshold dominance: c above tau forces Cloud.
    for (int i = 0; i < cases; ++i) {
        const PolicyConfig cfg = random_cfg();
        const SystemState st = random_state();
        const Modality m = (rng.next() & 1) ? Modality::Image : Modality::Text;
        const double tau = (m == Modality::Image) ? cfg.tau_image : cfg.tau_text;
        const double c = tau + (1.0 - tau) * rng.next_double();
        if (c > tau && decide_modality(c, m, st, cfg) != Decision::Cloud) {
            problems.emplace_back(fmt("threshold dominance case %d", i));
            break;
        }
    }
    // State dominance: load above ell_max, or a failing bandwidth gate,
    // forces Cloud regardless of complexity.
    for (int i = 0; i < cases; ++i) {
        const PolicyConfig cfg = random_cfg();
        SystemState st = random_state();
        st.edge_load = cfg.ell_max + (1.0 - cfg.ell_max) * rng.next_double();
        if (st.edge_load > cfg.ell_max &&
            decide_modality(rng.next_double(), Modality::Image, st, cfg) != Decision::Cloud) {
            problems.emplace_back(fmt("load dominance case %d", i));
            break;
        }
        const SystemState st2 = random_state();
        if (!gate_holds(st2, cfg) &&
            decide_modality(rng.next_double(), Modality::Text, st2, cfg) != Decision::Cloud) {
            problems.emplace_back(fmt("bandwidth dominance case %d", i));
            break;
        }
    }
    // Monotonicity in c.
    for (int i = 0; i < cases; ++i) {
        const PolicyConfig cfg = random_cfg();
        const SystemState st = random_state();
        const Modality m = (rng.next() & 1) ? Modality::Image : Modality::Text;
        double a = rng.next_double();
        double b = rng.next_double();
        if (a > b) {
            std::swap(a, b);
        }
        if (decide_modality(b, m, st, cfg) == Decision::Edge &&
            decide_modality(a, m, st, cfg) != Decision::Edge) {
            problems.emplace_back(fmt("monotonicity case %d", i));
            break;
        }
    }
    // Compositionality of request routing.
    for (int i = 0; i < cases; ++i) {
        const PolicyConfig cfg = random_cfg();
        const SystemState st = random_state();
        std::vector<ScoredModality> scores;
        const int n = 1 + static_cast<int>(rng.next() % 4);
        for (int k = 0; k < n; ++k) {
            scores.push_back(
                {(rng.next() & 1) ? Modality::Image : Modality::Text, rng.next_double()});
        }
        const DecisionVector out = decide_request(scores, st, cfg);
        for (std::size_t k = 0; k < scores.size(); ++k) {
            if (out[k].decision !=
                decide_modality(scores[k].complexity, scores[k].modality, st, cfg)) {
                problems.emplace_back(fmt("compositionality case %d", i));
                break;
            }
        }
        if (!problems.empty() && problems.back().rfind("compositionality", 0) == 0) {
            break;
        }
    }

    const double elapsed = seconds_since(start);
    const bool pass = problems.empty() && elapsed < 5.0;
    report(3, "routing properties hold over 10000 randomized cases each", pass,
           problems.empty() ? fmt("4 properties, %.2f s", elapsed) : problems.front());
}

// --- criterion 4 -----------------------------------------------------------

void criterion_degenerate_equivalence() {
    const auto start = Clock::now();
    SyntheticSpec spec; // library defaults
    spec.request_count = 1000;
    spec.seed = 7;
    const std::vector<Request> workload = synthesize_workload(spec);

    // tau = 0 plus an unsatisfiable literal bandwidth gate: every task fails
    // the edge conditions, so the adaptive policy must equal cloud-only.
    PolicyConfig to_cloud;
    to_cloud.tau_text = 0.0;
    to_cloud.tau_image = 0.0;
    to_cloud.beta_bw_mbps = 0.001;
    to_cloud.bandwidth_gate_literal = true;
    const CostModel model;
    SimReport moa_cloud =
        simulate(workload, Strategy{StrategyKind::MoaOff, 0.5}, to_cloud, model, 300.0, 7);
    const SimReport cloud =
        simulate(workload, Strategy{StrategyKind::CloudOnly, 0.5}, to_cloud, model, 300.0, 7);
    moa_cloud.strategy = cloud.strategy; // identical up to the label
    const bool cloud_equal = moa_cloud == cloud;

    // tau = 1, permissive gates, effectively unbounded queue: every task
    // passes the edge conditions and nothing can spill.
    PolicyConfig to_edge;
    to_edge.tau_text = 1.0;
    to_edge.tau_image = 1.0;
    to_edge.ell_max = 1.0;
    to_edge.beta_bw_mbps = 1e18;
    to_edge.bandwidth_gate_literal = true;
    CostModel wide = model;
    wide.edge_queue_cap = 1'000'000'000;
    SimReport moa_edge =
        simulate(workload, Strategy{StrategyKind::MoaOff, 0.5}, to_edge, wide, 300.0, 7);
    const SimReport edge =
        simulate(workload, Strategy{StrategyKind::EdgeOnly, 0.5}, to_edge, wide, 300.0, 7);
    moa_edge.strategy = edge.strategy;
    const bool edge_equal = moa_edge == edge;

    const double elapsed = seconds_since(start);
    const bool pass = cloud_equal && edge_equal && elapsed < 10.0;
    report(4, "degenerate thresholds collapse to the pure strategies bit-for-bit", pass,
           fmt("cloud %s, edge %s, 1000 requests, %.2f s", cloud_equal ? "equal" : "DIFFERS",
               edge_equal ? "equal" : "DIFFERS", elapsed));
}

// --- criterion 5 -----------------------------------------------------------

void criterion_trend_bands() {
    const auto start = Clock::now();
    const fs::path dir = work_dir();
    const fs::path csv_path = dir / "trend.csv";
    const fs::path config = fs::path(REPO_ROOT) / "configs" / "default.json";
    const int code = run_cli("simulate --synthetic -c \"" + config.string() + "\" -o \"" +
                             csv_path.string() + "\"");
    if (code != 0) {
        report(5, "latency, computing, and accuracy bands on the default workload", false,
               fmt("simulate exited with %d", code));
        return;
    }
    const std::vector<CsvRow> rows = parse_csv(slurp(csv_path));
    const CsvRow& moa = find_row(rows, "moa-off", 300.0);
    const CsvRow& edge = find_row(rows, "edge-only", 300.0);
    const CsvRow& cloud = find_row(rows, "cloud-only", 300.0);

    const double baseline = std::min(cloud.mean_s, edge.mean_s);
    const bool latency_ok = moa.mean_s <= 0.70 * baseline;
    const double busy_ratio = moa.cloud_busy_s / cloud.cloud_busy_s;
    const bool busy_ok = busy_ratio >= 0.35 && busy_ratio <= 0.70;
    const bool acc_close = std::abs(moa.acc - cloud.acc) <= 0.02;
    const bool edge_gap = cloud.acc - edge.acc >= 0.08;

    const double elapsed = seconds_since(start);
    const bool pass = latency_ok && busy_ok && acc_close && edge_gap && elapsed < 60.0;
    report(5, "latency, computing, and accuracy bands on the default workload", pass,
           fmt("mean %.4f vs bound %.4f; cloud-busy ratio %.3f; acc gap to cloud %.4f; "
               "edge deficit %.4f; %.1f s",
               moa.mean_s, 0.70 * baseline, busy_ratio, std::abs(moa.acc - cloud.acc),
               cloud.acc - edge.acc, elapsed));
}

// --- criterion 6 -----------------------------------------------------------

void criterion_ablation_direction() {
    SyntheticSpec spec; // the default 5000-request workload
    const std::vector<Request> workload = synthesize_workload(spec);
    const AblationReport ab = ablation(workload, PolicyConfig{}, CostModel{}, 300.0, 7);
    const bool acc_dir = ab.modality_blind.acc_proxy <= ab.full.acc_proxy;
    const bool p95_dir = ab.scheduling_off.p95_s >= ab.full.p95_s;
    report(6, "ablations degrade in the expected direction", acc_dir && p95_dir,
           fmt("blind acc delta %+.4f (<= 0), scheduling-off p95 delta %+.4f s (>= 0)",
               ab.modality_blind.acc_proxy - ab.full.acc_proxy,
               ab.scheduling_off.p95_s - ab.full.p95_s));
}

// --- criterion 7 -----------------------------------------------------------

void criterion_determinism() {
    const fs::path dir = work_dir();
    const fs::path a = dir / "det_a.csv";
    const fs::path b = dir / "det_b.csv";
    const std::string args = "simulate --synthetic --requests 2000 --seed 7 -o ";
    const int ca = run_cli(args + "\"" + a.string() + "\"");
    const int cb = run_cli(args + "\"" + b.string() + "\"");
    const bool identical = ca == 0 && cb == 0 && slurp(a) == slurp(b);
    report(7, "repeated simulate runs produce byte-identical CSV", identical,
           identical ? "two runs on this platform; the RNG and number formatting are "
                       "integer-based and platform-independent by construction"
                     : fmt("exit codes %d/%d or outputs differ", ca, cb));
}

// --- criterion 8 -----------------------------------------------------------

void criterion_format_robustness() {
    const fs::path dir = work_dir() / "formats";
    fs::create_directories(dir);
    std::vector<std::string> problems;
    auto expect = [&](bool ok, const char* what) {
        if (!ok) {
            problems.emplace_back(what);
        }
    };

    write_file(dir / "ok.pgm", std::string("P5\n2 2\n255\n") + '\x00' + '\x40' + "\x80\xFF");
    try {
        const GrayImage img = load_pgm(dir / "ok.pgm");
        expect(img.at(1, 1) == 255 && img.at(0, 1) == 64, "valid binary pgm decodes");
    } catch (const std::exception&) {
        problems.emplace_back("valid binary pgm rejected");
    }

    write_file(dir / "comment.pgm", "P2\n# fixture\n1 2\n255\n17\n42\n");
    try {
        const GrayImage img = load_pgm(dir / "comment.pgm");
        expect(img.at(1, 0) == 42, "comment-laden ascii pgm decodes");
    } catch (const std::exception&) {
        problems.emplace_back("comment-laden pgm rejected");
    }

    write_file(dir / "trunc.pgm", "P5\n4 4\n255\nabc");
    try {
        load_pgm(dir / "trunc.pgm");
        problems.emplace_back("truncated pgm accepted");
    } catch (const ParseError& e) {
        expect(std::string(e.what()).find("byte") != std::string::npos,
               "truncation error names the byte offset");
    }

    write_file(dir / "deep.pgm", "P5\n1 1\n4095\nzz");
    try {
        load_pgm(dir / "deep.pgm");
        problems.emplace_back("oversized maxval accepted");
    } catch (const ParseError&) {
    }

    write_file(dir / "rgb.ppm", std::string("P6\n1 1\n255\n") + "\xFF" + '\x00' + '\x00');
    try {
        expect(load_ppm_as_gray(dir / "rgb.ppm").at(0, 0) == 76, "ppm converts via rec601");
    } catch (const std::exception&) {
        problems.emplace_back("valid ppm rejected");
    }

    write_file(dir / "wl.jsonl",
               "{\"id\": 0, \"t\": 0, \"mods\": [{\"kind\": \"text\", \"c\": 0.2}]}\n"
               "{broken\n");
    try {
        load_workload(dir / "wl.jsonl", PerceptionConfig{});
        problems.emplace_back("malformed workload line accepted");
    } catch (const ParseError& e) {
        expect(std::string(e.what()).find(":2:") != std::string::npos,
               "workload error reports line 2");
    }

    report(8, "image and workload formats fail loudly with located errors", problems.empty(),
           problems.empty() ? "pgm/ppm suite and workload line numbers"
                            : "failed: " + problems.front());
}

} // namespace

int main() {
    try {
        criterion_kernel_oracle();
        criterion_analytic_components();
        criterion_policy_properties();
        criterion_degenerate_equivalence();
        criterion_trend_bands();
        criterion_ablation_direction();
        criterion_determinism();
        criterion_format_robustness();
    } catch (const std::exception& e) {
        std::printf("[FAIL] unexpected exception: %s\n", e.what());
        ++g_failures;
    }
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 8 criteria passed\n");
    return 0;
}
