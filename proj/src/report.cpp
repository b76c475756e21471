#include "moaoff/report.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace moaoff {

namespace {

std::string shortest(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

void append_row(std::string& out, const SimReport& r) {
    out += r.strategy;
    out += ',';
    out += shortest(r.bandwidth_mbps);
    out += ',';
    out += shortest(r.mean_s);
    out += ',';
    out += shortest(r.p50_s);
    out += ',';
    out += shortest(r.p95_s);
    out += ',';
    out += shortest(r.p99_s);
    out += ',';
    out += shortest(r.acc_proxy);
    out += ',';
    out += shortest(r.frac_offloaded);
    out += ',';
    out += shortest(r.edge_busy_s);
    out += ',';
    out += shortest(r.cloud_busy_s);
    out += ',';
    out += std::to_string(r.bytes_uploaded);
    out += ',';
    out += shortest(r.peak_edge_mem_mb);
    out += ',';
    out += shortest(r.peak_cloud_mem_mb);
    out += ',';
    out += std::to_string(r.edge_spills);
    out += '\n';
}

std::string fixed(double v, int precision) {
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*f", precision, v);
    return buf.data();
}

} // namespace

std::string reports_to_csv(std::span<const SimReport> reports) {
    std::string out =
        "strategy,bandwidth_mbps,mean_s,p50_s,p95_s,p99_s,acc_proxy,frac_offloaded,"
        "edge_busy_s,cloud_busy_s,bytes_uploaded,peak_edge_mem_mb,peak_cloud_mem_mb,"
        "edge_spills\n";
    for (const SimReport& r : reports) {
        append_row(out, r);
    }
    return out;
}

std::string summary_table(std::span<const SimReport> reports) {
    std::array<char, 256> buf{};
    std::string out;
    std::snprintf(buf.data(), buf.size(), "%-16s %9s %9s %9s %9s %7s %9s %7s\n", "strategy",
                  "bw_mbps", "mean_s", "p95_s", "p99_s", "acc", "offload", "spills");
    out += buf.data();
    for (const SimReport& r : reports) {
        std::snprintf(buf.data(), buf.size(), "%-16s %9.0f %9.4f %9.4f %9.4f %7.4f %9.4f %7llu\n",
                      r.strategy.c_str(), r.bandwidth_mbps, r.mean_s, r.p95_s, r.p99_s,
                      r.acc_proxy, r.frac_offloaded,
                      static_cast<unsigned long long>(r.edge_spills));
        out += buf.data();
    }
    return out;
}

std::string ablation_text(const AblationReport& report, double bandwidth_mbps,
                          std::uint64_t seed) {
    std::string out;
    out += "ablation at " + fixed(bandwidth_mbps, 0) + " Mbps, seed " + std::to_string(seed) + "\n";
    out += "deltas are (variant - full): negative acc means the variant is less accurate,\n";
    out += "positive latency/busy values mean the variant is slower or works more\n\n";

    std::array<char, 256> buf{};
    std::snprintf(buf.data(), buf.size(), "%-22s %9s %9s %9s %12s %12s\n", "variant", "acc",
                  "mean_s", "p95_s", "edge_busy_s", "cloud_busy_s");
    out += buf.data();

    const auto row = [&](const char* name, const SimReport& r) {
        std::snprintf(buf.data(), buf.size(), "%-22s %9.4f %9.4f %9.4f %12.2f %12.2f\n", name,
                      r.acc_proxy, r.mean_s, r.p95_s, r.edge_busy_s, r.cloud_busy_s);
        out += buf.data();
    };
    const auto delta = [&](const SimReport& r) {
        const SimReport& f = report.full;
        std::snprintf(buf.data(), buf.size(), "%-22s %+9.4f %+9.4f %+9.4f %+12.2f %+12.2f\n",
                      "  delta", r.acc_proxy - f.acc_proxy, r.mean_s - f.mean_s, r.p95_s - f.p95_s,
                      r.edge_busy_s - f.edge_busy_s, r.cloud_busy_s - f.cloud_busy_s);
        out += buf.data();
    };

    row("full", report.full);
    row("modality-blind", report.modality_blind);
    delta(report.modality_blind);
    row("scheduling-off", report.scheduling_off);
    delta(report.scheduling_off);
    return out;
}

} // namespace moaoff
