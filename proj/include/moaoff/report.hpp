#pragma once

#include <span>
#include <string>

#include "moaoff/sim.hpp"

namespace moaoff {

// Fixed column order:
// strategy, bandwidth_mbps, mean_s, p50_s, p95_s, p99_s, acc_proxy,
// frac_offloaded, edge_busy_s, cloud_busy_s, bytes_uploaded,
// peak_edge_mem_mb, peak_cloud_mem_mb, edge_spills.
// Doubles are written with the shortest round-trip representation, so equal
// reports serialize to identical bytes.
std::string reports_to_csv(std::span<const SimReport> reports);

/// Human-readable fixed-width table of the same rows.
std::string summary_table(std::span<const SimReport> reports);

/// Ablation comparison. Deltas are (variant - full): a negative accuracy
/// delta means the variant is less accurate, a positive latency delta means
/// it is slower. The convention is restated in the output header.
std::string ablation_text(const AblationReport& report, double bandwidth_mbps,
                          std::uint64_t seed);

} // namespace moaoff
