#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "moaoff/policy.hpp"

namespace moaoff {

struct ModalityTask {
    Modality modality = Modality::Text;
    double complexity = 0.0;          // in [0,1]
    std::uint64_t payload_bytes = 0;  // uploaded if the task runs in the cloud
};

struct Request {
    std::uint64_t id = 0;
    double arrival_time_s = 0.0;
    std::vector<ModalityTask> tasks;  // non-empty
};

/// Synthetic stand-in for the real edge/cloud model deployments. Service
/// times are affine in complexity; the accuracy proxy degrades linearly on
/// the edge and is flat in the cloud.
struct CostModel {
    double edge_base_s = 0.018;
    double edge_slope_s = 0.062;
    double cloud_base_s = 0.057;
    double cloud_slope_s = 0.12;
    double rtt_s = 0.22;
    double edge_acc_base = 0.90;   // acc_edge(c) = clip(base - slope*c, 0, 1)
    double edge_acc_slope = 0.45;
    double cloud_acc = 0.77;
    double edge_mem_mb = 4100.0;   // model footprint while >=1 task is resident
    double cloud_mem_mb = 15900.0;
    std::int64_t edge_queue_cap = 24;  // tasks resident at the edge, incl. in service
};

void validate(const CostModel& model);

enum class StrategyKind { MoaOff, EdgeOnly, CloudOnly, UniformOffload };

/// UniformOffload is the modality-blind baseline: the whole request goes to
/// the cloud iff its mean task complexity exceeds uniform_threshold.
struct Strategy {
    StrategyKind kind = StrategyKind::MoaOff;
    double uniform_threshold = 0.5;
};

const char* strategy_name(StrategyKind kind);
StrategyKind strategy_from_name(const std::string& name);

/// Per-(strategy, bandwidth) simulation outcome.
struct SimReport {
    std::string strategy;
    double bandwidth_mbps = 0.0;
    double mean_s = 0.0;
    double p50_s = 0.0;
    double p95_s = 0.0;
    double p99_s = 0.0;
    double acc_proxy = 0.0;        // fraction of requests with every task correct
    double frac_offloaded = 0.0;   // fraction of tasks executed in the cloud
    double edge_busy_s = 0.0;
    double cloud_busy_s = 0.0;
    std::uint64_t bytes_uploaded = 0;
    double peak_edge_mem_mb = 0.0;
    double peak_cloud_mem_mb = 0.0;
    std::uint64_t edge_spills = 0;
    std::uint64_t request_count = 0;
    std::uint64_t task_count = 0;

    bool operator==(const SimReport&) const = default;
};

/// Ablation knobs for the MoaOff router. BlindMean routes every task by the
/// request-mean complexity (execution still uses the true one);
/// NoStateGates drops the load and bandwidth conjuncts.
enum class RouteVariant { Standard, BlindMean, NoStateGates };

double edge_service_time(const ModalityTask& task, const CostModel& model);

/// Upload + round trip + cloud compute. The response payload is treated as
/// negligible.
double cloud_total_time(const ModalityTask& task, double bandwidth_mbps, const CostModel& model);

/// Deterministic event-driven run over an arrival-sorted workload.
///
/// The edge is one FIFO server with a bounded resident-task count
/// (edge_queue_cap); the cloud has unlimited parallel capacity. Each request
/// snapshots SystemState{queue occupancy / cap, bandwidth} on arrival and
/// routes its tasks per the strategy. Tasks the router sends to a full edge
/// spill to the cloud (counted in edge_spills); EdgeOnly models a device
/// with no cloud at all, so it queues unboundedly instead of spilling.
/// Correctness draws come from a per-(seed, request id, task index)
/// splitmix64 stream, so identical inputs give bit-identical reports and a
/// task's draw does not depend on where it ran.
SimReport simulate(std::span<const Request> workload, const Strategy& strategy,
                   const PolicyConfig& cfg, const CostModel& model, double bandwidth_mbps,
                   std::uint64_t seed, RouteVariant variant = RouteVariant::Standard);

/// All requested strategies at every bandwidth, same seed. Report order is
/// strategy-major (in the given strategy order) with bandwidths in the
/// given order.
std::vector<SimReport> run_comparison(std::span<const Request> workload, const PolicyConfig& cfg,
                                      const CostModel& model, std::span<const double> bandwidths_mbps,
                                      std::uint64_t seed,
                                      std::span<const Strategy> strategies);

std::vector<SimReport> run_comparison(std::span<const Request> workload, const PolicyConfig& cfg,
                                      const CostModel& model, std::span<const double> bandwidths_mbps,
                                      std::uint64_t seed);

struct AblationReport {
    SimReport full;            // MoaOff as configured
    SimReport modality_blind;  // per-task scores replaced by the request mean
    SimReport scheduling_off;  // threshold rule only, state gates ignored
};

AblationReport ablation(std::span<const Request> workload, const PolicyConfig& cfg,
                        const CostModel& model, double bandwidth_mbps, std::uint64_t seed);

} // namespace moaoff
