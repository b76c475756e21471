#include "moaoff/sim.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "moaoff/error.hpp"
#include "moaoff/rng.hpp"
#include "moaoff/stats.hpp"

namespace moaoff {

void validate(const CostModel& model) {
    if (model.edge_base_s < 0 || model.edge_slope_s < 0 || model.cloud_base_s < 0 ||
        model.cloud_slope_s < 0 || model.rtt_s < 0) {
        throw DomainError("cost model: times must be non-negative");
    }
    if (model.cloud_acc < 0 || model.cloud_acc > 1) {
        throw DomainError("cost model: cloud_acc must lie in [0,1]");
    }
    if (model.edge_mem_mb < 0 || model.cloud_mem_mb < 0) {
        throw DomainError("cost model: memory footprints must be non-negative");
    }
    if (model.edge_queue_cap < 1) {
        throw DomainError("cost model: edge_queue_cap must be at least 1");
    }
}

const char* strategy_name(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::MoaOff: return "moa-off";
        case StrategyKind::EdgeOnly: return "edge-only";
        case StrategyKind::CloudOnly: return "cloud-only";
        case StrategyKind::UniformOffload: return "uniform-offload";
    }
    return "unknown";
}

StrategyKind strategy_from_name(const std::string& name) {
    if (name == "moa-off") return StrategyKind::MoaOff;
    if (name == "edge-only") return StrategyKind::EdgeOnly;
    if (name == "cloud-only") return StrategyKind::CloudOnly;
    if (name == "uniform-offload") return StrategyKind::UniformOffload;
    throw DomainError("unknown strategy '" + name +
                      "' (expected moa-off, edge-only, cloud-only or uniform-offload)");
}

double edge_service_time(const ModalityTask& task, const CostModel& model) {
    return model.edge_base_s + model.edge_slope_s * task.complexity;
}

double cloud_total_time(const ModalityTask& task, double bandwidth_mbps, const CostModel& model) {
    const double transfer_s =
        static_cast<double>(task.payload_bytes) * 8.0 / (bandwidth_mbps * 1e6);
    return transfer_s + model.rtt_s + model.cloud_base_s + model.cloud_slope_s * task.complexity;
}

namespace {

double edge_accuracy(double complexity, const CostModel& model) {
    return clip01(model.edge_acc_base - model.edge_acc_slope * complexity);
}

double mean_complexity(const Request& request) {
    double sum = 0.0;
    for (const ModalityTask& t : request.tasks) {
        sum += t.complexity;
    }
    return sum / static_cast<double>(request.tasks.size());
}

Decision route_task(const ModalityTask& task, const Request& request, const Strategy& strategy,
                    const SystemState& state, const PolicyConfig& cfg, RouteVariant variant) {
    switch (strategy.kind) {
        case StrategyKind::EdgeOnly:
            return Decision::Edge;
        case StrategyKind::CloudOnly:
            return Decision::Cloud;
        case StrategyKind::UniformOffload:
            return mean_complexity(request) > strategy.uniform_threshold ? Decision::Cloud
                                                                         : Decision::Edge;
        case StrategyKind::MoaOff:
            break;
    }
    const double routing_score =
        (variant == RouteVariant::BlindMean) ? mean_complexity(request) : task.complexity;
    if (variant == RouteVariant::NoStateGates) {
        const double tau = (task.modality == Modality::Text) ? cfg.tau_text : cfg.tau_image;
        if (routing_score < 0.0 || routing_score > 1.0) {
            throw DomainError("complexity score outside [0,1]");
        }
        return routing_score <= tau ? Decision::Edge : Decision::Cloud;
    }
    return decide_modality(routing_score, task.modality, state, cfg);
}

} // namespace

SimReport simulate(std::span<const Request> workload, const Strategy& strategy,
                   const PolicyConfig& cfg, const CostModel& model, double bandwidth_mbps,
                   std::uint64_t seed, RouteVariant variant) {
    validate(cfg);
    validate(model);
    if (!(bandwidth_mbps > 0)) {
        throw DomainError("bandwidth must be positive");
    }
    for (std::size_t i = 0; i + 1 < workload.size(); ++i) {
        if (workload[i + 1].arrival_time_s < workload[i].arrival_time_s) {
            throw DomainError("workload must be sorted by arrival time");
        }
    }

    SimReport report;
    report.strategy = strategy_name(strategy.kind);
    report.bandwidth_mbps = bandwidth_mbps;
    report.request_count = workload.size();

    // Finish times of tasks resident at the edge (in service + waiting),
    // FIFO order. Non-decreasing, so expiring entries pop from the front.
    std::deque<double> edge_resident;
    std::vector<double> latencies;
    latencies.reserve(workload.size());

    std::uint64_t correct_requests = 0;
    std::uint64_t cloud_tasks = 0;
    bool edge_used = false;
    bool cloud_used = false;

    const auto cap = static_cast<double>(model.edge_queue_cap);

    for (const Request& request : workload) {
        if (request.tasks.empty()) {
            throw DomainError("request " + std::to_string(request.id) + " has no tasks");
        }
        const double now = request.arrival_time_s;
        while (!edge_resident.empty() && edge_resident.front() <= now) {
            edge_resident.pop_front();
        }
        const double load = std::min(1.0, static_cast<double>(edge_resident.size()) / cap);
        const SystemState state{load, bandwidth_mbps};

        double completion_max = now;
        bool all_correct = true;
        std::size_t task_index = 0;
        for (const ModalityTask& task : request.tasks) {
            Decision decision = route_task(task, request, strategy, state, cfg, variant);

            // EdgeOnly has no cloud to fall back on; everyone else spills
            // when the edge is full.
            if (decision == Decision::Edge && strategy.kind != StrategyKind::EdgeOnly &&
                static_cast<std::int64_t>(edge_resident.size()) >= model.edge_queue_cap) {
                decision = Decision::Cloud;
                ++report.edge_spills;
            }

            double completion = 0.0;
            double accuracy = 0.0;
            if (decision == Decision::Edge) {
                const double service = edge_service_time(task, model);
                const double start = edge_resident.empty() ? now : std::max(now, edge_resident.back());
                completion = start + service;
                edge_resident.push_back(completion);
                report.edge_busy_s += service;
                edge_used = true;
                accuracy = edge_accuracy(task.complexity, model);
            } else {
                completion = now + cloud_total_time(task, bandwidth_mbps, model);
                report.cloud_busy_s += model.cloud_base_s + model.cloud_slope_s * task.complexity;
                report.bytes_uploaded += task.payload_bytes;
                ++cloud_tasks;
                cloud_used = true;
                accuracy = model.cloud_acc;
            }
            completion_max = std::max(completion_max, completion);

            const double draw =
                SplitMix64(derive_stream(seed, request.id, task_index)).next_double();
            all_correct = all_correct && (draw < accuracy);
            ++task_index;
            ++report.task_count;
        }
        latencies.push_back(completion_max - now);
        if (all_correct) {
            ++correct_requests;
        }
    }

    if (!latencies.empty()) {
        std::vector<double> sorted = latencies;
        std::sort(sorted.begin(), sorted.end());
        report.mean_s = mean_of(latencies);
        report.p50_s = percentile_sorted(sorted, 50.0);
        report.p95_s = percentile_sorted(sorted, 95.0);
        report.p99_s = percentile_sorted(sorted, 99.0);
        report.acc_proxy = static_cast<double>(correct_requests) / static_cast<double>(workload.size());
    }
    if (report.task_count > 0) {
        report.frac_offloaded = static_cast<double>(cloud_tasks) / static_cast<double>(report.task_count);
    }
    report.peak_edge_mem_mb = edge_used ? model.edge_mem_mb : 0.0;
    report.peak_cloud_mem_mb = cloud_used ? model.cloud_mem_mb : 0.0;
    return report;
}

std::vector<SimReport> run_comparison(std::span<const Request> workload, const PolicyConfig& cfg,
                                      const CostModel& model, std::span<const double> bandwidths_mbps,
                                      std::uint64_t seed,
                                      std::span<const Strategy> strategies) {
    std::vector<SimReport> reports;
    reports.reserve(strategies.size() * bandwidths_mbps.size());
    for (const Strategy& strategy : strategies) {
        for (double bw : bandwidths_mbps) {
            reports.push_back(simulate(workload, strategy, cfg, model, bw, seed));
        }
    }
    return reports;
}

std::vector<SimReport> run_comparison(std::span<const Request> workload, const PolicyConfig& cfg,
                                      const CostModel& model, std::span<const double> bandwidths_mbps,
                                      std::uint64_t seed) {
    const std::vector<Strategy> all = {
        Strategy{StrategyKind::MoaOff, 0.5},
        Strategy{StrategyKind::EdgeOnly, 0.5},
        Strategy{StrategyKind::CloudOnly, 0.5},
        Strategy{StrategyKind::UniformOffload, 0.5},
    };
    return run_comparison(workload, cfg, model, bandwidths_mbps, seed, all);
}

AblationReport ablation(std::span<const Request> workload, const PolicyConfig& cfg,
                        const CostModel& model, double bandwidth_mbps, std::uint64_t seed) {
    const Strategy moa{StrategyKind::MoaOff, 0.5};
    AblationReport out;
    out.full = simulate(workload, moa, cfg, model, bandwidth_mbps, seed, RouteVariant::Standard);
    out.modality_blind =
        simulate(workload, moa, cfg, model, bandwidth_mbps, seed, RouteVariant::BlindMean);
    out.scheduling_off =
        simulate(workload, moa, cfg, model, bandwidth_mbps, seed, RouteVariant::NoStateGates);
    return out;
}

} // namespace moaoff
