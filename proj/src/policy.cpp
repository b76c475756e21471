#include "moaoff/policy.hpp"

#include "moaoff/error.hpp"

namespace moaoff {

const char* to_string(Modality m) {
    return m == Modality::Text ? "text" : "image";
}

const char* to_string(Decision d) {
    return d == Decision::Edge ? "edge" : "cloud";
}

void validate(const PolicyConfig& cfg) {
    if (cfg.tau_text < 0 || cfg.tau_text > 1 || cfg.tau_image < 0 || cfg.tau_image > 1) {
        throw DomainError("policy: thresholds must lie in [0,1]");
    }
    if (cfg.ell_max < 0 || cfg.ell_max > 1) {
        throw DomainError("policy: ell_max must lie in [0,1]");
    }
    if (!(cfg.beta_bw_mbps > 0)) {
        throw DomainError("policy: beta_bw_mbps must be positive");
    }
}

Decision decide_modality(double complexity, Modality m, const SystemState& state,
                         const PolicyConfig& cfg) {
    if (complexity < 0.0 || complexity > 1.0) {
        throw DomainError("complexity score outside [0,1]");
    }
    const double tau = (m == Modality::Text) ? cfg.tau_text : cfg.tau_image;
    const bool bandwidth_ok = cfg.bandwidth_gate_literal
                                  ? state.bandwidth_mbps <= cfg.beta_bw_mbps
                                  : state.bandwidth_mbps >= cfg.beta_bw_mbps;
    if (complexity <= tau && state.edge_load <= cfg.ell_max && bandwidth_ok) {
        return Decision::Edge;
    }
    return Decision::Cloud;
}

DecisionVector decide_request(std::span<const ScoredModality> scores, const SystemState& state,
                              const PolicyConfig& cfg) {
    if (scores.empty()) {
        throw DomainError("decide_request: empty modality list");
    }
    DecisionVector out;
    out.reserve(scores.size());
    for (const ScoredModality& s : scores) {
        out.push_back(RoutedModality{s.modality, s.complexity,
                                     decide_modality(s.complexity, s.modality, state, cfg)});
    }
    return out;
}

} // namespace moaoff
