#pragma once

#include <span>
#include <vector>

namespace moaoff {

enum class Modality { Text, Image };

enum class Decision { Edge, Cloud };

const char* to_string(Modality m);
const char* to_string(Decision d);

/// Snapshot of the shared system state at routing time.
struct SystemState {
    double edge_load = 0.0;       // fraction in [0,1]
    double bandwidth_mbps = 0.0;  // > 0
};

struct PolicyConfig {
    double tau_text = 0.5;
    double tau_image = 0.5;
    double ell_max = 0.5;
    double beta_bw_mbps = 400.0;
    // The gate is b <= beta as printed; false flips it to b >= beta for
    // sensitivity studies.
    bool bandwidth_gate_literal = true;
};

void validate(const PolicyConfig& cfg);

struct ScoredModality {
    Modality modality = Modality::Text;
    double complexity = 0.0;
};

struct RoutedModality {
    Modality modality = Modality::Text;
    double complexity = 0.0;
    Decision decision = Decision::Edge;
};

using DecisionVector = std::vector<RoutedModality>;

/// Routes one modality: Edge iff c <= tau_m AND load <= ell_max AND the
/// bandwidth gate holds; Cloud otherwise. All comparisons inclusive.
Decision decide_modality(double complexity, Modality m, const SystemState& state,
                         const PolicyConfig& cfg);

/// Routes every modality of a request independently against one state
/// snapshot, so mixed edge/cloud outcomes are possible.
DecisionVector decide_request(std::span<const ScoredModality> scores, const SystemState& state,
                              const PolicyConfig& cfg);

} // namespace moaoff
