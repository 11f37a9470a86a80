#ifndef CAUSALKIT_EVAL_HPP
#define CAUSALKIT_EVAL_HPP

#include <string>
#include <utility>
#include <vector>

#include "causalkit/graph.hpp"

namespace causal {

// How a predicted edge is matched against the reference graph:
//   directed_strict  an edge counts only when present in the same form, same
//                    direction; a predicted undirected edge against a directed
//                    truth edge is a false positive
//   skeleton         adjacency only, orientation ignored
//   cpdag_aware      adjacency must hold and the prediction must not
//                    contradict the reference orientation; a predicted
//                    undirected edge never contradicts, a reversed directed
//                    edge does
enum class MatchMode { directed_strict, skeleton, cpdag_aware };

MatchMode match_mode_from_string(const std::string& s);
std::string to_string(MatchMode mode);

struct EvalReport {
    MatchMode mode = MatchMode::directed_strict;
    int tp = 0;
    int fp = 0;
    int fn = 0;
    double precision = 0.0;  // tp / (tp + fp), 0 when the denominator is 0
    double recall = 0.0;     // tp / (tp + fn), 0 when the denominator is 0
    double f1 = 0.0;         // harmonic mean, 0 when precision + recall is 0
};

// Compares edges by node name, so the two graphs may order their nodes
// differently; their name sets must coincide (StructuralError otherwise).
EvalReport edge_metrics(const CausalGraph& predicted, const CausalGraph& truth,
                        MatchMode mode);

double f1_of(double precision, double recall);

struct ComplianceReport {
    // Forbidden directed pairs that nevertheless appear as directed edges.
    std::vector<std::pair<std::string, std::string>> violations;
    bool ok() const { return violations.empty(); }
};

// Checks that none of the forbidden (source, destination) name pairs occur as
// directed edges in `predicted`. Undirected edges never violate: forbidding a
// direction bans commitment to it, not adjacency. Unknown names throw.
ComplianceReport negative_compliance(
    const CausalGraph& predicted,
    const std::vector<std::pair<std::string, std::string>>& forbidden);

}  // namespace causal

#endif
