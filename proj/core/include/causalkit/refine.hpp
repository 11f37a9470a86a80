#ifndef CAUSALKIT_REFINE_HPP
#define CAUSALKIT_REFINE_HPP

#include <utility>
#include <vector>

#include "causalkit/ci.hpp"
#include "causalkit/graph.hpp"
#include "causalkit/pc.hpp"

namespace causal {

// Turns a mixed, possibly cyclic graph into a DAG. Undirected edges are
// oriented one by one in ascending (a, b) order; for each, the direction is
// chosen by priority: a prior-required direction, then a direction that does
// not close a directed cycle, then ascending index order. Prior-forbidden
// directions are never chosen; an edge whose directions are both forbidden
// is dropped. Remaining directed cycles are then broken greedily: enumerate
// simple cycles, remove the edge lying on the most of them, ties to the
// lexicographically smallest (src, dst), repeat until acyclic.
struct AcyclicityResult {
    CausalGraph graph;  // passes is_dag
    std::vector<IndexPair> oriented;       // undirected edges with chosen direction
    std::vector<IndexPair> removed_edges;  // cycle-breaking removals, in order
    std::vector<IndexPair> dropped_undirected;  // both directions forbidden
};

AcyclicityResult enforce_acyclicity(const CausalGraph& g, const PriorKnowledge* prior = nullptr);

// All simple directed cycles, each reported once with its smallest node
// first. Enumeration stops at the cap; callers treat the result as a sample
// in that case. Deterministic.
std::vector<std::vector<int>> enumerate_simple_cycles(const CausalGraph& g,
                                                      std::size_t cap = 20000);

struct EdgeScore {
    IndexPair edge;
    std::vector<int> witness;  // separating set used for the test, sorted
    double p_value;
};

enum class PruneOrder { highest_p_first, lowest_p_first };

struct PruneConfig {
    double frac = 0.0;  // fraction of edges to remove, in [0, 1]
    PruneOrder order = PruneOrder::highest_p_first;
};

// Scores every directed edge of a DAG by testing its endpoints conditioned
// on a witness separating set computed with the edge removed (the minimal
// separator in the reduced graph, empty when none exists), sorts by p-value
// per cfg.order with ties on ascending (src, dst), and removes the first
// ceil(frac * |E|) edges. frac = 0 still returns the full score list.
// The returned scores are in the sorted order.
std::pair<CausalGraph, std::vector<EdgeScore>> prune_edges(const CausalGraph& g,
                                                           const CiTest& ci,
                                                           const PruneConfig& cfg);

struct ExpandConfig {
    double alpha = 0.05;  // dependence threshold: add when p < alpha
};

struct ExpandResult {
    CausalGraph graph;  // still a DAG
    std::vector<EdgeScore> added;  // in addition order (ascending p)
};

// Tests every non-adjacent pair of a DAG given a valid separation set (the
// minimal separator on the input graph, empty for inseparable pairs); pairs
// with p < alpha are added in ascending-p order (ties lexicographic), each
// oriented by the acyclicity resolver against the graph built so far. An
// addition whose directions both close cycles or are both forbidden is
// skipped.
ExpandResult expand_edges(const CausalGraph& g, const CiTest& ci, const ExpandConfig& cfg,
                          const PriorKnowledge* prior = nullptr);

}  // namespace causal

#endif
