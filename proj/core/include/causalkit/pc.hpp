#ifndef CAUSALKIT_PC_HPP
#define CAUSALKIT_PC_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "causalkit/ci.hpp"
#include "causalkit/graph.hpp"
#include "causalkit/graph_io.hpp"

namespace causal {

// Directed edge constraints for constrained discovery. Indices refer to the
// CI source's variable order. Valid when: no self loops, no pair required in
// both directions, no edge both required and forbidden in the same
// direction.
struct PriorKnowledge {
    std::set<IndexPair> required;
    std::set<IndexPair> forbidden;

    bool empty() const { return required.empty() && forbidden.empty(); }
    void validate(int n_vars) const;

    // Maps a prior graph document onto the variable order by name: edges
    // become required; the document's forbidden list is included when
    // forbid_from_prior is set. Unknown names are an error.
    static PriorKnowledge from_document(const GraphDocument& doc,
                                        const std::vector<std::string>& variables,
                                        bool forbid_from_prior);
};

struct PcConfig {
    double alpha = 0.05;
    // Largest conditioning set size; unset means unbounded (oracle runs).
    std::optional<int> max_cond_size;
    int jobs = 1;
};

// Separating sets recorded at removal time, keyed by the unordered pair
// (smaller index first).
using SepsetMap = std::map<IndexPair, std::vector<int>>;

struct OrientationConflict {
    enum class Kind { v_structure, prior };
    Kind kind;
    // v_structure: the triple (x, z, y) whose collider orientation lost to
    // an earlier writer. prior: the required edge (x, z) that overrode an
    // opposite directed edge; y is -1.
    int x, z, y;
};

struct SkeletonResult {
    CausalGraph graph;  // undirected
    SepsetMap sepsets;
    // Pairs dropped up front because of forbidden edges, sorted.
    std::vector<IndexPair> excluded_pairs;
};

// PC-stable skeleton search. Starts from the complete undirected graph minus
// forbidden pairs: a pair forbidden in either direction is excluded up front
// unless the opposite direction is required, in which case the pair is
// protected instead. Levels iterate conditioning-set sizes; within a level
// every candidate subset is drawn from the adjacency sets frozen at level
// start, so removal decisions are independent of evaluation order (and of
// cfg.jobs). Edges are scanned in ascending (x, y) order; subsets of
// adj(x) \ {y} come first, then unseen subsets of adj(y) \ {x}, each side in
// lexicographic order. The first subset with p > alpha removes the edge and
// records the separating set. Required pairs are never tested or removed.
// After the search settles, each excluded pair is measured once against the
// final adjacencies so that a separating set is still on record for collider
// orientation; the exclusion itself never lifts, and a pair no subset
// separates stays unrecorded. A CI failure is rethrown with the offending
// (x, y, S) attached.
SkeletonResult pc_skeleton(const CiTest& test, const PcConfig& cfg,
                           const PriorKnowledge& prior = {});

// Orients unshielded triples x - z - y with z outside the recorded
// separating set of (x, y) as x -> z <- y. Triples are visited in ascending
// (x, y, z) order with x < y; an edge already directed the other way by an
// earlier triple stays as it is and the loser is reported. Pairs with no
// recorded separating set are skipped.
std::vector<OrientationConflict> orient_v_structures(CausalGraph& g, const SepsetMap& sepsets);

// Prior-first orientation, then Meek closure. Required edges are oriented
// as the prior directs; a required edge that arrives directed the opposite
// way is flipped and reported. Rules R1-R4 then propagate to a fixpoint.
std::vector<OrientationConflict> apply_meek_rules(CausalGraph& g,
                                                  const PriorKnowledge& prior = {});

struct PcResult {
    CausalGraph graph;  // mixed: compelled edges directed, the rest undirected
    SepsetMap sepsets;
    std::vector<OrientationConflict> conflicts;
    std::vector<IndexPair> excluded_pairs;
};

// Full pipeline: skeleton, v-structures, prior orientation, Meek closure.
PcResult discover(const CiTest& test, const PcConfig& cfg, const PriorKnowledge& prior = {});

}  // namespace causal

#endif
