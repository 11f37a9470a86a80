#ifndef CAUSALKIT_GRAPH_ALGORITHMS_HPP
#define CAUSALKIT_GRAPH_ALGORITHMS_HPP

#include <optional>
#include <set>
#include <vector>

#include "causalkit/graph.hpp"

namespace causal {

// True iff the graph is a DAG. Rejects mixed graphs: an undirected edge is a
// StructuralError here, not "not a DAG".
bool is_dag(const CausalGraph& g);

// Kahn's algorithm, ties broken by ascending node index. Throws
// StructuralError naming one cycle when the graph is cyclic, and rejects
// graphs with undirected edges.
std::vector<int> topological_order(const CausalGraph& g);

// One directed cycle as a node sequence v0 -> v1 -> ... -> v0, or empty if
// the directed part is acyclic. Ignores undirected edges.
std::vector<int> find_directed_cycle(const CausalGraph& g);

// Ancestors of the given set under directed edges, including the set itself.
std::set<int> ancestors_inclusive(const CausalGraph& g, const std::set<int>& seed);

// d-separation of x and y by s. Requires a DAG, x != y, and x, y not in s.
bool d_separated(const CausalGraph& g, int x, int y, const std::set<int>& s);

// A minimal separating set for a non-adjacent pair: every returned set
// d-separates x and y and no proper subset of it does. Search space is the
// ancestral set of {x, y}; separation there is decided on the moralized
// ancestral graph, where blocking is monotone, so dropping elements one at a
// time until none can go is enough for inclusion-minimality. Returns nullopt
// when the nodes are adjacent or cannot be separated. Output is sorted by
// node index and deterministic for a given graph.
std::optional<std::vector<int>> minimal_separator(const CausalGraph& g, int x, int y);

struct GraphStats {
    int n_nodes = 0;
    int n_edges = 0;  // directed plus undirected
    // Parent pairs sharing a child, a -> b <- c counted once per unordered
    // {a, c}. With unshielded_only, pairs with adjacent parents are skipped.
    int n_colliders = 0;
    // Edge count of the longest directed path; absent when the directed part
    // has a cycle. Undirected edges never contribute.
    std::optional<int> longest_directed_path;
    int in_degree_min = 0;
    int in_degree_median = 0;  // lower median
    int in_degree_max = 0;
};

GraphStats graph_stats(const CausalGraph& g, bool unshielded_only = false);

// CPDAG of a DAG: skeleton plus v-structures, closed under the Meek rules.
// Directed edges in the result are exactly the compelled ones.
CausalGraph cpdag_of(const CausalGraph& g);

}  // namespace causal

#endif
