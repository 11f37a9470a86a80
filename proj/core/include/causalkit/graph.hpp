#ifndef CAUSALKIT_GRAPH_HPP
#define CAUSALKIT_GRAPH_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace causal {

struct Node {
    std::string name;
    std::string description;  // empty means no description
};

using IndexPair = std::pair<int, int>;

// Mixed graph over a fixed, ordered node set. Invariants enforced on every
// mutation:
//   - node names are whitespace-trimmed, non-empty, unique (case-sensitive)
//   - no self loops
//   - a node pair carries at most one edge form: directed one way, directed
//     the other way, or undirected
// Undirected pairs are stored with the smaller index first. Edge sets
// iterate in ascending (src, dst) order, which is the tie-break order used
// everywhere else in the library.
class CausalGraph {
public:
    CausalGraph() = default;
    CausalGraph(std::string name, std::vector<Node> nodes);

    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    int node_count() const { return static_cast<int>(nodes_.size()); }
    const Node& node(int i) const;
    const std::vector<Node>& nodes() const { return nodes_; }

    // Throws StructuralError for unknown names; find variant returns -1.
    int index_of(const std::string& name) const;
    int find_index(const std::string& name) const;

    void add_directed(int src, int dst);
    void add_undirected(int a, int b);
    void remove_directed(int src, int dst);
    void remove_undirected(int a, int b);

    // Replaces the undirected edge {src, dst} with src -> dst.
    void orient(int src, int dst);
    // Reverses an existing directed edge.
    void reverse(int src, int dst);

    bool has_directed(int src, int dst) const;
    bool has_undirected(int a, int b) const;
    bool adjacent(int a, int b) const;

    const std::set<IndexPair>& directed_edges() const { return directed_; }
    const std::set<IndexPair>& undirected_edges() const { return undirected_; }
    int edge_count() const { return static_cast<int>(directed_.size() + undirected_.size()); }

    std::vector<int> parents(int i) const;
    std::vector<int> children(int i) const;
    std::vector<int> undirected_neighbors(int i) const;
    // Parents, children and undirected neighbors combined, sorted.
    std::vector<int> neighbors(int i) const;

    bool operator==(const CausalGraph& other) const;
    bool operator!=(const CausalGraph& other) const { return !(*this == other); }

    // Same node set, every edge undirected.
    CausalGraph skeleton() const;

    // Complete undirected graph over the given nodes.
    static CausalGraph complete(std::string name, std::vector<Node> nodes);

private:
    void check_node(int i) const;
    void check_pair(int a, int b) const;

    std::string name_;
    std::vector<Node> nodes_;
    std::map<std::string, int> index_;
    std::set<IndexPair> directed_;
    std::set<IndexPair> undirected_;  // normalized (min, max)
};

std::string trim(const std::string& s);

}  // namespace causal

#endif
