#include "causalkit/graph_algorithms.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <queue>
#include <sstream>

#include "causalkit/errors.hpp"
#include "causalkit/orientation.hpp"

namespace causal {

namespace {

void require_no_undirected(const CausalGraph& g, const char* op) {
    if (!g.undirected_edges().empty()) {
        const auto& [a, b] = *g.undirected_edges().begin();
        throw StructuralError(std::string(op) + " requires a fully directed graph, found " +
                              g.node(a).name + " -- " + g.node(b).name);
    }
}

std::string cycle_to_string(const CausalGraph& g, const std::vector<int>& cycle) {
    std::ostringstream os;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (i) os << " -> ";
        os << g.node(cycle[i]).name;
    }
    os << " -> " << g.node(cycle.front()).name;
    return os.str();
}

}  // namespace

std::vector<int> find_directed_cycle(const CausalGraph& g) {
    int n = g.node_count();
    // 0 = unvisited, 1 = on stack, 2 = done
    std::vector<int> color(n, 0), parent(n, -1);
    for (int start = 0; start < n; ++start) {
        if (color[start]) continue;
        std::vector<std::pair<int, int>> stack{{start, -1}};
        while (!stack.empty()) {
            auto [v, from] = stack.back();
            if (color[v] == 0) {
                color[v] = 1;
                parent[v] = from;
                for (int c : g.children(v)) {
                    if (color[c] == 1) {
                        // Back edge v -> c closes a cycle c -> ... -> v.
                        std::vector<int> cycle{v};
                        for (int u = v; u != c; u = parent[u]) cycle.push_back(parent[u]);
                        std::reverse(cycle.begin(), cycle.end());
                        return cycle;
                    }
                    if (color[c] == 0) stack.emplace_back(c, v);
                }
            } else {
                if (color[v] == 1) color[v] = 2;
                stack.pop_back();
            }
        }
    }
    return {};
}

bool is_dag(const CausalGraph& g) {
    require_no_undirected(g, "is_dag");
    return find_directed_cycle(g).empty();
}

std::vector<int> topological_order(const CausalGraph& g) {
    require_no_undirected(g, "topological_order");
    int n = g.node_count();
    std::vector<int> indeg(n, 0);
    for (const auto& [s, d] : g.directed_edges()) {
        (void)s;
        ++indeg[d];
    }
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int i = 0; i < n; ++i)
        if (indeg[i] == 0) ready.push(i);
    std::vector<int> order;
    order.reserve(n);
    while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        order.push_back(v);
        for (int c : g.children(v))
            if (--indeg[c] == 0) ready.push(c);
    }
    if (static_cast<int>(order.size()) != n) {
        auto cycle = find_directed_cycle(g);
        throw StructuralError("graph has a directed cycle: " + cycle_to_string(g, cycle));
    }
    return order;
}

std::set<int> ancestors_inclusive(const CausalGraph& g, const std::set<int>& seed) {
    std::set<int> out = seed;
    std::deque<int> frontier(seed.begin(), seed.end());
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop_front();
        for (int p : g.parents(v))
            if (out.insert(p).second) frontier.push_back(p);
    }
    return out;
}

// Active-trail reachability. A state is (node, direction of arrival):
// arriving "down" means through an edge pointing at the node, "up" means
// through an edge leaving it. From (v, up) with v not conditioned the trail
// extends to parents (up) and children (down). From (v, down) it extends to
// children (down) when v is unconditioned, and back to parents (up) exactly
// when v is an ancestor of the conditioning set, which is the collider case.
bool d_separated(const CausalGraph& g, int x, int y, const std::set<int>& s) {
    if (!is_dag(g)) {
        auto cycle = find_directed_cycle(g);
        throw StructuralError("d-separation requires a DAG, found cycle: " +
                              cycle_to_string(g, cycle));
    }
    int n = g.node_count();
    auto check = [&](int v) {
        if (v < 0 || v >= n) throw StructuralError("node index out of range");
    };
    check(x);
    check(y);
    for (int v : s) check(v);
    if (x == y) throw StructuralError("d-separation asked for identical endpoints");
    if (s.count(x) || s.count(y))
        throw StructuralError("conditioning set contains an endpoint");

    std::set<int> anc_s = ancestors_inclusive(g, s);
    // visited[v][0]: reached moving up, visited[v][1]: reached moving down
    std::vector<std::array<bool, 2>> visited(n, {false, false});
    std::deque<std::pair<int, int>> frontier{{x, 0}};  // 0 = up, 1 = down
    while (!frontier.empty()) {
        auto [v, dir] = frontier.front();
        frontier.pop_front();
        if (visited[v][dir]) continue;
        visited[v][dir] = true;
        if (v == y) return false;
        bool conditioned = s.count(v) != 0;
        if (dir == 0 && !conditioned) {
            for (int p : g.parents(v)) frontier.emplace_back(p, 0);
            for (int c : g.children(v)) frontier.emplace_back(c, 1);
        } else if (dir == 1) {
            if (!conditioned)
                for (int c : g.children(v)) frontier.emplace_back(c, 1);
            if (anc_s.count(v))
                for (int p : g.parents(v)) frontier.emplace_back(p, 0);
        }
    }
    return true;
}

namespace {

// Moral graph of the induced subgraph on an ancestral set: undirected copies
// of the directed edges plus marriages between coparents. Within an
// ancestral set every parent of a member is itself a member, so induction
// keeps all parent sets intact.
std::vector<std::set<int>> moral_ancestral(const CausalGraph& g, const std::set<int>& anc) {
    std::vector<std::set<int>> adj(g.node_count());
    auto connect = [&](int a, int b) {
        adj[a].insert(b);
        adj[b].insert(a);
    };
    for (const auto& [s, d] : g.directed_edges())
        if (anc.count(s) && anc.count(d)) connect(s, d);
    for (int v : anc) {
        auto ps = g.parents(v);
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = i + 1; j < ps.size(); ++j) connect(ps[i], ps[j]);
    }
    return adj;
}

bool separates_in(const std::vector<std::set<int>>& adj, const std::set<int>& domain, int x,
                  int y, const std::set<int>& blocked) {
    std::deque<int> frontier{x};
    std::set<int> seen{x};
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop_front();
        for (int w : adj[v]) {
            if (!domain.count(w) || blocked.count(w) || seen.count(w)) continue;
            if (w == y) return false;
            seen.insert(w);
            frontier.push_back(w);
        }
    }
    return true;
}

}  // namespace

std::optional<std::vector<int>> minimal_separator(const CausalGraph& g, int x, int y) {
    if (!is_dag(g))
        throw StructuralError("minimal_separator requires a DAG");
    if (x == y) throw StructuralError("minimal_separator asked for identical endpoints");
    g.node(x);
    g.node(y);
    if (g.adjacent(x, y)) return std::nullopt;

    std::set<int> anc = ancestors_inclusive(g, {x, y});
    auto moral = moral_ancestral(g, anc);
    // Adjacent in the moral ancestral graph means no separator exists at all.
    if (moral[x].count(y)) return std::nullopt;

    std::set<int> sep;
    for (int v : moral[x])
        if (v != y) sep.insert(v);

    bool changed = true;
    while (changed) {
        changed = false;
        for (int v : sep) {
            std::set<int> reduced = sep;
            reduced.erase(v);
            if (separates_in(moral, anc, x, y, reduced)) {
                sep = std::move(reduced);
                changed = true;
                break;
            }
        }
    }
    return std::vector<int>(sep.begin(), sep.end());
}

GraphStats graph_stats(const CausalGraph& g, bool unshielded_only) {
    GraphStats st;
    st.n_nodes = g.node_count();
    st.n_edges = g.edge_count();

    for (int b = 0; b < g.node_count(); ++b) {
        auto ps = g.parents(b);
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = i + 1; j < ps.size(); ++j) {
                if (unshielded_only && g.adjacent(ps[i], ps[j])) continue;
                ++st.n_colliders;
            }
    }

    std::vector<int> indeg(g.node_count(), 0);
    for (const auto& [s, d] : g.directed_edges()) {
        (void)s;
        ++indeg[d];
    }
    if (!indeg.empty()) {
        std::vector<int> sorted = indeg;
        std::sort(sorted.begin(), sorted.end());
        st.in_degree_min = sorted.front();
        st.in_degree_max = sorted.back();
        st.in_degree_median = sorted[(sorted.size() - 1) / 2];
    }

    // Longest path by DP over a topological order of the directed part.
    CausalGraph directed_part(g.name(), g.nodes());
    for (const auto& [s, d] : g.directed_edges()) directed_part.add_directed(s, d);
    if (find_directed_cycle(directed_part).empty()) {
        auto order = topological_order(directed_part);
        std::vector<int> dist(g.node_count(), 0);
        int best = 0;
        for (int v : order)
            for (int c : directed_part.children(v)) {
                dist[c] = std::max(dist[c], dist[v] + 1);
                best = std::max(best, dist[c]);
            }
        st.longest_directed_path = best;
    }
    return st;
}

CausalGraph cpdag_of(const CausalGraph& g) {
    if (!is_dag(g)) {
        auto cycle = find_directed_cycle(g);
        throw StructuralError("cpdag_of requires a DAG, found cycle: " +
                              cycle_to_string(g, cycle));
    }
    CausalGraph out = g.skeleton();
    // V-structures of the DAG survive as compelled edges; shielded colliders
    // do not.
    for (int z = 0; z < g.node_count(); ++z) {
        auto ps = g.parents(z);
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = i + 1; j < ps.size(); ++j) {
                if (g.adjacent(ps[i], ps[j])) continue;
                if (out.has_undirected(ps[i], z)) out.orient(ps[i], z);
                if (out.has_undirected(ps[j], z)) out.orient(ps[j], z);
            }
    }
    meek_closure(out);
    return out;
}

}  // namespace causal
