#include "causalkit/refine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "causalkit/errors.hpp"
#include "causalkit/graph_algorithms.hpp"

namespace causal {

namespace {

// Would adding src -> dst close a directed cycle, i.e. is src reachable
// from dst?
bool would_cycle(const CausalGraph& g, int src, int dst) {
    std::vector<int> stack{dst};
    std::set<int> seen{dst};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v == src) return true;
        for (int c : g.children(v))
            if (seen.insert(c).second) stack.push_back(c);
    }
    return false;
}

// Maps graph node indices onto a CI source's variable order by name.
std::vector<int> graph_to_ci_index(const CausalGraph& g, const CiTest& ci) {
    std::vector<int> map(g.node_count());
    const auto& names = ci.variable_names();
    for (int v = 0; v < g.node_count(); ++v) {
        auto it = std::find(names.begin(), names.end(), g.node(v).name);
        if (it == names.end())
            throw StructuralError("graph node '" + g.node(v).name +
                                  "' is not a test variable");
        map[v] = static_cast<int>(it - names.begin());
    }
    return map;
}

double test_pair(const CiTest& ci, const std::vector<int>& to_ci, int x, int y,
                 const std::vector<int>& witness) {
    std::vector<int> cond;
    cond.reserve(witness.size());
    for (int w : witness) cond.push_back(to_ci[w]);
    std::sort(cond.begin(), cond.end());
    return ci.test(to_ci[x], to_ci[y], cond).p_value;
}

}  // namespace

std::vector<std::vector<int>> enumerate_simple_cycles(const CausalGraph& g, std::size_t cap) {
    std::vector<std::vector<int>> cycles;
    int n = g.node_count();
    std::vector<int> path;
    std::vector<bool> on_path(n, false);

    // Canonical form: every cycle is discovered from its smallest node, and
    // the walk never dips below that node, so each cycle appears once.
    std::function<void(int, int)> dfs = [&](int start, int v) {
        if (cycles.size() >= cap) return;
        path.push_back(v);
        on_path[v] = true;
        for (int c : g.children(v)) {
            if (cycles.size() >= cap) break;
            if (c == start) {
                cycles.push_back(path);
            } else if (c > start && !on_path[c]) {
                dfs(start, c);
            }
        }
        path.pop_back();
        on_path[v] = false;
    };
    for (int s = 0; s < n && cycles.size() < cap; ++s) dfs(s, s);
    return cycles;
}

AcyclicityResult enforce_acyclicity(const CausalGraph& g, const PriorKnowledge* prior) {
    if (prior) prior->validate(g.node_count());
    CausalGraph out(g.name(), g.nodes());
    for (const auto& [s, d] : g.directed_edges()) out.add_directed(s, d);

    AcyclicityResult result{CausalGraph{}, {}, {}, {}};
    auto forbidden = [&](int s, int d) {
        return prior && prior->forbidden.count({s, d}) != 0;
    };
    auto required = [&](int s, int d) {
        return prior && prior->required.count({s, d}) != 0;
    };

    for (const auto& [a, b] : g.undirected_edges()) {
        int s = -1, d = -1;
        if (required(a, b)) {
            s = a, d = b;
        } else if (required(b, a)) {
            s = b, d = a;
        } else {
            bool ab_ok = !forbidden(a, b), ba_ok = !forbidden(b, a);
            if (ab_ok && would_cycle(out, a, b) && ba_ok && !would_cycle(out, b, a)) {
                s = b, d = a;
            } else if (ab_ok) {
                s = a, d = b;
            } else if (ba_ok) {
                s = b, d = a;
            } else {
                result.dropped_undirected.emplace_back(a, b);
                continue;
            }
        }
        out.add_directed(s, d);
        result.oriented.emplace_back(s, d);
    }

    // Greedy cycle breaking on whatever cycles remain.
    while (true) {
        auto cycles = enumerate_simple_cycles(out);
        if (cycles.empty()) break;
        std::map<IndexPair, std::size_t> hits;
        for (const auto& cyc : cycles) {
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                IndexPair e{cyc[i], cyc[(i + 1) % cyc.size()]};
                ++hits[e];
            }
        }
        // Most cycles broken; map order already breaks ties lexicographically.
        IndexPair best = hits.begin()->first;
        std::size_t best_count = hits.begin()->second;
        for (const auto& [e, c] : hits)
            if (c > best_count) best = e, best_count = c;
        out.remove_directed(best.first, best.second);
        result.removed_edges.push_back(best);
    }

    result.graph = std::move(out);
    return result;
}

std::pair<CausalGraph, std::vector<EdgeScore>> prune_edges(const CausalGraph& g,
                                                           const CiTest& ci,
                                                           const PruneConfig& cfg) {
    if (!is_dag(g)) throw StructuralError("prune_edges expects a DAG");
    if (cfg.frac < 0.0 || cfg.frac > 1.0)
        throw StructuralError("prune fraction must lie in [0, 1]");
    auto to_ci = graph_to_ci_index(g, ci);

    std::vector<EdgeScore> scores;
    for (const auto& [s, d] : g.directed_edges()) {
        CausalGraph reduced(g.name(), g.nodes());
        for (const auto& e : g.directed_edges())
            if (e != IndexPair{s, d}) reduced.add_directed(e.first, e.second);
        // Witness: how well the rest of the graph explains the pair.
        auto sep = minimal_separator(reduced, s, d);
        std::vector<int> witness = sep ? *sep : std::vector<int>{};
        double p = test_pair(ci, to_ci, s, d, witness);
        scores.push_back({{s, d}, std::move(witness), p});
    }

    std::stable_sort(scores.begin(), scores.end(), [&](const EdgeScore& a, const EdgeScore& b) {
        if (a.p_value != b.p_value)
            return cfg.order == PruneOrder::highest_p_first ? a.p_value > b.p_value
                                                            : a.p_value < b.p_value;
        return a.edge < b.edge;
    });

    std::size_t k =
        static_cast<std::size_t>(std::ceil(cfg.frac * static_cast<double>(scores.size())));
    CausalGraph pruned(g.name(), g.nodes());
    std::set<IndexPair> removed;
    for (std::size_t i = 0; i < k && i < scores.size(); ++i) removed.insert(scores[i].edge);
    for (const auto& e : g.directed_edges())
        if (!removed.count(e)) pruned.add_directed(e.first, e.second);
    return {std::move(pruned), std::move(scores)};
}

ExpandResult expand_edges(const CausalGraph& g, const CiTest& ci, const ExpandConfig& cfg,
                          const PriorKnowledge* prior) {
    if (!is_dag(g)) throw StructuralError("expand_edges expects a DAG");
    if (cfg.alpha < 0.0 || cfg.alpha > 1.0)
        throw StructuralError("alpha must lie in [0, 1]");
    if (prior) prior->validate(g.node_count());
    auto to_ci = graph_to_ci_index(g, ci);

    std::vector<EdgeScore> candidates;
    for (int x = 0; x < g.node_count(); ++x) {
        for (int y = x + 1; y < g.node_count(); ++y) {
            if (g.adjacent(x, y)) continue;
            auto sep = minimal_separator(g, x, y);
            std::vector<int> witness = sep ? *sep : std::vector<int>{};
            double p = test_pair(ci, to_ci, x, y, witness);
            if (p < cfg.alpha) candidates.push_back({{x, y}, std::move(witness), p});
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const EdgeScore& a, const EdgeScore& b) {
                         if (a.p_value != b.p_value) return a.p_value < b.p_value;
                         return a.edge < b.edge;
                     });

    ExpandResult result{CausalGraph(g.name(), g.nodes()), {}};
    for (const auto& [s, d] : g.directed_edges()) result.graph.add_directed(s, d);
    auto forbidden = [&](int s, int d) {
        return prior && prior->forbidden.count({s, d}) != 0;
    };
    auto required = [&](int s, int d) {
        return prior && prior->required.count({s, d}) != 0;
    };
    for (auto& cand : candidates) {
        auto [a, b] = cand.edge;
        int s = -1, d = -1;
        if (required(a, b) && !would_cycle(result.graph, a, b)) {
            s = a, d = b;
        } else if (required(b, a) && !would_cycle(result.graph, b, a)) {
            s = b, d = a;
        } else if (!forbidden(a, b) && !would_cycle(result.graph, a, b)) {
            s = a, d = b;
        } else if (!forbidden(b, a) && !would_cycle(result.graph, b, a)) {
            s = b, d = a;
        } else {
            continue;  // no direction keeps the result a DAG
        }
        result.graph.add_directed(s, d);
        cand.edge = {s, d};
        result.added.push_back(std::move(cand));
    }
    return result;
}

}  // namespace causal
