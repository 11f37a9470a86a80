#include "causalkit/pc.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

#include "causalkit/errors.hpp"
#include "causalkit/orientation.hpp"

namespace causal {

void PriorKnowledge::validate(int n_vars) const {
    auto check = [&](const IndexPair& e, const char* what) {
        if (e.first < 0 || e.first >= n_vars || e.second < 0 || e.second >= n_vars)
            throw StructuralError(std::string(what) + " edge index out of range");
        if (e.first == e.second)
            throw StructuralError(std::string(what) + " edge is a self loop");
    };
    for (const auto& e : required) {
        check(e, "required");
        if (forbidden.count(e))
            throw StructuralError("edge required and forbidden in the same direction");
        if (required.count({e.second, e.first}))
            throw StructuralError("pair required in both directions");
    }
    for (const auto& e : forbidden) check(e, "forbidden");
}

PriorKnowledge PriorKnowledge::from_document(const GraphDocument& doc,
                                             const std::vector<std::string>& variables,
                                             bool forbid_from_prior) {
    std::map<std::string, int> pos;
    for (std::size_t i = 0; i < variables.size(); ++i)
        pos.emplace(trim(variables[i]), static_cast<int>(i));
    auto map_node = [&](int idx) {
        const std::string& name = doc.graph.node(idx).name;
        auto it = pos.find(name);
        if (it == pos.end())
            throw StructuralError("prior node '" + name + "' is not a dataset variable");
        return it->second;
    };
    PriorKnowledge prior;
    for (const auto& [s, d] : doc.graph.directed_edges())
        prior.required.emplace(map_node(s), map_node(d));
    for (const auto& [a, b] : doc.graph.undirected_edges()) {
        (void)a;
        (void)b;
        throw StructuralError("prior graph must not contain undirected edges");
    }
    if (forbid_from_prior)
        for (const auto& [s, d] : doc.forbidden_edges)
            prior.forbidden.emplace(map_node(s), map_node(d));
    prior.validate(static_cast<int>(variables.size()));
    return prior;
}

namespace {

struct PairClass {
    std::set<IndexPair> excluded;   // unordered (min, max)
    std::set<IndexPair> protected_;  // unordered (min, max)
};

PairClass classify_pairs(int n, const PriorKnowledge& prior) {
    PairClass pc;
    for (const auto& [s, d] : prior.required)
        pc.protected_.emplace(std::min(s, d), std::max(s, d));
    for (const auto& [s, d] : prior.forbidden) {
        bool opposite_required = prior.required.count({d, s}) != 0;
        if (!opposite_required) pc.excluded.emplace(std::min(s, d), std::max(s, d));
    }
    return pc;
}

// Lexicographic k-subsets of a sorted pool. Calls fn(subset) until fn
// returns true; returns whether fn ever did.
bool for_each_subset(const std::vector<int>& pool, int k,
                     const std::function<bool(const std::vector<int>&)>& fn) {
    int m = static_cast<int>(pool.size());
    if (k > m) return false;
    std::vector<int> pick(k);
    std::vector<int> subset(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        for (int i = 0; i < k; ++i) subset[i] = pool[pick[i]];
        if (fn(subset)) return true;
        int i = k - 1;
        while (i >= 0 && pick[i] == m - k + i) --i;
        if (i < 0) return false;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

std::string subset_to_string(const CiTest& test, const std::vector<int>& s) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) os << ", ";
        os << test.variable_names()[s[i]];
    }
    os << "}";
    return os.str();
}

}  // namespace

SkeletonResult pc_skeleton(const CiTest& test, const PcConfig& cfg,
                           const PriorKnowledge& prior) {
    const auto& names = test.variable_names();
    int n = static_cast<int>(names.size());
    prior.validate(n);
    if (cfg.alpha < 0.0 || cfg.alpha > 1.0)
        throw StructuralError("alpha must lie in [0, 1]");

    std::vector<Node> nodes;
    nodes.reserve(n);
    for (const auto& nm : names) nodes.push_back({nm, ""});
    CausalGraph g = CausalGraph::complete("skeleton", std::move(nodes));

    PairClass cls = classify_pairs(n, prior);
    for (const auto& [a, b] : cls.excluded)
        if (g.has_undirected(a, b)) g.remove_undirected(a, b);

    SkeletonResult result{std::move(g), {}, {cls.excluded.begin(), cls.excluded.end()}};
    CausalGraph& skel = result.graph;

    struct Decision {
        bool remove = false;
        std::vector<int> sepset;
        std::vector<int> attempted;  // subset in flight when an error hit
        std::exception_ptr error;
    };

    for (int level = 0;; ++level) {
        if (cfg.max_cond_size && level > *cfg.max_cond_size) break;

        // Frozen adjacency: every decision this level reads this snapshot.
        std::vector<std::vector<int>> adj(n);
        for (int v = 0; v < n; ++v) adj[v] = skel.undirected_neighbors(v);

        std::vector<IndexPair> edges(skel.undirected_edges().begin(),
                                     skel.undirected_edges().end());
        std::vector<IndexPair> candidates;
        for (const auto& [x, y] : edges) {
            if (cls.protected_.count({x, y})) continue;
            if (static_cast<int>(adj[x].size()) - 1 >= level ||
                static_cast<int>(adj[y].size()) - 1 >= level)
                candidates.emplace_back(x, y);
        }
        if (candidates.empty()) break;

        std::vector<Decision> decisions(candidates.size());
        auto decide = [&](std::size_t i) {
            const auto [x, y] = candidates[i];
            Decision& dec = decisions[i];
            try {
                std::vector<int> pool_x, pool_y;
                for (int v : adj[x])
                    if (v != y) pool_x.push_back(v);
                for (int v : adj[y])
                    if (v != x) pool_y.push_back(v);
                std::set<int> pool_x_set(pool_x.begin(), pool_x.end());

                auto try_subset = [&](const std::vector<int>& s) {
                    dec.attempted = s;
                    CiTestResult r = test.test(x, y, s);
                    if (r.p_value > cfg.alpha) {
                        dec.remove = true;
                        dec.sepset = s;
                        return true;
                    }
                    return false;
                };
                if (for_each_subset(pool_x, level, try_subset)) return;
                // y-side subsets not already enumerated on the x side.
                auto fresh = [&](const std::vector<int>& s) {
                    for (int v : s)
                        if (!pool_x_set.count(v)) return true;
                    return false;
                };
                for_each_subset(pool_y, level, [&](const std::vector<int>& s) {
                    if (!fresh(s)) return false;
                    return try_subset(s);
                });
            } catch (...) {
                dec.error = std::current_exception();
            }
        };

        int jobs = std::max(1, cfg.jobs);
        if (jobs == 1 || candidates.size() < 8) {
            for (std::size_t i = 0; i < candidates.size(); ++i) decide(i);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> workers;
            for (int t = 0; t < jobs; ++t)
                workers.emplace_back([&] {
                    for (std::size_t i = next.fetch_add(1); i < candidates.size();
                         i = next.fetch_add(1))
                        decide(i);
                });
            for (auto& w : workers) w.join();
        }

        bool removed_any = false;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (decisions[i].error) {
                const auto [x, y] = candidates[i];
                try {
                    std::rethrow_exception(decisions[i].error);
                } catch (const CausalError& e) {
                    throw NumericalError("CI test failed for (" + names[x] + ", " + names[y] +
                                         " | " + subset_to_string(test, decisions[i].attempted) +
                                         "): " + e.what());
                }
            }
            if (decisions[i].remove) {
                const auto [x, y] = candidates[i];
                skel.remove_undirected(x, y);
                result.sepsets[{x, y}] = decisions[i].sepset;
                removed_any = true;
            }
        }
        (void)removed_any;
    }

    // An excluded pair was never tested, so it carries no separating set,
    // yet collider orientation turns on one. Measure it against the final
    // adjacencies: the pair stays non-adjacent either way, but the
    // orientation phase then sees the same evidence it would have seen had
    // the search removed the edge itself. Pairs that no subset separates
    // (a forbid on a genuinely dependent pair) stay unrecorded.
    for (const auto& [a, b] : cls.excluded) {
        const std::vector<int> pool_a = skel.undirected_neighbors(a);
        const std::vector<int> pool_b = skel.undirected_neighbors(b);
        const std::set<int> pool_a_set(pool_a.begin(), pool_a.end());
        std::vector<int> attempted;
        try {
            bool found = false;
            auto try_subset = [&](const std::vector<int>& s) {
                attempted = s;
                if (test.test(a, b, s).p_value > cfg.alpha) {
                    result.sepsets[{a, b}] = s;
                    found = true;
                    return true;
                }
                return false;
            };
            const int cap = static_cast<int>(std::max(pool_a.size(), pool_b.size()));
            for (int level = 0; !found && level <= cap; ++level) {
                if (cfg.max_cond_size && level > *cfg.max_cond_size) break;
                if (for_each_subset(pool_a, level, try_subset)) break;
                auto fresh = [&](const std::vector<int>& s) {
                    for (int v : s)
                        if (!pool_a_set.count(v)) return true;
                    return false;
                };
                if (for_each_subset(pool_b, level, [&](const std::vector<int>& s) {
                        return fresh(s) && try_subset(s);
                    }))
                    break;
            }
        } catch (const CausalError& e) {
            throw NumericalError("CI test failed for (" + names[a] + ", " + names[b] + " | " +
                                 subset_to_string(test, attempted) + "): " + e.what());
        }
    }
    return result;
}

std::vector<OrientationConflict> orient_v_structures(CausalGraph& g, const SepsetMap& sepsets) {
    std::vector<OrientationConflict> conflicts;
    int n = g.node_count();
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            if (g.adjacent(x, y)) continue;
            auto it = sepsets.find({x, y});
            if (it == sepsets.end()) continue;  // never separated by testing
            for (int z = 0; z < n; ++z) {
                if (z == x || z == y || !g.adjacent(x, z) || !g.adjacent(y, z)) continue;
                if (std::binary_search(it->second.begin(), it->second.end(), z)) continue;
                // collider: both edges should point at z
                bool conflicted = false;
                for (int src : {x, y}) {
                    if (g.has_undirected(src, z)) {
                        g.orient(src, z);
                    } else if (g.has_directed(z, src)) {
                        conflicted = true;  // earlier orientation wins
                    }
                }
                if (conflicted) conflicts.push_back({OrientationConflict::Kind::v_structure,
                                                    x, z, y});
            }
        }
    }
    return conflicts;
}

std::vector<OrientationConflict> apply_meek_rules(CausalGraph& g, const PriorKnowledge& prior) {
    prior.validate(g.node_count());
    std::vector<OrientationConflict> conflicts;
    for (const auto& [s, d] : prior.required) {
        if (g.has_undirected(s, d)) {
            g.orient(s, d);
        } else if (g.has_directed(d, s)) {
            g.reverse(d, s);  // prior wins over data-driven orientation
            conflicts.push_back({OrientationConflict::Kind::prior, s, d, -1});
        }
        // absent pair: nothing to orient
    }
    meek_closure(g);
    return conflicts;
}

PcResult discover(const CiTest& test, const PcConfig& cfg, const PriorKnowledge& prior) {
    SkeletonResult skel = pc_skeleton(test, cfg, prior);
    PcResult result{std::move(skel.graph), std::move(skel.sepsets), {},
                    std::move(skel.excluded_pairs)};
    result.graph.set_name("discovered");
    auto c1 = orient_v_structures(result.graph, result.sepsets);
    auto c2 = apply_meek_rules(result.graph, prior);
    result.conflicts = std::move(c1);
    result.conflicts.insert(result.conflicts.end(), c2.begin(), c2.end());
    return result;
}

}  // namespace causal
