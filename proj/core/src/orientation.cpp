#include "causalkit/orientation.hpp"

namespace causal {

namespace {

// Try to orient a -> b with one of R1..R4. The undirected edge {a, b} must
// exist when called.
bool rule_applies(const CausalGraph& g, int a, int b) {
    int n = g.node_count();

    // R1: some c -> a with c, b non-adjacent.
    for (int c : g.parents(a))
        if (c != b && !g.adjacent(c, b)) return true;

    // R2: directed path a -> c -> b.
    for (int c : g.children(a))
        if (c != b && g.has_directed(c, b)) return true;

    // R3: c, d both undirected-adjacent to a, both directed into b, c and d
    // non-adjacent.
    {
        std::vector<int> cands;
        for (int c : g.undirected_neighbors(a))
            if (c != b && g.has_directed(c, b)) cands.push_back(c);
        for (std::size_t i = 0; i < cands.size(); ++i)
            for (std::size_t j = i + 1; j < cands.size(); ++j)
                if (!g.adjacent(cands[i], cands[j])) return true;
    }

    // R4: chain d -> c -> b with a adjacent to d (any form) and d, b
    // non-adjacent. Orienting b -> a instead would force either a directed
    // cycle through a or a fresh collider at a.
    for (int d = 0; d < n; ++d) {
        if (d == a || d == b || !g.adjacent(a, d) || g.adjacent(d, b)) continue;
        for (int c : g.children(d))
            if (c != a && c != b && g.has_directed(c, b)) return true;
    }

    return false;
}

}  // namespace

int meek_closure(CausalGraph& g) {
    int oriented = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        // Snapshot: orientations mutate the set we scan.
        std::vector<IndexPair> undirected(g.undirected_edges().begin(),
                                          g.undirected_edges().end());
        for (const auto& [a, b] : undirected) {
            if (!g.has_undirected(a, b)) continue;
            if (rule_applies(g, a, b)) {
                g.orient(a, b);
            } else if (rule_applies(g, b, a)) {
                g.orient(b, a);
            } else {
                continue;
            }
            ++oriented;
            changed = true;
            break;  // restart the scan from the smallest pair
        }
    }
    return oriented;
}

}  // namespace causal
