#include "causalkit/llm/memtest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

#include "causalkit/errors.hpp"
#include "causalkit/llm/listparse.hpp"
#include "causalkit/rng.hpp"

namespace causal::llm {

namespace {

constexpr std::uint64_t kNodeStream = 0x6d656d2d6e6f6465ULL;  // "mem-node"
constexpr std::uint64_t kEdgeStream = 0x6d656d2d65646765ULL;  // "mem-edge"

int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

// Chooses k of n indices with a seeded partial Fisher-Yates shuffle, then
// reports them sorted so revealed items keep their original order.
std::vector<int> choose_sorted(int n, int k, Rng& rng) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < k; ++i) {
        const int j = i + rng.below(n - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::string normalize(const std::string& s) {
    std::string t = trim(s);
    std::transform(t.begin(), t.end(), t.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return t;
}

void finish_counts(PrfCounts& c) {
    c.precision = (c.tp + c.fp) > 0 ? static_cast<double>(c.tp) / (c.tp + c.fp) : 0.0;
    c.recall = (c.tp + c.fn) > 0 ? static_cast<double>(c.tp) / (c.tp + c.fn) : 0.0;
    c.f1 = (c.precision + c.recall) > 0.0
               ? 2.0 * c.precision * c.recall / (c.precision + c.recall)
               : 0.0;
}

PrfCounts score_names(const std::vector<std::string>& predicted,
                      const std::vector<std::string>& hidden) {
    std::set<std::string> want;
    for (const auto& h : hidden) want.insert(normalize(h));
    std::set<std::string> seen;
    PrfCounts c;
    for (const auto& p : predicted) {
        const std::string key = normalize(p);
        if (!seen.insert(key).second) continue;
        if (want.count(key)) {
            ++c.tp;
        } else {
            ++c.fp;
        }
    }
    c.fn = static_cast<int>(want.size()) - c.tp;
    finish_counts(c);
    return c;
}

PrfCounts score_edges(const std::vector<std::pair<std::string, std::string>>& predicted,
                      const std::vector<std::pair<std::string, std::string>>& hidden) {
    using Key = std::pair<std::string, std::string>;
    std::set<Key> want;
    for (const auto& h : hidden) want.insert({normalize(h.first), normalize(h.second)});
    std::set<Key> seen;
    PrfCounts c;
    for (const auto& p : predicted) {
        const Key key{normalize(p.first), normalize(p.second)};
        if (!seen.insert(key).second) continue;
        if (want.count(key)) {
            ++c.tp;
        } else {
            ++c.fp;
        }
    }
    c.fn = static_cast<int>(want.size()) - c.tp;
    finish_counts(c);
    return c;
}

}  // namespace

MemTask split_for_mem(const CausalGraph& g, MemKind kind, double reveal_frac,
                      std::uint64_t seed, const std::string& dataset_name) {
    if (!(reveal_frac >= 0.0 && reveal_frac <= 1.0)) {
        throw StructuralError("reveal fraction must lie in [0, 1]");
    }
    if (!g.undirected_edges().empty()) {
        throw StructuralError("memorization split needs a fully directed graph");
    }
    MemTask task;
    task.kind = kind;
    task.dataset_name = dataset_name;
    task.reveal_frac = reveal_frac;
    task.seed = seed;

    std::vector<std::string> names;
    names.reserve(g.nodes().size());
    for (const auto& node : g.nodes()) names.push_back(node.name);
    std::vector<std::pair<std::string, std::string>> edges;
    edges.reserve(g.directed_edges().size());
    for (const auto& [s, d] : g.directed_edges()) {
        edges.emplace_back(names[s], names[d]);
    }

    const bool split_nodes = kind != MemKind::m2;
    const bool split_edges = kind != MemKind::m1;

    if (split_nodes) {
        const int n = static_cast<int>(names.size());
        const int k = std::min(n, round_half_up(reveal_frac * n));
        Rng rng(stream_seed(seed, 0, kNodeStream));
        const auto chosen = choose_sorted(n, k, rng);
        std::vector<bool> given(n, false);
        for (int i : chosen) given[i] = true;
        for (int i = 0; i < n; ++i) {
            (given[i] ? task.given_nodes : task.hidden_nodes).push_back(names[i]);
        }
    } else {
        task.given_nodes = names;
    }

    if (split_edges) {
        const int m = static_cast<int>(edges.size());
        const int k = std::min(m, round_half_up(reveal_frac * m));
        Rng rng(stream_seed(seed, 0, kEdgeStream));
        const auto chosen = choose_sorted(m, k, rng);
        std::vector<bool> given(m, false);
        for (int i : chosen) given[i] = true;
        for (int i = 0; i < m; ++i) {
            (given[i] ? task.given_edges : task.hidden_edges).push_back(edges[i]);
        }
    }
    return task;
}

std::string render_mem_prompt(const PromptLibrary& lib, const MemTask& task) {
    std::map<std::string, std::string> slots;
    slots["dataset_name"] = task.dataset_name;
    switch (task.kind) {
        case MemKind::m1:
            slots["num_given"] = std::to_string(task.given_nodes.size());
            slots["given_nodes"] = render_name_list(task.given_nodes);
            slots["num_hidden"] = std::to_string(task.hidden_nodes.size());
            return lib.render("m1", slots);
        case MemKind::m2:
            slots["all_nodes"] = render_name_list(task.given_nodes);
            slots["num_given"] = std::to_string(task.given_edges.size());
            slots["given_edges"] = render_edge_list(task.given_edges);
            slots["num_hidden"] = std::to_string(task.hidden_edges.size());
            return lib.render("m2", slots);
        case MemKind::m3:
            slots["given_nodes"] = render_name_list(task.given_nodes);
            slots["given_edges"] = render_edge_list(task.given_edges);
            slots["num_hidden_nodes"] = std::to_string(task.hidden_nodes.size());
            slots["num_hidden_edges"] = std::to_string(task.hidden_edges.size());
            return lib.render("m3", slots);
    }
    throw StructuralError("unknown memorization kind");
}

MemScore score_mem(const std::string& response, const MemTask& task) {
    MemScore score;
    switch (task.kind) {
        case MemKind::m1: {
            const auto parsed = parse_name_list(response);
            if (!parsed) return score;
            score.parse_ok = true;
            score.nodes = score_names(*parsed, task.hidden_nodes);
            return score;
        }
        case MemKind::m2: {
            const auto parsed = parse_edge_list(response);
            if (!parsed) return score;
            score.parse_ok = true;
            score.edges = score_edges(*parsed, task.hidden_edges);
            return score;
        }
        case MemKind::m3: {
            const auto parsed = parse_nodes_and_edges(response);
            if (!parsed) return score;
            score.parse_ok = true;
            score.nodes = score_names(parsed->nodes, task.hidden_nodes);
            score.edges = score_edges(parsed->edges, task.hidden_edges);
            return score;
        }
    }
    throw StructuralError("unknown memorization kind");
}

}  // namespace causal::llm
