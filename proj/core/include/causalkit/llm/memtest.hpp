#ifndef CAUSALKIT_LLM_MEMTEST_HPP
#define CAUSALKIT_LLM_MEMTEST_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "causalkit/graph.hpp"
#include "causalkit/llm/prompts.hpp"

namespace causal::llm {

// Memorization probes: reveal a seeded fraction of a published benchmark
// graph, ask the model for the remainder, and score the answer. Three levels:
//   m1  reveal node names, recover the hidden node names
//   m2  reveal all node names plus a fraction of edges, recover hidden edges
//   m3  reveal fractions of both, recover both
enum class MemKind { m1, m2, m3 };

struct MemTask {
    MemKind kind;
    std::string dataset_name;
    double reveal_frac;
    std::uint64_t seed;
    std::vector<std::string> given_nodes;
    std::vector<std::string> hidden_nodes;
    std::vector<std::pair<std::string, std::string>> given_edges;
    std::vector<std::pair<std::string, std::string>> hidden_edges;
};

// Splits `g` into revealed and hidden parts. The revealed node and edge counts
// are round-half-up(frac * total); nodes and edges are drawn from independent
// seeded streams so the two choices do not interact. Revealed items keep their
// graph order. m1 leaves edges untouched, m2 reveals every node.
MemTask split_for_mem(const CausalGraph& g, MemKind kind, double reveal_frac,
                      std::uint64_t seed, const std::string& dataset_name);

// Renders the m1/m2/m3 template for the task.
std::string render_mem_prompt(const PromptLibrary& lib, const MemTask& task);

struct PrfCounts {
    int tp = 0;
    int fp = 0;
    int fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct MemScore {
    bool parse_ok = false;
    PrfCounts nodes;  // meaningful for m1 and m3
    PrfCounts edges;  // meaningful for m2 and m3
};

// Scores a raw model response against the hidden items. Matching is by
// trimmed, lowercased name; duplicate predictions collapse to one. A response
// the strict parser rejects scores zero everywhere (parse_ok=false), never a
// partial credit.
MemScore score_mem(const std::string& response, const MemTask& task);

}  // namespace causal::llm

#endif
