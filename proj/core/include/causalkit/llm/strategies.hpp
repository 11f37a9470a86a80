#ifndef CAUSALKIT_LLM_STRATEGIES_HPP
#define CAUSALKIT_LLM_STRATEGIES_HPP

#include <string>
#include <vector>

#include "causalkit/graph.hpp"
#include "causalkit/llm/client.hpp"
#include "causalkit/llm/prompts.hpp"

namespace causal::llm {

struct PriorQueryStats {
    int prompts = 0;         // completions actually issued
    int parse_failures = 0;  // responses the strict parsers rejected
    std::vector<std::string> notes;  // skipped pairs, dropped names, budget stops
};

struct PriorResult {
    CausalGraph graph;  // directed edges only; same node set as the input
    PriorQueryStats stats;
};

// Asks one three-way question per unordered variable pair, in ascending index
// order. A response none of the verdict tokens appear in is retried up to
// `retries` times; a pair that never parses is skipped and noted. Total
// completions are bounded by C(n,2) * (1 + retries).
PriorResult pairwise_prior(const std::vector<Node>& variables, ChatClient& client,
                           const PromptLibrary& lib, int retries = 2);

// Frontier expansion: one prompt names the root causes, then each discovered
// node gets one prompt naming its direct effects, breadth-first in response
// order. Unknown names are dropped, a malformed response is retried once and
// then its branch is abandoned, and a conflicting direction never overwrites
// an edge recorded earlier. Completions are hard-capped at 2n + 1.
PriorResult bfs_prior(const std::vector<Node>& variables, ChatClient& client,
                      const PromptLibrary& lib);

}  // namespace causal::llm

#endif
