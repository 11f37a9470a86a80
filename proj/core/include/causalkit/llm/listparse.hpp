#ifndef CAUSALKIT_LLM_LISTPARSE_HPP
#define CAUSALKIT_LLM_LISTPARSE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace causal::llm {

// Parsers for the bracketed answer formats the prompts demand. Each one
// tolerates surrounding prose by parsing from the first opening bracket and
// nothing else: if the structure starting there is malformed, the whole
// response counts as unparseable (nullopt). Strings must be single-quoted,
// with no escape sequences; whitespace between tokens is ignored.

// ['a', 'b', ...] anywhere in `text`.
std::optional<std::vector<std::string>> parse_name_list(const std::string& text);

// [['a', 'b'], ['c', 'd'], ...] anywhere in `text`; each inner pair is a
// directed edge written source-first.
std::optional<std::vector<std::pair<std::string, std::string>>> parse_edge_list(
    const std::string& text);

struct NodesAndEdges {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
};

// {'remaining_nodes': [...], 'remaining_edges': [[...], ...]} anywhere in
// `text`, keys in exactly that order.
std::optional<NodesAndEdges> parse_nodes_and_edges(const std::string& text);

// Three-way verdict for pairwise queries: the earliest case-insensitive
// occurrence of "a->b", "b->a", or "none" decides; ties cannot occur because
// the scan is positional. Returns nullopt when none of the tokens appear.
enum class PairVerdict { a_to_b, b_to_a, none };
std::optional<PairVerdict> parse_pair_verdict(const std::string& text);

}  // namespace causal::llm

#endif
