#ifndef CAUSALKIT_GRAPH_IO_HPP
#define CAUSALKIT_GRAPH_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "causalkit/graph.hpp"

namespace causal {

// On-disk graph document. JSON object with fields, in canonical order:
//   name              string
//   nodes             array of {"name": ..., "description": ...}; the
//                     description key is omitted when empty
//   edges             array of [src, dst] name pairs (directed)
//   undirected_edges  array of [a, b] name pairs; omitted when empty
//   forbidden_edges   array of [src, dst] name pairs; omitted when empty
// Serialization is canonical (fixed key order, sorted edge lists, two-space
// indent, trailing newline), so parse followed by serialize is a fixed point
// on bytes, and parse(serialize(doc)) == doc for every valid document.
struct GraphDocument {
    CausalGraph graph;
    // Directed pairs by node index into graph. Sorted, no duplicates.
    std::vector<IndexPair> forbidden_edges;

    bool operator==(const GraphDocument& other) const {
        return graph == other.graph && forbidden_edges == other.forbidden_edges;
    }
};

// Throws ParseError on malformed text: unknown endpoint names, duplicate
// nodes or edges, self loops, missing fields, bad JSON.
GraphDocument parse_graph(const std::string& text);
std::string serialize_graph(const GraphDocument& doc);

GraphDocument load_graph(const std::string& path);
void save_graph(const std::string& path, const GraphDocument& doc);

}  // namespace causal

#endif
