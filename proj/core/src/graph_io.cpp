#include "causalkit/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "causalkit/errors.hpp"

namespace causal {

using ordered_json = nlohmann::ordered_json;

namespace {

std::pair<std::string, std::string> edge_names(const ordered_json& e) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        throw ParseError("edge entries must be [src, dst] name pairs, got " + e.dump());
    return {e[0].get<std::string>(), e[1].get<std::string>()};
}

}  // namespace

GraphDocument parse_graph(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("graph document is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("graph document must be a JSON object");
    if (!j.contains("name") || !j["name"].is_string())
        throw ParseError("graph document needs a string 'name'");
    if (!j.contains("nodes") || !j["nodes"].is_array())
        throw ParseError("graph document needs a 'nodes' array");
    if (!j.contains("edges") || !j["edges"].is_array())
        throw ParseError("graph document needs an 'edges' array");

    std::vector<Node> nodes;
    for (const auto& n : j["nodes"]) {
        if (n.is_string()) {
            nodes.push_back({n.get<std::string>(), ""});
        } else if (n.is_object() && n.contains("name") && n["name"].is_string()) {
            Node node{n["name"].get<std::string>(), ""};
            if (n.contains("description")) {
                if (!n["description"].is_string())
                    throw ParseError("node description must be a string");
                node.description = n["description"].get<std::string>();
            }
            nodes.push_back(std::move(node));
        } else {
            throw ParseError("node entries must be names or {name, description} objects, got " +
                             n.dump());
        }
    }

    GraphDocument doc;
    try {
        doc.graph = CausalGraph(j["name"].get<std::string>(), std::move(nodes));
        for (const auto& e : j["edges"]) {
            auto [s, d] = edge_names(e);
            doc.graph.add_directed(doc.graph.index_of(s), doc.graph.index_of(d));
        }
        if (j.contains("undirected_edges")) {
            if (!j["undirected_edges"].is_array())
                throw ParseError("'undirected_edges' must be an array");
            for (const auto& e : j["undirected_edges"]) {
                auto [a, b] = edge_names(e);
                doc.graph.add_undirected(doc.graph.index_of(a), doc.graph.index_of(b));
            }
        }
        if (j.contains("forbidden_edges")) {
            if (!j["forbidden_edges"].is_array())
                throw ParseError("'forbidden_edges' must be an array");
            for (const auto& e : j["forbidden_edges"]) {
                auto [s, d] = edge_names(e);
                int si = doc.graph.index_of(s), di = doc.graph.index_of(d);
                if (si == di) throw ParseError("forbidden edge is a self loop on '" + s + "'");
                doc.forbidden_edges.emplace_back(si, di);
            }
        }
    } catch (const StructuralError& e) {
        throw ParseError(std::string("invalid graph document: ") + e.what());
    }
    std::sort(doc.forbidden_edges.begin(), doc.forbidden_edges.end());
    auto dup = std::adjacent_find(doc.forbidden_edges.begin(), doc.forbidden_edges.end());
    if (dup != doc.forbidden_edges.end())
        throw ParseError("duplicate forbidden edge " + doc.graph.node(dup->first).name + " -> " +
                         doc.graph.node(dup->second).name);
    return doc;
}

std::string serialize_graph(const GraphDocument& doc) {
    ordered_json j;
    j["name"] = doc.graph.name();
    j["nodes"] = ordered_json::array();
    for (const auto& n : doc.graph.nodes()) {
        ordered_json jn;
        jn["name"] = n.name;
        if (!n.description.empty()) jn["description"] = n.description;
        j["nodes"].push_back(std::move(jn));
    }
    j["edges"] = ordered_json::array();
    for (const auto& [s, d] : doc.graph.directed_edges())
        j["edges"].push_back({doc.graph.node(s).name, doc.graph.node(d).name});
    if (!doc.graph.undirected_edges().empty()) {
        j["undirected_edges"] = ordered_json::array();
        for (const auto& [a, b] : doc.graph.undirected_edges())
            j["undirected_edges"].push_back({doc.graph.node(a).name, doc.graph.node(b).name});
    }
    if (!doc.forbidden_edges.empty()) {
        std::vector<IndexPair> sorted = doc.forbidden_edges;
        std::sort(sorted.begin(), sorted.end());
        j["forbidden_edges"] = ordered_json::array();
        for (const auto& [s, d] : sorted)
            j["forbidden_edges"].push_back({doc.graph.node(s).name, doc.graph.node(d).name});
    }
    return j.dump(2) + "\n";
}

GraphDocument load_graph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open graph file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_graph(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_graph(const std::string& path, const GraphDocument& doc) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write graph file '" + path + "'");
    out << serialize_graph(doc);
    if (!out) throw IoError("short write to '" + path + "'");
}

}  // namespace causal
