#include "causalkit/graph.hpp"

#include <algorithm>

#include "causalkit/errors.hpp"

namespace causal {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

CausalGraph::CausalGraph(std::string name, std::vector<Node> nodes)
    : name_(std::move(name)), nodes_(std::move(nodes)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        nodes_[i].name = trim(nodes_[i].name);
        if (nodes_[i].name.empty())
            throw StructuralError("node " + std::to_string(i) + " has an empty name");
        auto [it, inserted] = index_.emplace(nodes_[i].name, static_cast<int>(i));
        if (!inserted)
            throw StructuralError("duplicate node name '" + nodes_[i].name + "'");
    }
}

const Node& CausalGraph::node(int i) const {
    check_node(i);
    return nodes_[static_cast<std::size_t>(i)];
}

int CausalGraph::index_of(const std::string& name) const {
    int i = find_index(name);
    if (i < 0) throw StructuralError("unknown node '" + name + "'");
    return i;
}

int CausalGraph::find_index(const std::string& name) const {
    auto it = index_.find(trim(name));
    return it == index_.end() ? -1 : it->second;
}

void CausalGraph::check_node(int i) const {
    if (i < 0 || i >= node_count())
        throw StructuralError("node index " + std::to_string(i) + " out of range");
}

void CausalGraph::check_pair(int a, int b) const {
    check_node(a);
    check_node(b);
    if (a == b)
        throw StructuralError("self loop on '" + nodes_[static_cast<std::size_t>(a)].name + "'");
}

void CausalGraph::add_directed(int src, int dst) {
    check_pair(src, dst);
    if (adjacent(src, dst))
        throw StructuralError("pair (" + nodes_[src].name + ", " + nodes_[dst].name +
                              ") already carries an edge");
    directed_.emplace(src, dst);
}

void CausalGraph::add_undirected(int a, int b) {
    check_pair(a, b);
    if (adjacent(a, b))
        throw StructuralError("pair (" + nodes_[a].name + ", " + nodes_[b].name +
                              ") already carries an edge");
    undirected_.emplace(std::min(a, b), std::max(a, b));
}

void CausalGraph::remove_directed(int src, int dst) {
    check_pair(src, dst);
    if (directed_.erase({src, dst}) == 0)
        throw StructuralError("no directed edge " + nodes_[src].name + " -> " + nodes_[dst].name);
}

void CausalGraph::remove_undirected(int a, int b) {
    check_pair(a, b);
    if (undirected_.erase({std::min(a, b), std::max(a, b)}) == 0)
        throw StructuralError("no undirected edge " + nodes_[a].name + " -- " + nodes_[b].name);
}

void CausalGraph::orient(int src, int dst) {
    remove_undirected(src, dst);
    directed_.emplace(src, dst);
}

void CausalGraph::reverse(int src, int dst) {
    remove_directed(src, dst);
    directed_.emplace(dst, src);
}

bool CausalGraph::has_directed(int src, int dst) const {
    return directed_.count({src, dst}) != 0;
}

bool CausalGraph::has_undirected(int a, int b) const {
    return undirected_.count({std::min(a, b), std::max(a, b)}) != 0;
}

bool CausalGraph::adjacent(int a, int b) const {
    return has_directed(a, b) || has_directed(b, a) || has_undirected(a, b);
}

std::vector<int> CausalGraph::parents(int i) const {
    check_node(i);
    std::vector<int> out;
    for (const auto& [s, d] : directed_)
        if (d == i) out.push_back(s);
    return out;  // set order keeps this sorted by source
}

std::vector<int> CausalGraph::children(int i) const {
    check_node(i);
    std::vector<int> out;
    for (const auto& [s, d] : directed_)
        if (s == i) out.push_back(d);
    return out;
}

std::vector<int> CausalGraph::undirected_neighbors(int i) const {
    check_node(i);
    std::vector<int> out;
    for (const auto& [a, b] : undirected_) {
        if (a == i) out.push_back(b);
        if (b == i) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> CausalGraph::neighbors(int i) const {
    std::set<int> out;
    for (int p : parents(i)) out.insert(p);
    for (int c : children(i)) out.insert(c);
    for (int u : undirected_neighbors(i)) out.insert(u);
    return {out.begin(), out.end()};
}

bool CausalGraph::operator==(const CausalGraph& other) const {
    if (name_ != other.name_ || nodes_.size() != other.nodes_.size()) return false;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].name != other.nodes_[i].name ||
            nodes_[i].description != other.nodes_[i].description)
            return false;
    }
    return directed_ == other.directed_ && undirected_ == other.undirected_;
}

CausalGraph CausalGraph::skeleton() const {
    CausalGraph out(name_, nodes_);
    for (const auto& [s, d] : directed_) out.add_undirected(s, d);
    for (const auto& [a, b] : undirected_) out.add_undirected(a, b);
    return out;
}

CausalGraph CausalGraph::complete(std::string name, std::vector<Node> nodes) {
    CausalGraph out(std::move(name), std::move(nodes));
    for (int a = 0; a < out.node_count(); ++a)
        for (int b = a + 1; b < out.node_count(); ++b) out.add_undirected(a, b);
    return out;
}

}  // namespace causal
