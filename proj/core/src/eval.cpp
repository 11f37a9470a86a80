#include "causalkit/eval.hpp"

#include <algorithm>
#include <set>

#include "causalkit/errors.hpp"

namespace causal {

namespace {

using NamePair = std::pair<std::string, std::string>;

NamePair ordered(const std::string& a, const std::string& b) {
    return a < b ? NamePair{a, b} : NamePair{b, a};
}

struct NamedEdges {
    std::set<NamePair> directed;    // (source, destination)
    std::set<NamePair> undirected;  // (min, max)
    std::set<NamePair> adjacent;    // (min, max), both kinds

    explicit NamedEdges(const CausalGraph& g) {
        const auto& nodes = g.nodes();
        for (const auto& [s, d] : g.directed_edges()) {
            directed.insert({nodes[s].name, nodes[d].name});
            adjacent.insert(ordered(nodes[s].name, nodes[d].name));
        }
        for (const auto& [a, b] : g.undirected_edges()) {
            undirected.insert({nodes[a].name, nodes[b].name});
            adjacent.insert(ordered(nodes[a].name, nodes[b].name));
        }
    }
};

void check_same_names(const CausalGraph& predicted, const CausalGraph& truth) {
    std::set<std::string> a, b;
    for (const auto& n : predicted.nodes()) a.insert(n.name);
    for (const auto& n : truth.nodes()) b.insert(n.name);
    if (a == b) {
        return;
    }
    std::string diff;
    for (const auto& n : a) {
        if (!b.count(n)) diff += " -" + n;
    }
    for (const auto& n : b) {
        if (!a.count(n)) diff += " +" + n;
    }
    throw StructuralError("graphs disagree on the node set:" + diff);
}

}  // namespace

MatchMode match_mode_from_string(const std::string& s) {
    if (s == "directed_strict") return MatchMode::directed_strict;
    if (s == "skeleton") return MatchMode::skeleton;
    if (s == "cpdag_aware") return MatchMode::cpdag_aware;
    throw ParseError("unknown match mode: " + s);
}

std::string to_string(MatchMode mode) {
    switch (mode) {
        case MatchMode::directed_strict: return "directed_strict";
        case MatchMode::skeleton: return "skeleton";
        case MatchMode::cpdag_aware: return "cpdag_aware";
    }
    return "?";
}

double f1_of(double precision, double recall) {
    const double s = precision + recall;
    return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

EvalReport edge_metrics(const CausalGraph& predicted, const CausalGraph& truth,
                        MatchMode mode) {
    check_same_names(predicted, truth);
    const NamedEdges pred(predicted);
    const NamedEdges ref(truth);

    EvalReport r;
    r.mode = mode;

    switch (mode) {
        case MatchMode::skeleton: {
            for (const auto& p : pred.adjacent) {
                ref.adjacent.count(p) ? ++r.tp : ++r.fp;
            }
            r.fn = static_cast<int>(ref.adjacent.size()) - r.tp;
            break;
        }
        case MatchMode::directed_strict: {
            for (const auto& e : pred.directed) {
                ref.directed.count(e) ? ++r.tp : ++r.fp;
            }
            for (const auto& e : pred.undirected) {
                ref.undirected.count(e) ? ++r.tp : ++r.fp;
            }
            r.fn = static_cast<int>(ref.directed.size() + ref.undirected.size()) - r.tp;
            break;
        }
        case MatchMode::cpdag_aware: {
            // A predicted edge is credited when its pair is adjacent in the
            // reference and the prediction does not assert the opposite
            // direction of a reference directed edge.
            std::set<NamePair> matched_pairs;
            for (const auto& [s, d] : pred.directed) {
                const auto pair = ordered(s, d);
                if (ref.adjacent.count(pair) && !ref.directed.count({d, s})) {
                    ++r.tp;
                    matched_pairs.insert(pair);
                } else {
                    ++r.fp;
                }
            }
            for (const auto& e : pred.undirected) {
                if (ref.adjacent.count(e)) {
                    ++r.tp;
                    matched_pairs.insert(e);
                } else {
                    ++r.fp;
                }
            }
            r.fn = static_cast<int>(ref.adjacent.size() - matched_pairs.size());
            break;
        }
    }
    r.precision = (r.tp + r.fp) > 0 ? static_cast<double>(r.tp) / (r.tp + r.fp) : 0.0;
    r.recall = (r.tp + r.fn) > 0 ? static_cast<double>(r.tp) / (r.tp + r.fn) : 0.0;
    r.f1 = f1_of(r.precision, r.recall);
    return r;
}

ComplianceReport negative_compliance(
    const CausalGraph& predicted,
    const std::vector<std::pair<std::string, std::string>>& forbidden) {
    ComplianceReport report;
    for (const auto& [src, dst] : forbidden) {
        const int s = predicted.index_of(src);
        const int d = predicted.index_of(dst);
        if (predicted.has_directed(s, d)) {
            report.violations.emplace_back(src, dst);
        }
    }
    std::sort(report.violations.begin(), report.violations.end());
    report.violations.erase(
        std::unique(report.violations.begin(), report.violations.end()),
        report.violations.end());
    return report;
}

}  // namespace causal
