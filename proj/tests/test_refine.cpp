#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"

#include "causalkit/ci.hpp"
#include "causalkit/errors.hpp"
#include "causalkit/graph_algorithms.hpp"
#include "causalkit/refine.hpp"
#include "causalkit/scm.hpp"
#include "testutil.hpp"

using namespace causal;

namespace {

CausalGraph chain4() {
    CausalGraph g("chain", {{"A", ""}, {"B", ""}, {"C", ""}, {"D", ""}});
    g.add_directed(0, 1);
    g.add_directed(1, 2);
    g.add_directed(2, 3);
    return g;
}

}  // namespace

TEST_CASE("acyclicity: undirected edges pick up direction by priority") {
    CausalGraph g("g", {{"a", ""}, {"b", ""}, {"c", ""}});
    g.add_undirected(0, 1);
    g.add_undirected(1, 2);

    SUBCASE("lexicographic fallback") {
        const AcyclicityResult r = enforce_acyclicity(g);
        CHECK(is_dag(r.graph));
        CHECK(r.graph.has_directed(0, 1));
        CHECK(r.graph.has_directed(1, 2));
        CHECK(r.oriented == std::vector<IndexPair>{{0, 1}, {1, 2}});
        CHECK(r.removed_edges.empty());
        CHECK(r.dropped_undirected.empty());
    }

    SUBCASE("prior direction wins") {
        PriorKnowledge prior;
        prior.required.insert({1, 0});
        const AcyclicityResult r = enforce_acyclicity(g, &prior);
        CHECK(r.graph.has_directed(1, 0));
        CHECK(r.graph.has_directed(1, 2));
    }

    SUBCASE("forbidden direction is avoided") {
        PriorKnowledge prior;
        prior.forbidden.insert({0, 1});
        const AcyclicityResult r = enforce_acyclicity(g, &prior);
        CHECK(r.graph.has_directed(1, 0));
    }

    SUBCASE("both directions forbidden drops the edge") {
        PriorKnowledge prior;
        prior.forbidden.insert({0, 1});
        prior.forbidden.insert({1, 0});
        const AcyclicityResult r = enforce_acyclicity(g, &prior);
        CHECK_FALSE(r.graph.adjacent(0, 1));
        CHECK(r.dropped_undirected == std::vector<IndexPair>{{0, 1}});
        CHECK(r.graph.adjacent(1, 2));
    }
}

TEST_CASE("acyclicity: cycle avoidance beats lexicographic order") {
    // 0 -> 1 -> 2 directed, 0-2 undirected. Orienting 0 -> 2 is the
    // lexicographic pick and is fine (no cycle); orienting 2 -> 0 closes one.
    CausalGraph g("g", {{"a", ""}, {"b", ""}, {"c", ""}});
    g.add_directed(0, 1);
    g.add_directed(1, 2);
    g.add_undirected(0, 2);
    const AcyclicityResult r = enforce_acyclicity(g);
    CHECK(r.graph.has_directed(0, 2));
    CHECK(is_dag(r.graph));

    // Reversed spine: 1 -> 0 and 2 -> 1 directed, 0-2 undirected. Now the
    // lexicographic pick 0 -> 2 closes the cycle 0 -> 2 -> 1 -> 0, so the
    // resolver must choose 2 -> 0.
    CausalGraph h("h", {{"a", ""}, {"b", ""}, {"c", ""}});
    h.add_directed(1, 0);
    h.add_directed(2, 1);
    h.add_undirected(0, 2);
    const AcyclicityResult rh = enforce_acyclicity(h);
    CHECK(rh.graph.has_directed(2, 0));
    CHECK(is_dag(rh.graph));
    CHECK(rh.removed_edges.empty());
}

TEST_CASE("acyclicity: directed cycles are broken greedily") {
    // Two cycles sharing the edge 0 -> 1: removing it settles both at once.
    CausalGraph g("g", {{"a", ""}, {"b", ""}, {"c", ""}, {"d", ""}});
    g.add_directed(0, 1);
    g.add_directed(1, 2);
    g.add_directed(2, 0);
    g.add_directed(1, 3);
    g.add_directed(3, 0);
    const AcyclicityResult r = enforce_acyclicity(g);
    CHECK(is_dag(r.graph));
    CHECK(r.removed_edges == std::vector<IndexPair>{{0, 1}});
    CHECK(r.graph.edge_count() == 4);

    // A lone cycle where every edge breaks it equally well: smallest
    // (src, dst) goes. The tie break is purely lexicographic; the breaker
    // does not consult the prior.
    CausalGraph ring("t", {{"a", ""}, {"b", ""}, {"c", ""}});
    ring.add_directed(0, 1);
    ring.add_directed(1, 2);
    ring.add_directed(2, 0);
    const AcyclicityResult r2 = enforce_acyclicity(ring);
    CHECK(is_dag(r2.graph));
    CHECK(r2.removed_edges == std::vector<IndexPair>{{0, 1}});
    CHECK(r2.graph.has_directed(1, 2));
    CHECK(r2.graph.has_directed(2, 0));
}

TEST_CASE("simple cycle enumeration") {
    CausalGraph g("g", {{"a", ""}, {"b", ""}, {"c", ""}, {"d", ""}});
    g.add_directed(0, 1);
    g.add_directed(1, 2);
    g.add_directed(2, 0);
    g.add_directed(2, 3);
    g.add_directed(3, 0);
    const auto cycles = enumerate_simple_cycles(g);
    REQUIRE(cycles.size() == 2);
    CHECK(cycles[0] == std::vector<int>{0, 1, 2});
    CHECK(cycles[1] == std::vector<int>{0, 1, 2, 3});

    CHECK(enumerate_simple_cycles(chain4()).empty());

    // The cap truncates instead of hanging.
    CausalGraph ring("r", {{"a", ""}, {"b", ""}, {"c", ""}, {"d", ""}, {"e", ""}});
    for (int i = 0; i < 5; ++i) ring.add_directed(i, (i + 1) % 5);
    CHECK(enumerate_simple_cycles(ring, 1).size() == 1);
    CHECK(enumerate_simple_cycles(ring).size() == 1);
}

TEST_CASE("pruning scores edges against witness separators") {
    // True chain A -> B -> C -> D plus the spurious edge A -> C. With the
    // d-separation oracle of the plain chain, the witness for (A, C) with the
    // edge removed is {B} and the test reports independence (p = 1); real
    // edges score p = 0.
    CausalGraph wrong = chain4();
    wrong.add_directed(0, 2);
    const DSepOracle oracle(chain4());

    SUBCASE("frac 0 keeps the graph and returns all scores") {
        const auto [pruned, scores] = prune_edges(wrong, oracle, {.frac = 0.0});
        CHECK(pruned == wrong);
        CHECK(scores.size() == 4);
        // highest_p_first: the spurious edge sorts to the front.
        CHECK(scores[0].edge == IndexPair{0, 2});
        CHECK(scores[0].p_value == 1.0);
        CHECK(scores[0].witness == std::vector<int>{1});
        for (std::size_t i = 1; i < scores.size(); ++i) {
            CHECK(scores[i].p_value == 0.0);
        }
    }

    SUBCASE("ceil semantics pick the removal count") {
        // 4 edges: frac 0.25 -> 1 removal; 0.26 -> ceil(1.04) = 2; 0.5 -> 2.
        const auto [g1, s1] = prune_edges(wrong, oracle, {.frac = 0.25});
        CHECK(g1.edge_count() == 3);
        CHECK_FALSE(g1.adjacent(0, 2));
        CHECK(g1 == chain4());
        const auto [g2, s2] = prune_edges(wrong, oracle, {.frac = 0.26});
        CHECK(g2.edge_count() == 2);
        const auto [g3, s3] = prune_edges(wrong, oracle, {.frac = 0.5});
        CHECK(g3.edge_count() == 2);
        const auto [g4, s4] = prune_edges(wrong, oracle, {.frac = 1.0});
        CHECK(g4.edge_count() == 0);
    }

    SUBCASE("lowest_p_first reverses the victim order") {
        const auto [g1, s1] =
            prune_edges(wrong, oracle, {.frac = 0.25, .order = PruneOrder::lowest_p_first});
        // A true edge goes first; ties on ascending (src, dst) pick A -> B.
        CHECK(g1.adjacent(0, 2));
        CHECK_FALSE(g1.adjacent(0, 1));
        CHECK(s1[0].edge == IndexPair{0, 1});
    }
}

TEST_CASE("pruning on sampled data removes the spurious edge first") {
    // Linear chain data; the graph under test carries one extra edge. The
    // Fisher-z witness test should hand the extra edge the largest p-value.
    ScmSpec spec{chain4(), MechanismSpec::linear(DistSpec::uniform(0.8, 1.2)),
                 NoiseSpec::gaussian(0.0, 1.0), 4};
    const Dataset data = sample(build_scm(spec), 2000, 21);
    const FisherZTest fisher(data);
    CausalGraph wrong = chain4();
    wrong.add_directed(1, 3);  // B -> D, spurious
    const auto [pruned, scores] = prune_edges(wrong, fisher, {.frac = 0.25});
    CHECK_FALSE(pruned.adjacent(1, 3));
    CHECK(pruned == chain4());
    CHECK(scores[0].edge == IndexPair{1, 3});
    CHECK(scores[0].witness == std::vector<int>{2});
}

TEST_CASE("pruning rejects non-dags") {
    CausalGraph cyc("c", {{"a", ""}, {"b", ""}, {"c", ""}});
    cyc.add_directed(0, 1);
    cyc.add_directed(1, 2);
    cyc.add_directed(2, 0);
    const DSepOracle oracle(chain4());
    CHECK_THROWS_AS(prune_edges(cyc, oracle, {}), StructuralError);
}

TEST_CASE("expansion adds the independence-breaking pairs back") {
    // Graph missing the middle edge: A -> B, C -> D. The two components are
    // disconnected, so every cross pair has the empty witness, and the chain
    // oracle calls them all dependent: expansion adds all four candidates in
    // ascending index order.
    CausalGraph sparse("s", {{"A", ""}, {"B", ""}, {"C", ""}, {"D", ""}});
    sparse.add_directed(0, 1);
    sparse.add_directed(2, 3);
    const DSepOracle oracle(chain4());
    const ExpandResult r = expand_edges(sparse, oracle, {.alpha = 0.05});
    CHECK(is_dag(r.graph));
    CHECK(r.graph.has_directed(1, 2));
    CHECK(r.added.size() == 4);
    for (const auto& s : r.added) {
        CHECK(s.p_value < 0.05);
        CHECK(s.witness.empty());
    }

    // The already-complete graph gains nothing.
    const ExpandResult r2 = expand_edges(chain4(), oracle, {.alpha = 0.05});
    CHECK(r2.added.empty());
    CHECK(r2.graph == chain4());
}

TEST_CASE("expansion respects prior forbids") {
    CausalGraph sparse("s", {{"A", ""}, {"B", ""}, {"C", ""}, {"D", ""}});
    sparse.add_directed(0, 1);
    sparse.add_directed(2, 3);
    const DSepOracle oracle(chain4());
    PriorKnowledge prior;
    prior.forbidden.insert({1, 2});
    prior.forbidden.insert({2, 1});
    const ExpandResult r = expand_edges(sparse, oracle, {.alpha = 0.05}, &prior);
    CHECK_FALSE(r.graph.adjacent(1, 2));
}

TEST_CASE("expansion on sampled data recovers a dropped chain edge") {
    ScmSpec spec{chain4(), MechanismSpec::linear(DistSpec::uniform(0.8, 1.2)),
                 NoiseSpec::gaussian(0.0, 1.0), 8};
    const Dataset data = sample(build_scm(spec), 2000, 31);
    const FisherZTest fisher(data);
    CausalGraph sparse = chain4();
    sparse.remove_directed(1, 2);
    const ExpandResult r = expand_edges(sparse, fisher, {.alpha = 0.05});
    CHECK(r.graph.adjacent(1, 2));
}
