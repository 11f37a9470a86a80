#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"

#include "causalkit/ci.hpp"
#include "causalkit/errors.hpp"
#include "causalkit/graph_algorithms.hpp"
#include "causalkit/rng.hpp"
#include "causalkit/scm.hpp"
#include "testutil.hpp"

using namespace causal;

namespace {

// Linear-Gaussian data on a random DAG, generated by the sampler.
Dataset linear_data(int n_nodes, double edge_prob, int n, std::uint64_t seed) {
    ScmSpec spec;
    spec.graph = random_dag(n_nodes, edge_prob, seed);
    spec.mechanism = MechanismSpec::linear();
    spec.noise = NoiseSpec::gaussian(0.0, 1.0);
    spec.seed = seed;
    return sample(build_scm(spec), n, seed + 1);
}

}  // namespace

TEST_CASE("normal survival function") {
    CHECK(normal_sf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(normal_sf(1.959963984540054) == doctest::Approx(0.025).epsilon(1e-9));
    CHECK(normal_sf(-1.959963984540054) == doctest::Approx(0.975).epsilon(1e-9));
    CHECK(normal_sf(8.0) < 1e-14);
}

TEST_CASE("partial correlation matches residual regression") {
    // 1000 queries across several graphs, subset sizes 0..3, compared to the
    // QR residual-correlation oracle.
    int queries = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Dataset d = linear_data(8, 0.4, 400, seed);
        const FisherZTest fisher(d);
        const Eigen::MatrixXd& X = d.values();
        Rng pick(stream_seed(777, seed, 1));
        while (queries < 100 * static_cast<int>(seed + 1)) {
            const int x = static_cast<int>(pick.below(8));
            const int y = static_cast<int>(pick.below(8));
            if (x == y) continue;
            std::set<int> cond_set;
            const int want = static_cast<int>(pick.below(4));
            while (static_cast<int>(cond_set.size()) < want) {
                const int c = static_cast<int>(pick.below(8));
                if (c != x && c != y) cond_set.insert(c);
            }
            const std::vector<int> cond(cond_set.begin(), cond_set.end());
            const double got = fisher.partial_correlation(x, y, cond);
            const double want_r = testutil::partial_corr_by_regression(X, x, y, cond);
            CAPTURE(seed);
            CAPTURE(x);
            CAPTURE(y);
            CHECK(std::abs(got - want_r) <= 1e-10);
            ++queries;
        }
    }
    CHECK(queries == 1000);
}

TEST_CASE("fisher z transform and p-value wiring") {
    const Dataset d = linear_data(5, 0.5, 200, 3);
    const FisherZTest fisher(d);
    const std::vector<int> cond{2, 4};
    const CiTestResult r = fisher.test(0, 1, cond);
    const double rho = fisher.partial_correlation(0, 1, cond);
    const double z = 0.5 * std::log((1.0 + rho) / (1.0 - rho)) *
                     std::sqrt(200.0 - 2.0 - 3.0);
    CHECK(r.statistic == doctest::Approx(z).epsilon(1e-12));
    CHECK(r.p_value == doctest::Approx(2.0 * normal_sf(std::abs(z))).epsilon(1e-12));
    CHECK(r.kind == CiKind::fisher_z);
    CHECK(r.x == d.columns()[0]);
    CHECK(r.y == d.columns()[1]);
    CHECK(r.cond == std::vector<std::string>{d.columns()[2], d.columns()[4]});

    // Exact closed form at a known correlation: rho = 0.5 gives
    // z = 0.5 ln 3 sqrt(n - 3).
    Eigen::MatrixXd pair(100, 2);
    Rng rng(42);
    for (int i = 0; i < 100; ++i) {
        pair(i, 0) = rng.normal();
        pair(i, 1) = rng.normal();
    }
    // Impose sample correlation exactly 0.5 by orthonormalizing then mixing.
    Eigen::VectorXd a = pair.col(0);
    a.array() -= a.mean();
    a /= std::sqrt(a.squaredNorm());
    Eigen::VectorXd b = pair.col(1);
    b.array() -= b.mean();
    b -= a.dot(b) * a;
    b /= std::sqrt(b.squaredNorm());
    pair.col(0) = a;
    pair.col(1) = 0.5 * a + std::sqrt(0.75) * b;
    const FisherZTest exact(Dataset({"u", "v"}, pair));
    CHECK(exact.partial_correlation(0, 1, {}) == doctest::Approx(0.5).epsilon(1e-12));
    const CiTestResult re = exact.test(0, 1, {});
    CHECK(re.statistic ==
          doctest::Approx(0.5 * std::log(3.0) * std::sqrt(97.0)).epsilon(1e-12));
}

TEST_CASE("endpoint swap is bit-identical") {
    const Dataset d = linear_data(6, 0.5, 300, 9);
    const FisherZTest fisher(d);
    const std::vector<int> cond{1, 4};
    const CiTestResult ab = fisher.test(0, 5, cond);
    const CiTestResult ba = fisher.test(5, 0, cond);
    CHECK(ab.statistic == ba.statistic);
    CHECK(ab.p_value == ba.p_value);
}

TEST_CASE("degenerate data is rejected") {
    Eigen::MatrixXd flat(10, 2);
    flat.col(0).setConstant(3.0);
    for (int i = 0; i < 10; ++i) flat(i, 1) = i;
    CHECK_THROWS_AS(FisherZTest(Dataset({"a", "b"}, flat)), DegenerateDataError);

    const Dataset small = linear_data(4, 0.5, 5, 1);
    const FisherZTest fisher(small);
    // n = 5, |s| = 2: n <= |s| + 3.
    CHECK_THROWS_AS(fisher.test(0, 1, {2, 3}), DegenerateDataError);
    CHECK_NOTHROW(fisher.test(0, 1, {2}));
}

TEST_CASE("query validation") {
    const Dataset d = linear_data(4, 0.5, 50, 2);
    const FisherZTest fisher(d);
    CHECK_THROWS_AS(fisher.test(0, 0, {}), StructuralError);
    CHECK_THROWS_AS(fisher.test(0, 9, {}), StructuralError);
    CHECK_THROWS_AS(fisher.test(0, 1, {1}), StructuralError);   // endpoint in cond
    CHECK_THROWS_AS(fisher.test(0, 1, {3, 2}), StructuralError);  // unsorted
    CHECK_THROWS_AS(fisher.test(0, 1, {2, 2}), StructuralError);  // duplicate
}

TEST_CASE("d-separation oracle mirrors the graph") {
    const CausalGraph g = random_dag(6, 0.4, 11);
    const DSepOracle oracle(g);
    CHECK(oracle.variable_names().size() == 6);
    for (int x = 0; x < 6; ++x) {
        for (int y = x + 1; y < 6; ++y) {
            for (int mask = 0; mask < (1 << 6); ++mask) {
                if ((mask >> x) & 1 || (mask >> y) & 1) continue;
                std::vector<int> cond;
                for (int v = 0; v < 6; ++v) {
                    if ((mask >> v) & 1) cond.push_back(v);
                }
                const CiTestResult r = oracle.test(x, y, cond);
                const bool sep = d_separated(g, x, y, std::set<int>(cond.begin(), cond.end()));
                CHECK(r.p_value == (sep ? 1.0 : 0.0));
                CHECK(r.statistic == r.p_value);
            }
        }
    }

    CausalGraph cyc("c", {{"a", ""}, {"b", ""}, {"c", ""}});
    cyc.add_directed(0, 1);
    cyc.add_directed(1, 2);
    cyc.add_directed(2, 0);
    CHECK_THROWS_AS(DSepOracle{cyc}, StructuralError);
}

TEST_CASE("p-values are uniform under the null") {
    // Marginal null: two independent normals. Conditional null: X <- Z -> Y
    // tested given Z. 200 replicates each; KS against Uniform(0, 1) at the
    // 0.01 level.
    std::vector<double> marginal, conditional;
    for (std::uint64_t rep = 0; rep < 200; ++rep) {
        const int n = 200;
        Rng rng(stream_seed(2024, rep, 5));
        Eigen::MatrixXd X(n, 3);
        for (int i = 0; i < n; ++i) {
            const double z = rng.normal();
            X(i, 2) = z;
            X(i, 0) = 0.8 * z + rng.normal();
            X(i, 1) = -0.6 * z + rng.normal();
        }
        const FisherZTest fisher(Dataset({"x", "y", "z"}, X));
        conditional.push_back(fisher.test(0, 1, {2}).p_value);

        Eigen::MatrixXd M(n, 2);
        for (int i = 0; i < n; ++i) {
            M(i, 0) = rng.normal();
            M(i, 1) = rng.normal();
        }
        marginal.push_back(FisherZTest(Dataset({"x", "y"}, M)).test(0, 1, {}).p_value);
    }
    const double crit = testutil::ks_critical(0.01, 200);
    CHECK(testutil::ks_statistic(marginal) < crit);
    CHECK(testutil::ks_statistic(conditional) < crit);
}
