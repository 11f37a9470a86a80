#include "causalkit/ci.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "causalkit/errors.hpp"
#include "causalkit/graph_algorithms.hpp"

namespace causal {

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

namespace {

void check_query(const std::vector<std::string>& names, int x, int y,
                 const std::vector<int>& cond) {
    int n = static_cast<int>(names.size());
    auto check = [&](int v) {
        if (v < 0 || v >= n)
            throw StructuralError("variable index " + std::to_string(v) + " out of range");
    };
    check(x);
    check(y);
    if (x == y) throw StructuralError("independence test needs two distinct variables");
    int prev = -1;
    for (int v : cond) {
        check(v);
        if (v == x || v == y)
            throw StructuralError("conditioning set contains an endpoint: " + names[v]);
        if (v <= prev)
            throw StructuralError("conditioning set must be sorted and duplicate-free");
        prev = v;
    }
}

std::vector<std::string> cond_names(const std::vector<std::string>& names,
                                    const std::vector<int>& cond) {
    std::vector<std::string> out;
    out.reserve(cond.size());
    for (int v : cond) out.push_back(names[v]);
    return out;
}

}  // namespace

FisherZTest::FisherZTest(const Dataset& d)
    : names_(d.columns()), n_rows_(d.n_rows()) {
    int p = d.n_cols();
    Eigen::MatrixXd centered = d.values().rowwise() - d.values().colwise().mean();
    Eigen::VectorXd sd(p);
    for (int c = 0; c < p; ++c) {
        sd(c) = std::sqrt(centered.col(c).squaredNorm() / (n_rows_ - 1));
        if (sd(c) == 0.0)
            throw DegenerateDataError("column '" + names_[c] + "' is constant");
    }
    corr_ = (centered.transpose() * centered) / (n_rows_ - 1);
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) corr_(a, b) /= sd(a) * sd(b);
}

double FisherZTest::partial_correlation(int x, int y, const std::vector<int>& cond) const {
    check_query(names_, x, y, cond);

    // Canonical variable order keeps the arithmetic, and therefore the
    // bits, identical under endpoint swaps.
    std::vector<int> vars{std::min(x, y), std::max(x, y)};
    vars.insert(vars.end(), cond.begin(), cond.end());
    int m = static_cast<int>(vars.size());
    Eigen::MatrixXd sub(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) sub(a, b) = corr_(vars[a], vars[b]);

    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    if (!lu.isInvertible()) {
        Eigen::MatrixXd ridged = sub + 1e-10 * Eigen::MatrixXd::Identity(m, m);
        lu.compute(ridged);
        if (!lu.isInvertible())
            throw NumericalError("correlation submatrix for (" + names_[x] + ", " + names_[y] +
                                 ") is singular even after ridge regularization");
    }
    Eigen::MatrixXd prec = lu.inverse();
    return -prec(0, 1) / std::sqrt(prec(0, 0) * prec(1, 1));
}

CiTestResult FisherZTest::test(int x, int y, const std::vector<int>& cond) const {
    int s = static_cast<int>(cond.size());
    if (n_rows_ <= s + 3)
        throw DegenerateDataError("Fisher z needs n > |s| + 3, have n = " +
                                  std::to_string(n_rows_) + ", |s| = " + std::to_string(s));
    double r = partial_correlation(x, y, cond);
    double bound = 1.0 - 1e-12;
    r = std::clamp(r, -bound, bound);
    double z = 0.5 * std::log((1.0 + r) / (1.0 - r)) * std::sqrt(double(n_rows_ - s - 3));
    double p = 2.0 * normal_sf(std::abs(z));
    return {CiKind::fisher_z, names_[x], names_[y], cond_names(names_, cond), z,
            std::min(p, 1.0)};
}

DSepOracle::DSepOracle(CausalGraph truth) : truth_(std::move(truth)) {
    if (!is_dag(truth_)) throw StructuralError("d-separation oracle needs a DAG");
    names_.reserve(truth_.node_count());
    for (const auto& n : truth_.nodes()) names_.push_back(n.name);
}

CiTestResult DSepOracle::test(int x, int y, const std::vector<int>& cond) const {
    check_query(names_, x, y, cond);
    bool sep = d_separated(truth_, x, y, std::set<int>(cond.begin(), cond.end()));
    double p = sep ? 1.0 : 0.0;
    return {CiKind::d_sep_oracle, names_[x], names_[y], cond_names(names_, cond), p, p};
}

}  // namespace causal
