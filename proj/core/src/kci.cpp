#include "causalkit/kci.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/gamma.hpp>

#include "causalkit/errors.hpp"
#include "causalkit/rng.hpp"

namespace causal {

namespace {

// Median pairwise Euclidean distance over at most opts.bandwidth_rows rows.
double median_bandwidth(const Eigen::MatrixXd& block, const KciOptions& opts) {
    int n = static_cast<int>(block.rows());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    if (n > opts.bandwidth_rows) {
        // Seeded partial Fisher-Yates; prefix holds the sample.
        Rng rng(stream_seed(opts.seed, 0, kStreamSubsample));
        for (int i = 0; i < opts.bandwidth_rows; ++i) {
            int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(opts.bandwidth_rows);
        std::sort(idx.begin(), idx.end());
    }
    std::vector<double> dists;
    dists.reserve(idx.size() * (idx.size() - 1) / 2);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j)
            dists.push_back((block.row(idx[i]) - block.row(idx[j])).norm());
    if (dists.empty()) return 1.0;
    std::sort(dists.begin(), dists.end());
    std::size_t m = dists.size();
    double med = (m % 2) ? dists[m / 2] : 0.5 * (dists[m / 2 - 1] + dists[m / 2]);
    return med > 0.0 ? med : 1.0;
}

Eigen::MatrixXd centered_rbf_gram(const Eigen::MatrixXd& block, double sigma) {
    int n = static_cast<int>(block.rows());
    Eigen::VectorXd sq = block.rowwise().squaredNorm();
    Eigen::MatrixXd K = -2.0 * (block * block.transpose());
    K.colwise() += sq;
    K.rowwise() += sq.transpose();
    K = (-K / (2.0 * sigma * sigma)).array().exp();
    Eigen::VectorXd rm = K.rowwise().mean();
    double tm = rm.mean();
    K.colwise() -= rm;
    K.rowwise() -= rm.transpose();
    K.array() += tm;
    return K;
}

double trace_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return a.cwiseProduct(b).sum();  // both symmetric
}

}  // namespace

KciTest::KciTest(const Dataset& d, KciOptions opts) : names_(d.columns()), opts_(opts) {
    int n = d.n_rows();
    if (n < 4) throw DegenerateDataError("KCI needs at least 4 rows");
    int m = std::min(n, opts_.max_rows);
    rows_.resize(m, d.n_cols());
    // Evenly spaced row subsample; position of row i is floor(i * n / m).
    for (int i = 0; i < m; ++i)
        rows_.row(i) = d.values().row(static_cast<int>(std::int64_t(i) * n / m));
}

CiTestResult KciTest::test(int x, int y, const std::vector<int>& cond) const {
    int n = static_cast<int>(rows_.rows());
    {
        // Reuse the shared query validation by round-tripping through names.
        int p = static_cast<int>(names_.size());
        auto check = [&](int v) {
            if (v < 0 || v >= p)
                throw StructuralError("variable index " + std::to_string(v) + " out of range");
        };
        check(x);
        check(y);
        if (x == y) throw StructuralError("independence test needs two distinct variables");
        int prev = -1;
        for (int v : cond) {
            check(v);
            if (v == x || v == y)
                throw StructuralError("conditioning set contains an endpoint: " + names_[v]);
            if (v <= prev)
                throw StructuralError("conditioning set must be sorted and duplicate-free");
            prev = v;
        }
    }

    auto block = [&](const std::vector<int>& cols) {
        Eigen::MatrixXd b(n, cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) b.col(c) = rows_.col(cols[c]);
        return b;
    };

    Eigen::MatrixXd bx = block({x}), by = block({y});
    Eigen::MatrixXd Kx = centered_rbf_gram(bx, median_bandwidth(bx, opts_));
    Eigen::MatrixXd Ky = centered_rbf_gram(by, median_bandwidth(by, opts_));
    if (Kx.diagonal().sum() <= 1e-12)
        throw DegenerateDataError("column '" + names_[x] + "' is constant");
    if (Ky.diagonal().sum() <= 1e-12)
        throw DegenerateDataError("column '" + names_[y] + "' is constant");

    if (!cond.empty()) {
        Eigen::MatrixXd bz = block(cond);
        Eigen::MatrixXd Kz = centered_rbf_gram(bz, median_bandwidth(bz, opts_));
        Kz.diagonal().array() += opts_.ridge;
        Eigen::MatrixXd R =
            opts_.ridge * Kz.ldlt().solve(Eigen::MatrixXd::Identity(n, n));
        Kx = R * Kx * R;
        Ky = R * Ky * R;
    }

    double stat = trace_product(Kx, Ky);
    double mean = Kx.diagonal().sum() * Ky.diagonal().sum() / n;
    double var = 2.0 * Kx.squaredNorm() * Ky.squaredNorm() / (double(n) * n);
    double p;
    if (!(mean > 0.0) || !(var > 0.0)) {
        p = 1.0;  // residualization wiped a block; nothing left to test
    } else {
        boost::math::gamma_distribution<double> null(mean * mean / var, var / mean);
        p = boost::math::cdf(boost::math::complement(null, std::max(stat, 0.0)));
    }

    std::vector<std::string> cn;
    cn.reserve(cond.size());
    for (int v : cond) cn.push_back(names_[v]);
    return {CiKind::kci, names_[x], names_[y], std::move(cn), stat, p};
}

}  // namespace causal
