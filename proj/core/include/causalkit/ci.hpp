#ifndef CAUSALKIT_CI_HPP
#define CAUSALKIT_CI_HPP

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "causalkit/dataset.hpp"
#include "causalkit/graph.hpp"

namespace causal {

enum class CiKind { fisher_z, kci, d_sep_oracle };

struct CiTestResult {
    CiKind kind;
    std::string x;
    std::string y;
    std::vector<std::string> cond;  // sorted by variable index
    double statistic;
    double p_value;  // in [0, 1]
};

// A conditional-independence decision procedure over a fixed variable set.
// Implementations are stateless after construction and safe to call from
// several threads at once.
class CiTest {
public:
    virtual ~CiTest() = default;
    virtual const std::vector<std::string>& variable_names() const = 0;
    // cond must be sorted, duplicate-free, and exclude x and y.
    virtual CiTestResult test(int x, int y, const std::vector<int>& cond) const = 0;
};

// Partial correlation of x and y given s from the inverse of the correlation
// submatrix over {x, y} union s, Fisher z-transformed:
//   z = 0.5 * ln((1 + r) / (1 - r)) * sqrt(n - |s| - 3)
// with r clamped to [-1 + 1e-12, 1 - 1e-12] and a two-sided normal p-value.
// The submatrix is inverted exactly when it is numerically invertible; a
// ridge of 1e-10 on the diagonal is applied only when plain inversion fails,
// and a matrix still singular after the ridge is a NumericalError. Constant
// columns raise DegenerateDataError, and n <= |s| + 3 raises
// DegenerateDataError as well. Results are bit-identical under swapping x
// and y: the submatrix is always assembled in ascending column order.
class FisherZTest : public CiTest {
public:
    explicit FisherZTest(const Dataset& d);
    const std::vector<std::string>& variable_names() const override { return names_; }
    CiTestResult test(int x, int y, const std::vector<int>& cond) const override;

    double partial_correlation(int x, int y, const std::vector<int>& cond) const;

private:
    std::vector<std::string> names_;
    int n_rows_;
    Eigen::MatrixXd corr_;  // full correlation matrix, computed once
};

// Ground-truth oracle: p_value is 1 when the truth graph d-separates the
// pair, 0 otherwise. statistic mirrors p_value.
class DSepOracle : public CiTest {
public:
    explicit DSepOracle(CausalGraph truth);
    const std::vector<std::string>& variable_names() const override { return names_; }
    CiTestResult test(int x, int y, const std::vector<int>& cond) const override;
    const CausalGraph& truth() const { return truth_; }

private:
    CausalGraph truth_;
    std::vector<std::string> names_;
};

double normal_sf(double z);  // upper tail of the standard normal

}  // namespace causal

#endif
