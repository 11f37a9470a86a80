#ifndef CAUSALKIT_KCI_HPP
#define CAUSALKIT_KCI_HPP

#include <cstdint>

#include "causalkit/ci.hpp"

namespace causal {

struct KciOptions {
    // Rows above this are reduced to an evenly spaced subsample before any
    // Gram matrix is built; the statistic is cubic in the row count.
    int max_rows = 1200;
    // Median-heuristic bandwidth uses at most this many rows, drawn without
    // replacement from the seeded stream when there are more.
    int bandwidth_rows = 1000;
    // Ridge inside the kernel-regression residualizer for conditional tests.
    double ridge = 1e-3;
    std::uint64_t seed = 0;
};

// Kernel conditional-independence test. Gaussian RBF kernels with
// median-distance bandwidth per variable block; the statistic is the trace
// of the product of the centered (and, conditionally, residualized) Gram
// matrices of x and y. The null is approximated by a gamma distribution
// matched to the statistic's first two estimated moments:
//   mean = tr(Kx) tr(Ky) / n,  var = 2 tr(Kx^2) tr(Ky^2) / n^2.
// Conditioning residualizes both Gram matrices with R = e (Kz + e I)^-1,
// the smoother complement of a kernel ridge regression on s.
class KciTest : public CiTest {
public:
    KciTest(const Dataset& d, KciOptions opts = {});
    const std::vector<std::string>& variable_names() const override { return names_; }
    CiTestResult test(int x, int y, const std::vector<int>& cond) const override;

private:
    std::vector<std::string> names_;
    Eigen::MatrixXd rows_;  // after the deterministic subsample
    KciOptions opts_;
};

}  // namespace causal

#endif
