#ifndef CAUSALKIT_SCM_HPP
#define CAUSALKIT_SCM_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "causalkit/dataset.hpp"
#include "causalkit/graph.hpp"

namespace causal {

// Parameter distribution for mechanism coefficients and MLP weights.
struct DistSpec {
    enum class Kind { uniform, normal, xavier_normal };
    Kind kind = Kind::uniform;
    double a = 0.0;  // uniform lower bound / normal mean
    double b = 1.0;  // uniform upper bound / normal stddev

    static DistSpec uniform(double lo, double hi) { return {Kind::uniform, lo, hi}; }
    static DistSpec normal(double mean, double stddev) { return {Kind::normal, mean, stddev}; }
    // Zero-mean normal with stddev sqrt(2 / (fan_in + fan_out)).
    static DistSpec xavier() { return {Kind::xavier_normal, 0.0, 0.0}; }
};

struct NoiseSpec {
    enum class Kind { gaussian, uniform };
    Kind kind = Kind::gaussian;
    double a = 0.0;  // gaussian mean / uniform lower bound
    double b = 1.0;  // gaussian stddev / uniform upper bound

    static NoiseSpec gaussian(double mean, double stddev) { return {Kind::gaussian, mean, stddev}; }
    static NoiseSpec uniform(double lo, double hi) { return {Kind::uniform, lo, hi}; }
};

struct MechanismSpec {
    enum class Kind { linear, mlp };
    enum class Activation { relu };

    Kind kind = Kind::linear;
    // linear: one coefficient per parent.
    DistSpec coef = DistSpec::uniform(0.0, 2.0);
    // mlp: depth counts weight matrices. The default 3 means two hidden
    // ReLU layers of `width` units and a linear scalar output, i.e. shapes
    // (|Pa| x width), (width x width), (width x 1). Hidden biases are zero
    // and the output has no bias. depth >= 2.
    int depth = 3;
    int width = 4;
    Activation activation = Activation::relu;
    DistSpec init = DistSpec::uniform(0.0, 1.0);

    static MechanismSpec linear(DistSpec coef = DistSpec::uniform(0.0, 2.0));
    static MechanismSpec mlp(int depth = 3, int width = 4,
                             DistSpec init = DistSpec::uniform(0.0, 1.0));
};

struct ScmSpec {
    CausalGraph graph;  // must be a DAG
    MechanismSpec mechanism;
    NoiseSpec noise = NoiseSpec::gaussian(0.0, 1.0);
    std::uint64_t seed = 0;  // drives parameter materialization
};

// An SCM with materialized parameters. Every node's parameters come from
// its own stream, seeded by (spec seed, node index, params tag), so adding
// or removing nodes elsewhere never shifts another node's draws.
class Scm {
public:
    struct NodeParams {
        // linear: a single (|Pa| x 1) matrix. mlp: depth matrices.
        std::vector<Eigen::MatrixXd> layers;
    };

    const ScmSpec& spec() const { return spec_; }
    const CausalGraph& graph() const { return spec_.graph; }
    const NodeParams& params(int node) const { return params_[node]; }
    const std::vector<int>& topo_order() const { return topo_; }

    // Mechanism value f_i(pa) for one row, excluding noise.
    double mechanism_value(int node, const Eigen::VectorXd& parent_values) const;

private:
    friend Scm build_scm(ScmSpec spec);
    ScmSpec spec_;
    std::vector<NodeParams> params_;
    std::vector<int> topo_;
};

Scm build_scm(ScmSpec spec);

// n rows in graph node order. Root nodes are pure standard-normal draws
// whatever the noise spec says; every other node is mechanism plus noise.
// Each (node, row) noise value comes from the stream seeded by
// (sample_seed, node, row), so the output is byte-identical for any jobs
// count.
Dataset sample(const Scm& scm, int n, std::uint64_t sample_seed, int jobs = 1);

// Erdos-Renyi DAG: a seeded node permutation fixes a topological order and
// each forward pair becomes an edge with probability edge_prob. Nodes are
// named X1..Xn.
CausalGraph random_dag(int n_nodes, double edge_prob, std::uint64_t seed);

}  // namespace causal

#endif
