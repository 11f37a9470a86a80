#include "causalkit/scm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "causalkit/errors.hpp"
#include "causalkit/graph_algorithms.hpp"
#include "causalkit/rng.hpp"

namespace causal {

MechanismSpec MechanismSpec::linear(DistSpec coef) {
    MechanismSpec m;
    m.kind = Kind::linear;
    m.coef = coef;
    return m;
}

MechanismSpec MechanismSpec::mlp(int depth, int width, DistSpec init) {
    MechanismSpec m;
    m.kind = Kind::mlp;
    m.depth = depth;
    m.width = width;
    m.init = init;
    return m;
}

namespace {

double draw_param(const DistSpec& d, Rng& rng, int fan_in, int fan_out) {
    switch (d.kind) {
        case DistSpec::Kind::uniform:
            return rng.uniform(d.a, d.b);
        case DistSpec::Kind::normal:
            return rng.normal(d.a, d.b);
        case DistSpec::Kind::xavier_normal:
            return rng.normal(0.0, std::sqrt(2.0 / (fan_in + fan_out)));
    }
    return 0.0;
}

Eigen::MatrixXd draw_matrix(const DistSpec& d, Rng& rng, int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = draw_param(d, rng, rows, cols);
    return m;
}

}  // namespace

Scm build_scm(ScmSpec spec) {
    if (!is_dag(spec.graph)) throw StructuralError("SCM graph must be a DAG");
    if (spec.mechanism.kind == MechanismSpec::Kind::mlp && spec.mechanism.depth < 2)
        throw StructuralError("mlp mechanism needs depth >= 2");
    if (spec.mechanism.kind == MechanismSpec::Kind::mlp && spec.mechanism.width < 1)
        throw StructuralError("mlp mechanism needs width >= 1");
    if (spec.noise.kind == NoiseSpec::Kind::gaussian && spec.noise.b < 0)
        throw StructuralError("gaussian noise stddev must be non-negative");
    if (spec.noise.kind == NoiseSpec::Kind::uniform && spec.noise.b < spec.noise.a)
        throw StructuralError("uniform noise needs lo <= hi");

    Scm scm;
    scm.topo_ = topological_order(spec.graph);
    scm.params_.resize(spec.graph.node_count());
    for (int v = 0; v < spec.graph.node_count(); ++v) {
        int np = static_cast<int>(spec.graph.parents(v).size());
        if (np == 0) continue;  // roots have no mechanism
        Rng rng(stream_seed(spec.seed, static_cast<std::uint64_t>(v), kStreamParams));
        auto& layers = scm.params_[v].layers;
        if (spec.mechanism.kind == MechanismSpec::Kind::linear) {
            layers.push_back(draw_matrix(spec.mechanism.coef, rng, np, 1));
        } else {
            int w = spec.mechanism.width;
            for (int l = 0; l < spec.mechanism.depth; ++l) {
                int in = (l == 0) ? np : w;
                int out = (l == spec.mechanism.depth - 1) ? 1 : w;
                layers.push_back(draw_matrix(spec.mechanism.init, rng, in, out));
            }
        }
    }
    scm.spec_ = std::move(spec);
    return scm;
}

double Scm::mechanism_value(int node, const Eigen::VectorXd& parent_values) const {
    const auto& layers = params_[node].layers;
    if (layers.empty()) return 0.0;
    if (spec_.mechanism.kind == MechanismSpec::Kind::linear)
        return layers[0].col(0).dot(parent_values);
    Eigen::RowVectorXd h = parent_values.transpose();
    for (std::size_t l = 0; l < layers.size(); ++l) {
        h = h * layers[l];
        if (l + 1 < layers.size()) h = h.cwiseMax(0.0);  // ReLU on hidden layers only
    }
    return h(0);
}

Dataset sample(const Scm& scm, int n, std::uint64_t sample_seed, int jobs) {
    if (n < 2) throw DegenerateDataError("sample needs n >= 2 rows");
    const CausalGraph& g = scm.graph();
    int p = g.node_count();
    Eigen::MatrixXd values(n, p);

    std::vector<std::vector<int>> parent_idx(p);
    for (int v = 0; v < p; ++v) parent_idx[v] = g.parents(v);
    const NoiseSpec& noise = scm.spec().noise;

    auto fill_rows = [&](int row_begin, int row_end) {
        Eigen::VectorXd pa;
        for (int r = row_begin; r < row_end; ++r) {
            for (int v : scm.topo_order()) {
                Rng rng(stream_seed(sample_seed, static_cast<std::uint64_t>(v),
                                    static_cast<std::uint64_t>(r)));
                const auto& ps = parent_idx[v];
                if (ps.empty()) {
                    values(r, v) = rng.normal();
                    continue;
                }
                pa.resize(ps.size());
                for (std::size_t k = 0; k < ps.size(); ++k) pa(k) = values(r, ps[k]);
                double eps = (noise.kind == NoiseSpec::Kind::gaussian)
                                 ? rng.normal(noise.a, noise.b)
                                 : rng.uniform(noise.a, noise.b);
                values(r, v) = scm.mechanism_value(v, pa) + eps;
            }
        }
    };

    jobs = std::max(1, jobs);
    if (jobs == 1 || n < 256) {
        fill_rows(0, n);
    } else {
        std::vector<std::thread> workers;
        int chunk = (n + jobs - 1) / jobs;
        for (int t = 0; t < jobs; ++t) {
            int b = t * chunk, e = std::min(n, b + chunk);
            if (b >= e) break;
            workers.emplace_back(fill_rows, b, e);
        }
        for (auto& w : workers) w.join();
    }

    std::vector<std::string> cols;
    cols.reserve(p);
    for (const auto& node : g.nodes()) cols.push_back(node.name);
    return Dataset(std::move(cols), std::move(values));
}

CausalGraph random_dag(int n_nodes, double edge_prob, std::uint64_t seed) {
    if (n_nodes < 1) throw StructuralError("random_dag needs at least one node");
    if (edge_prob < 0.0 || edge_prob > 1.0)
        throw StructuralError("edge_prob must lie in [0, 1]");
    std::vector<Node> nodes;
    nodes.reserve(n_nodes);
    for (int i = 1; i <= n_nodes; ++i) nodes.push_back({"X" + std::to_string(i), ""});
    CausalGraph g("random_dag", std::move(nodes));

    Rng rng(stream_seed(seed, 0, kStreamStructure));
    std::vector<int> perm(n_nodes);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n_nodes - 1; i > 0; --i) {
        int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i + 1)));
        std::swap(perm[i], perm[j]);
    }
    for (int i = 0; i < n_nodes; ++i)
        for (int j = i + 1; j < n_nodes; ++j)
            if (rng.uniform01() < edge_prob) g.add_directed(perm[i], perm[j]);
    return g;
}

}  // namespace causal
