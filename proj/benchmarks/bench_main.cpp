#include <benchmark/benchmark.h>

#include "causalkit/ci.hpp"
#include "causalkit/graph_algorithms.hpp"
#include "causalkit/kci.hpp"
#include "causalkit/pc.hpp"
#include "causalkit/scm.hpp"

namespace {

using namespace causal;

Dataset make_data(int nodes, double edge_prob, int n, std::uint64_t seed) {
    ScmSpec spec;
    spec.graph = random_dag(nodes, edge_prob, seed);
    spec.mechanism = MechanismSpec::linear();
    spec.seed = seed;
    return sample(build_scm(spec), n, seed);
}

void BM_FisherZ(benchmark::State& state) {
    const auto data = make_data(8, 0.3, static_cast<int>(state.range(0)), 1);
    const FisherZTest test(data);
    const std::vector<int> cond{2, 3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(test.test(0, 1, cond));
    }
}
BENCHMARK(BM_FisherZ)->Arg(1000)->Arg(10000);

void BM_Kci(benchmark::State& state) {
    const auto data = make_data(4, 0.4, static_cast<int>(state.range(0)), 2);
    const KciTest test(data);
    const std::vector<int> cond{2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(test.test(0, 1, cond));
    }
}
BENCHMARK(BM_Kci)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_DSeparated(benchmark::State& state) {
    const CausalGraph g = random_dag(static_cast<int>(state.range(0)), 0.2, 3);
    const std::set<int> cond{1, 2, 3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(d_separated(g, 0, g.node_count() - 1, cond));
    }
}
BENCHMARK(BM_DSeparated)->Arg(20)->Arg(100);

void BM_PcOracle(benchmark::State& state) {
    const CausalGraph truth = random_dag(static_cast<int>(state.range(0)), 0.3, 4);
    const DSepOracle oracle(truth);
    const PcConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(discover(oracle, cfg));
    }
}
BENCHMARK(BM_PcOracle)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Sample(benchmark::State& state) {
    ScmSpec spec;
    spec.graph = random_dag(10, 0.3, 5);
    spec.mechanism = MechanismSpec::mlp();
    spec.seed = 5;
    const Scm scm = build_scm(spec);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample(scm, static_cast<int>(state.range(0)), 5));
    }
}
BENCHMARK(BM_Sample)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) {
        return 1;
    }
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
