#ifndef CAUSALKIT_BENCH_MATRIX_HPP
#define CAUSALKIT_BENCH_MATRIX_HPP

#include <string>

namespace causal {

// Output bundle of a benchmark grid: a long-form CSV (one row per method x
// dataset x seed), an aligned markdown summary table of seed-averaged
// precision / recall / F1, and a JSON provenance sidecar recording the config
// digest, the resolved settings, and the status of every cell.
struct BenchResult {
    std::string csv;
    std::string markdown;
    std::string provenance_json;
};

// Runs the grid described by a JSON config:
//
//   {
//     "alpha": 0.05,
//     "mode": "directed_strict",
//     "seeds": [0, 1, 2],
//     "samples": 1000,
//     "datasets": [
//       {"name": "chain", "graph": "graphs/chain.json",
//        "mechanism": "linear", "noise": {"kind": "gaussian", "mean": 0.0, "stddev": 1.0},
//        "samples": 500}
//     ],
//     "methods": [
//       {"name": "pc", "ci": "fisher"},
//       {"name": "oracle", "ci": "oracle"},
//       {"name": "pc+prior", "ci": "fisher", "priors": {"chain": "priors/chain.json"},
//        "forbid_non_required": false}
//     ]
//   }
//
// Per cell: data is sampled from the dataset's reference graph under the run
// seed ("oracle" cells skip sampling and consult the graph directly), the
// constraint search runs with the method's settings, and the result is scored
// against the reference under `mode`. A failing cell contributes an error row
// instead of aborting the grid. Relative paths resolve against the config
// file's directory.
BenchResult run_bench_matrix(const std::string& config_path);

}  // namespace causal

#endif
