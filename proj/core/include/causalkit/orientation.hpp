#ifndef CAUSALKIT_ORIENTATION_HPP
#define CAUSALKIT_ORIENTATION_HPP

#include "causalkit/graph.hpp"

namespace causal {

// Meek rules R1-R4, applied to a fixpoint. Each pass scans undirected pairs
// in ascending (a, b) order and tries to orient a -> b, then b -> a; the
// first rule that fires wins and the scan restarts. Orientations are sound
// for any graph whose directed edges are compelled (v-structures or
// background knowledge), and the fixpoint is deterministic.
//
//   R1: c -> a, a -- b, c and b non-adjacent        =>  a -> b
//   R2: a -> c -> b with a -- b                     =>  a -> b
//   R3: a -- c -> b, a -- d -> b, a -- b,
//       c and d non-adjacent                        =>  a -> b
//   R4: a ~ d -> c -> b, a -- b, d and b
//       non-adjacent (a ~ d: any adjacency)         =>  a -> b
//
// Returns the number of edges oriented.
int meek_closure(CausalGraph& g);

}  // namespace causal

#endif
