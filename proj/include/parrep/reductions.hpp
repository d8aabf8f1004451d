// Copyright 2026 The parrep-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Label cover to set cover: amplification parameters, partition-system
// gadgets, the instance builder and small exact/greedy solvers.

#ifndef PARREP_REDUCTIONS_HPP_
#define PARREP_REDUCTIONS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "parrep/game.hpp"

namespace parrep {

struct AmplificationPlan {
  double epsilon = 0.0;
  double alpha = 0.0;
  double c = 0.0;
  int k = 0;                  // ceil(3c / alpha)
  double epsilon1 = 0.0;      // (3c/alpha * epsilon^alpha)^(1/c)
  double log_alphabet = 0.0;  // ln of the alphabet bound exp(k / eps1^c)
  double log_soundness = 0.0; // (k/2) ln(4 eps1)
  double log_epsilon = 0.0;
  bool soundness_ok = false;  // log_soundness <= log_epsilon
  // Largest epsilon for which the soundness inequality holds at this k.
  double epsilon_threshold = 0.0;
};

// Throws DomainError unless alpha > 0, c > 0 and 0 < epsilon < 1.
AmplificationPlan amplification_plan(double epsilon, double alpha, double c);

// L partitions of [m] into k parts each. partitions[i][e] is the part of
// element e in partition i.
struct PartitionSystem {
  int m = 0;
  int L = 0;
  int k = 0;
  std::vector<std::vector<int>> partitions;
  // Smallest number of parts from pairwise different partitions that cover
  // [m]; dmax + 1 stands for "more than dmax".
  int d = 0;
  bool verified = false;
};

inline constexpr int kMaxPartitionSets = 20;  // L * k
inline constexpr int kMaxCoverDepth = 8;
inline constexpr int kMaxGroundBits = 64;     // m

// Exhaustive search by increasing cardinality. `set_order` permutes the
// L * k parts (part j of partition i is index i * k + j); the answer does not
// depend on it. Throws CapExceeded beyond the caps above, DomainError on a
// malformed system.
int verify_partition_system(const PartitionSystem& ps, int dmax,
                            std::span<const int> set_order = {});

// Random k-colorings from Rng(seed + r), r = 0..retries-1, until the
// verified d reaches target_d. Throws ContractViolation reporting the best d
// when the target is never met.
PartitionSystem build_partition_system(int m, int L, int k, std::uint64_t seed,
                                       int target_d, int retries = 64,
                                       int dmax = kMaxCoverDepth);

struct SetCoverInstance {
  int ground_size = 0;
  // Sorted element lists; set index v * |Sigma| + beta.
  std::vector<std::vector<int>> sets;
  std::vector<std::pair<int, int>> labels;  // (v, beta) per set
  int alice_count = 0;
  int bob_count = 0;
  int m = 0;
};

// Ground element (u, e) has index u * m + e. The j-th edge of u in input
// order contributes part j of partition pi_uv(beta) to S_{v,beta}. Throws
// ContractViolation unless every Alice degree equals ps.k and |Sigma| <= ps.L.
SetCoverInstance build_setcover(const ProjectionGame& game,
                                const PartitionSystem& ps);

// Set indices picked for an assignment: {v * |Sigma| + f(v)}.
std::vector<int> assignment_cover(const SetCoverInstance& inst,
                                  const BobAssignment& f);

bool is_cover(const SetCoverInstance& inst, std::span<const int> chosen);

inline constexpr int kGreedyGroundCap = 5000;
inline constexpr long long kDefaultNodeCap = 10'000'000;

// Largest-new-coverage greedy, smallest index on ties. nullopt when the
// sets do not cover the ground set. Throws CapExceeded above
// kGreedyGroundCap elements.
std::optional<std::vector<int>> greedy_setcover(const SetCoverInstance& inst);

// Minimum cover of size at most size_cap (nullopt if none), by branch and
// bound on the rarest uncovered element. Throws CapExceeded when the search
// visits more than node_cap nodes.
std::optional<std::vector<int>> exact_setcover(
    const SetCoverInstance& inst, int size_cap,
    long long node_cap = kDefaultNodeCap);

// Fraction of Alice questions whose incident projected answers
// pi_uv(f(v)) are all defined and pairwise distinct. Throws
// ContractViolation on irregular Alice degrees.
double agreement_soundness(const ProjectionGame& game, const BobAssignment& f);

}  // namespace parrep

#endif  // PARREP_REDUCTIONS_HPP_
