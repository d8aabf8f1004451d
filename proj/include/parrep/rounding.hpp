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

// Turning a vector assignment into a single Bob assignment.
//
// The pipeline has three stages:
//
//   1. derandomize: every slice becomes deterministic (one label per Bob
//      question) without changing any ||(T_v x Id) f|| and without lowering
//      ||(G x Id) f||^2.
//   2. threshold_round: each slice h is replaced by the family of 0/1 partial
//      assignments h_tau = [h^2 > tau]. The family is piecewise constant in
//      tau, so it is stored exactly as a finite list of intervals.
//   3. correlated sampling: slices are drawn i.i.d. and every Bob question
//      takes the label of the first slice that labels it.

#ifndef PARREP_ROUNDING_HPP_
#define PARREP_ROUNDING_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "parrep/game.hpp"
#include "parrep/random.hpp"
#include "parrep/symmetrize.hpp"
#include "parrep/vector_assignment.hpp"

namespace parrep {

// Method of conditional expectations, slice by slice and vertex by vertex in
// index order; each vertex keeps its row sum and picks, among the labels in
// its support, the one with the largest conditional expectation of
// ||G f_omega||^2 (smallest label on ties). Throws ContractViolation if the
// post-conditions fail.
VectorAssignment derandomize(const ProjectionGame& game,
                             const VectorAssignment& f);

// Rescales so that every entry is at most 1 and max_v ||(T_v x Id) f|| = 1,
// moving scale into the measure. The certificate ratio is unchanged. Throws
// DomainError for f = 0.
VectorAssignment normalize_for_rounding(const VectorAssignment& f);

// One interval [lo, hi) of thresholds for one point omega. `weight` is the
// length of the interval relative to the threshold range, so the weights of
// one omega sum to one; `slice` is the output column holding h_tau.
struct ThresholdInterval {
  double lo = 0.0;
  double hi = 0.0;
  double weight = 0.0;
  Eigen::Index slice = 0;
};

struct BreakpointMeasure {
  double tau_lo = 0.0;
  double tau_hi = 1.0;
  std::vector<std::vector<ThresholdInterval>> intervals;  // per omega
};

struct ThresholdRounding {
  VectorAssignment rounded;  // 0/1 over Omega' = Omega x intervals
  BreakpointMeasure measure;
};

// Requires a deterministic f with entries in [0, 1] and
// max_v ||(T_v x Id) f|| = 1 (ContractViolation otherwise).
ThresholdRounding threshold_round(const VectorAssignment& f);

// Shared randomness for combining 0/1 partial assignments. The slice list is
// padded so that every Bob question has the same total labeled mass; the
// padding slice of v labels only v, with its heaviest label in the input
// (smallest label on ties, label 0 when v is never labeled).
class CorrelatedSampler {
 public:
  struct Slice {
    double probability = 0.0;
    // Label per Bob question, kRejected when unlabeled.
    std::vector<int> labels;
    bool padding = false;
  };

  // Throws ContractViolation unless f is 0/1-valued with deterministic
  // slices.
  explicit CorrelatedSampler(const VectorAssignment& f);

  BobAssignment sample(Rng& rng) const;

  const std::vector<Slice>& slices() const { return slices_; }
  int bob_count() const { return bob_count_; }
  // Bob questions not labeled by any slice of the input.
  const std::vector<int>& zero_support() const { return zero_support_; }
  // Common ||(T_v x Id) f'||^2 after padding, before rescaling to a
  // probability measure.
  double padded_norm_sq() const { return padded_norm_sq_; }

 private:
  int bob_count_ = 0;
  std::vector<Slice> slices_;
  std::vector<double> cumulative_;
  std::vector<int> zero_support_;
  double padded_norm_sq_ = 0.0;
};

BobAssignment correlated_sampling(const VectorAssignment& f,
                                  std::uint64_t seed);

// Exact E_X sum_{(v,v',tau)} mu_sym [(X_v, X_v') in tau] for the sampler's
// first-hit process.
double expected_sym_value(const SymmetrizedGame& sg,
                          const CorrelatedSampler& sampler);

// The weaker bound that only credits pairs labeled by the same first slice:
// sum over symmetrized constraints of E[Z min{A,B}] / E[max{A,B}].
double first_hit_agreement_bound(const SymmetrizedGame& sg,
                                 const CorrelatedSampler& sampler);

struct ExtractOptions {
  std::uint64_t seed = 0;
  int trials = 10000;
};

struct ExtractionReport {
  double input_ratio = 0.0;      // certificate ratio of the input
  double rho = 0.0;              // ||(G x Id) f||^2 after normalization
  double psi_rho = 0.0;
  double rounded_norm_sq = 0.0;  // 1 - gamma
  double gamma = 0.0;
  double sampling_bound = 0.0;   // (1 - gamma) / (1 + gamma)
  double approximation_bound = 0.0;  // in terms of the input ratio
  double agreement_bound = 0.0;  // first_hit_agreement_bound
  double expected_value = 0.0;   // expected_sym_value
  int trials = 0;
  double mean_value = 0.0;       // mean sym value over the trials
  double stddev = 0.0;
  BobAssignment best;
  double best_sym_value = 0.0;
  double best_value = 0.0;       // val(G; best) with Alice best response
  int zero_support = 0;
  bool psi_ok = false;
  bool chain_ok = false;     // expected >= agreement >= sampling bound
  bool sampling_ok = false;  // mean >= sampling bound - 3 sigma / sqrt(N)
  bool ok() const { return psi_ok && chain_ok && sampling_ok; }
};

ExtractionReport extract_assignment(const ProjectionGame& game,
                                    const VectorAssignment& f,
                                    const ExtractOptions& options = {});

// Jointly distributed (A, B, Z) with probability `weight`.
struct JointSample {
  double a = 0.0;
  double b = 0.0;
  int z = 1;
  double weight = 0.0;
};

struct InequalityCheck {
  double parameter = 0.0;  // rho, or 1 - gamma for min-vs-max
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// E min{A,B} >= psi(rho) E (A+B)/2 where E sqrt(AB) = rho E (A+B)/2.
InequalityCheck check_gm_vs_min(std::span<const JointSample> samples);
// E Z min{A,B} >= psi(rho) E (A+B)/2 where E Z sqrt(AB) = rho E (A+B)/2.
InequalityCheck check_cor_gm_vs_min(std::span<const JointSample> samples);
// E Z min{A,B} / E max{A,B} >= (1-g)/(1+g) where
// E Z min{A,B} = (1-g) E (A+B)/2.
InequalityCheck check_min_vs_max(std::span<const JointSample> samples);

struct HybridSliceStats {
  double eta = 0.0;     // ||h||^2 - <h, G_sym h>
  double gamma = 0.0;   // ||h||_1 - ||h||^2
  double b_norm_sq = 0.0;
  bool b_bound_ok = false;  // ||B||^2 <= 100 gamma
};

struct HybridRounding {
  VectorAssignment rounded;
  BreakpointMeasure measure;
  std::vector<HybridSliceStats> slices;  // per input omega
  // E_tau f'(v, beta, omega)^2 per entry of the input table.
  Eigen::MatrixXd expected_sq;
  bool expectation_bounds_ok = false;
  bool ok() const;
};

// Thresholds uniform on [1/10, 9/10], against the square game `sg`.
// Requires a [0, 1]-valued f with deterministic slices.
HybridRounding hybrid_threshold_round(const VectorAssignment& f,
                                      const SymmetrizedGame& sg);

struct TwoGamesOptions {
  std::uint64_t seed = 0;
  int trials = 200;
  double cap = 1e7;
};

struct TwoGamesReport {
  double collision_g = 0.0;
  double collision_h = 0.0;
  double collision_gh = 0.0;
  double gamma = 0.0;  // 1 - ||H||^2
  double eta = 0.0;    // ||H||^2 - ||G (x) H||^2
  double rate = 0.0;   // eta + sqrt(gamma eta), reported only
  double lift_norm_sq = 0.0;  // ||(G x Id)(Id x H) f||^2
  bool lift_ok = false;       // equals ||(G (x) H) f||^2
  bool hybrid_ok = false;
  double mean_extracted = 0.0;
  double best_extracted = 0.0;
  BobAssignment best;
  double max_sym_mismatch = 0.0;
  bool sym_ok = false;  // sym value == collision value of every sample
  bool ok() const { return lift_ok && hybrid_ok && sym_ok; }
};

TwoGamesReport two_games_experiment(const ProjectionGame& g,
                                    const ProjectionGame& h,
                                    const TwoGamesOptions& options = {});

}  // namespace parrep

#endif  // PARREP_ROUNDING_HPP_
