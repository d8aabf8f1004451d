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

#include "parrep/rounding.hpp"

#include <algorithm>
#include <cmath>

#include "parrep/enumerate.hpp"
#include "parrep/errors.hpp"
#include "parrep/transfer.hpp"

namespace parrep {
namespace {

constexpr double kZeroOneTolerance = 1e-12;
constexpr double kHybridLo = 0.1;
constexpr double kHybridHi = 0.9;

Eigen::Index row_of(int v, int beta, int alphabet_size) {
  return Eigen::Index{v} * alphabet_size + beta;
}

// Squared values of the nonzero entries of one slice, sorted and distinct.
std::vector<double> squared_levels(const VectorAssignment& f,
                                   Eigen::Index omega) {
  std::vector<double> levels;
  for (Eigen::Index r = 0; r < f.values.rows(); ++r) {
    const double x = f.values(r, omega);
    if (x > 0.0) levels.push_back(x * x);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

// Column of [f^2 >= level] for one slice.
Eigen::VectorXd level_set(const VectorAssignment& f, Eigen::Index omega,
                          double level) {
  Eigen::VectorXd col = Eigen::VectorXd::Zero(f.values.rows());
  for (Eigen::Index r = 0; r < f.values.rows(); ++r) {
    const double x = f.values(r, omega);
    if (x > 0.0 && x * x >= level) col[r] = 1.0;
  }
  return col;
}

// Dense lookup of tau for one symmetrized constraint.
std::vector<char> tau_table(const SymTriple& t, int alphabet_size) {
  std::vector<char> table(static_cast<size_t>(alphabet_size) *
                              static_cast<size_t>(alphabet_size),
                          0);
  for (const auto& [b1, b2] : t.tau) {
    table[static_cast<size_t>(b1) * static_cast<size_t>(alphabet_size) +
          static_cast<size_t>(b2)] = 1;
  }
  return table;
}

bool in_tau(const std::vector<char>& table, int alphabet_size, int b1,
            int b2) {
  return table[static_cast<size_t>(b1) * static_cast<size_t>(alphabet_size) +
               static_cast<size_t>(b2)] != 0;
}

double sym_value_of_labels(const SymmetrizedGame& sg,
                           const std::vector<std::vector<char>>& tables,
                           const BobAssignment& x) {
  double total = 0.0;
  for (size_t i = 0; i < sg.triples.size(); ++i) {
    const SymTriple& t = sg.triples[i];
    if (in_tau(tables[i], sg.alphabet_size, x.labels[size_t(t.v1)],
               x.labels[size_t(t.v2)])) {
      total += t.weight;
    }
  }
  return total;
}

std::vector<std::vector<char>> all_tau_tables(const SymmetrizedGame& sg) {
  std::vector<std::vector<char>> tables;
  tables.reserve(sg.triples.size());
  for (const SymTriple& t : sg.triples) {
    tables.push_back(tau_table(t, sg.alphabet_size));
  }
  return tables;
}

void require_deterministic_unit(const VectorAssignment& f, const char* what) {
  validate(f);
  if (!is_deterministic(f)) {
    throw ContractViolation(std::string(what) + " needs deterministic slices");
  }
  if (f.values.maxCoeff() > 1.0 + kZeroOneTolerance) {
    throw ContractViolation(std::string(what) + " needs entries in [0, 1]");
  }
}

}  // namespace

VectorAssignment derandomize(const ProjectionGame& game,
                             const VectorAssignment& f) {
  validate(game, f);
  const int nv = f.bob_count;
  const int s = f.alphabet_size;
  const Eigen::MatrixXd kernel = collision_kernel(game);
  VectorAssignment out = f;
  for (Eigen::Index w = 0; w < f.omega_size(); ++w) {
    Eigen::VectorXd g = f.values.col(w);
    Eigen::VectorXd kg = kernel * g;
    for (int v = 0; v < nv; ++v) {
      const Eigen::Index base = row_of(v, 0, s);
      const double mass = g.segment(base, s).sum();
      if (mass <= 0.0) continue;
      int choice = kRejected;
      double best = 0.0;
      for (int b = 0; b < s; ++b) {
        if (g[base + b] <= 0.0) continue;
        // Contribution of v's row when it is fixed to mass * e_b, against the
        // other rows at their current (rounded or fractional) values.
        double cross = kg[base + b];
        for (int c = 0; c < s; ++c) cross -= kernel(base + b, base + c) * g[base + c];
        const double score =
            mass * mass * kernel(base + b, base + b) + 2.0 * mass * cross;
        if (choice == kRejected || score > best) {
          choice = b;
          best = score;
        }
      }
      for (int c = 0; c < s; ++c) {
        const double updated = c == choice ? mass : 0.0;
        const double delta = updated - g[base + c];
        if (delta != 0.0) {
          kg += kernel.col(base + c) * delta;
          g[base + c] = updated;
        }
      }
    }
    out.values.col(w) = g;
  }
  const Eigen::VectorXd before = vertex_norms_sq(f);
  const Eigen::VectorXd after = vertex_norms_sq(out);
  for (int v = 0; v < nv; ++v) {
    if (std::abs(before[v] - after[v]) > 1e-12 * std::max(1.0, before[v])) {
      throw ContractViolation("derandomize changed a T_v norm");
    }
  }
  if (game_norm_sq(game, out) < game_norm_sq(game, f) - 1e-9) {
    throw ContractViolation("derandomize lowered the collision norm");
  }
  return out;
}

VectorAssignment normalize_for_rounding(const VectorAssignment& f) {
  validate(f);
  VectorAssignment out = f;
  for (Eigen::Index w = 0; w < out.omega_size(); ++w) {
    const double m = out.values.col(w).maxCoeff();
    if (m > 0.0) {
      out.values.col(w) /= m;
      out.weights[w] *= m * m;
    }
  }
  const double top = vertex_norms_sq(out).maxCoeff();
  if (!(top > 0.0)) throw DomainError("cannot normalize the zero assignment");
  out.weights /= top;
  return out;
}

ThresholdRounding threshold_round(const VectorAssignment& f) {
  require_deterministic_unit(f, "threshold_round");
  const double top = vertex_norms_sq(f).maxCoeff();
  if (std::abs(top - 1.0) > 1e-9) {
    throw ContractViolation("threshold_round needs max_v ||T_v f|| = 1");
  }
  ThresholdRounding out;
  out.measure.tau_lo = 0.0;
  out.measure.tau_hi = 1.0;
  std::vector<Eigen::VectorXd> columns;
  std::vector<double> weights;
  for (Eigen::Index w = 0; w < f.omega_size(); ++w) {
    std::vector<ThresholdInterval> intervals;
    double lo = 0.0;
    for (double level : squared_levels(f, w)) {
      const double hi = std::min(level, 1.0);
      if (hi > lo) {
        intervals.push_back({lo, hi, hi - lo, Eigen::Index(columns.size())});
        columns.push_back(level_set(f, w, level));
        weights.push_back(f.weights[w] * (hi - lo));
        lo = hi;
      }
    }
    if (lo < 1.0) {
      intervals.push_back({lo, 1.0, 1.0 - lo, Eigen::Index(columns.size())});
      columns.push_back(Eigen::VectorXd::Zero(f.values.rows()));
      weights.push_back(f.weights[w] * (1.0 - lo));
    }
    out.measure.intervals.push_back(std::move(intervals));
  }
  Eigen::MatrixXd values(f.values.rows(), Eigen::Index(columns.size()));
  for (size_t i = 0; i < columns.size(); ++i) {
    values.col(Eigen::Index(i)) = columns[i];
  }
  out.rounded = VectorAssignment(
      f.bob_count, f.alphabet_size,
      Eigen::Map<const Eigen::VectorXd>(weights.data(),
                                        Eigen::Index(weights.size())),
      std::move(values));
  return out;
}

CorrelatedSampler::CorrelatedSampler(const VectorAssignment& f)
    : bob_count_(f.bob_count) {
  validate(f);
  const int s = f.alphabet_size;
  std::vector<double> mass(static_cast<size_t>(bob_count_), 0.0);
  Eigen::MatrixXd label_mass = Eigen::MatrixXd::Zero(bob_count_, s);
  for (Eigen::Index w = 0; w < f.omega_size(); ++w) {
    Slice slice;
    slice.labels.assign(static_cast<size_t>(bob_count_), kRejected);
    bool any = false;
    for (int v = 0; v < bob_count_; ++v) {
      for (int b = 0; b < s; ++b) {
        const double x = f.values(row_of(v, b, s), w);
        if (x == 0.0) continue;
        if (std::abs(x - 1.0) > kZeroOneTolerance) {
          throw ContractViolation("correlated sampling needs 0/1 values");
        }
        if (slice.labels[size_t(v)] != kRejected) {
          throw ContractViolation("correlated sampling needs deterministic slices");
        }
        slice.labels[size_t(v)] = b;
        mass[size_t(v)] += f.weights[w];
        label_mass(v, b) += f.weights[w];
        any = true;
      }
    }
    if (any) {
      slice.probability = f.weights[w];
      slices_.push_back(std::move(slice));
    }
  }
  double target = *std::max_element(mass.begin(), mass.end());
  if (!(target > 0.0)) target = 1.0;
  padded_norm_sq_ = target;
  for (int v = 0; v < bob_count_; ++v) {
    if (mass[size_t(v)] == 0.0) zero_support_.push_back(v);
    const double gap = target - mass[size_t(v)];
    if (gap > 1e-15 * target) {
      Slice pad;
      pad.labels.assign(static_cast<size_t>(bob_count_), kRejected);
      Eigen::Index heaviest = 0;
      label_mass.row(v).maxCoeff(&heaviest);
      pad.labels[size_t(v)] = static_cast<int>(heaviest);
      pad.probability = gap;
      pad.padding = true;
      slices_.push_back(std::move(pad));
    }
  }
  double total = 0.0;
  for (const Slice& sl : slices_) total += sl.probability;
  double running = 0.0;
  for (Slice& sl : slices_) {
    sl.probability /= total;
    running += sl.probability;
    cumulative_.push_back(running);
  }
  if (!cumulative_.empty()) cumulative_.back() = 1.0;
}

BobAssignment CorrelatedSampler::sample(Rng& rng) const {
  BobAssignment x;
  x.labels.assign(static_cast<size_t>(bob_count_), kRejected);
  int remaining = bob_count_;
  while (remaining > 0) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto idx = std::min<size_t>(size_t(it - cumulative_.begin()),
                                      slices_.size() - 1);
    const Slice& sl = slices_[idx];
    for (int v = 0; v < bob_count_; ++v) {
      if (x.labels[size_t(v)] == kRejected && sl.labels[size_t(v)] != kRejected) {
        x.labels[size_t(v)] = sl.labels[size_t(v)];
        --remaining;
      }
    }
  }
  return x;
}

BobAssignment correlated_sampling(const VectorAssignment& f,
                                  std::uint64_t seed) {
  const CorrelatedSampler sampler(f);
  Rng rng(seed);
  return sampler.sample(rng);
}

double expected_sym_value(const SymmetrizedGame& sg,
                          const CorrelatedSampler& sampler) {
  if (sampler.bob_count() != sg.bob_count) {
    throw DimensionError("sampler does not match the game");
  }
  const int s = sg.alphabet_size;
  const auto& slices = sampler.slices();
  // First-hit label distribution of each Bob question on its own.
  Eigen::MatrixXd first = Eigen::MatrixXd::Zero(sg.bob_count, s);
  for (const auto& sl : slices) {
    for (int v = 0; v < sg.bob_count; ++v) {
      if (sl.labels[size_t(v)] != kRejected) {
        first(v, sl.labels[size_t(v)]) += sl.probability;
      }
    }
  }
  for (int v = 0; v < sg.bob_count; ++v) {
    const double m = first.row(v).sum();
    if (m > 0.0) first.row(v) /= m;
  }
  double total = 0.0;
  for (const SymTriple& t : sg.triples) {
    const auto table = tau_table(t, s);
    double p = 0.0;
    if (t.v1 == t.v2) {
      for (int b = 0; b < s; ++b) {
        if (in_tau(table, s, b, b)) p += first(t.v1, b);
      }
    } else {
      double any = 0.0;
      double hit = 0.0;
      for (const auto& sl : slices) {
        const int x1 = sl.labels[size_t(t.v1)];
        const int x2 = sl.labels[size_t(t.v2)];
        if (x1 == kRejected && x2 == kRejected) continue;
        any += sl.probability;
        if (x1 != kRejected && x2 != kRejected) {
          if (in_tau(table, s, x1, x2)) hit += sl.probability;
        } else if (x1 != kRejected) {
          double q = 0.0;
          for (int b = 0; b < s; ++b) {
            if (in_tau(table, s, x1, b)) q += first(t.v2, b);
          }
          hit += sl.probability * q;
        } else {
          double q = 0.0;
          for (int b = 0; b < s; ++b) {
            if (in_tau(table, s, b, x2)) q += first(t.v1, b);
          }
          hit += sl.probability * q;
        }
      }
      p = hit / any;
    }
    total += t.weight * p;
  }
  return total;
}

double first_hit_agreement_bound(const SymmetrizedGame& sg,
                                 const CorrelatedSampler& sampler) {
  if (sampler.bob_count() != sg.bob_count) {
    throw DimensionError("sampler does not match the game");
  }
  const int s = sg.alphabet_size;
  double total = 0.0;
  for (const SymTriple& t : sg.triples) {
    const auto table = tau_table(t, s);
    double any = 0.0;
    double both = 0.0;
    for (const auto& sl : sampler.slices()) {
      const int x1 = sl.labels[size_t(t.v1)];
      const int x2 = sl.labels[size_t(t.v2)];
      if (x1 == kRejected && x2 == kRejected) continue;
      any += sl.probability;
      if (x1 != kRejected && x2 != kRejected && in_tau(table, s, x1, x2)) {
        both += sl.probability;
      }
    }
    total += t.weight * both / any;
  }
  return total;
}

ExtractionReport extract_assignment(const ProjectionGame& game,
                                    const VectorAssignment& f,
                                    const ExtractOptions& options) {
  validate(game, f);
  ExtractionReport rep;
  rep.input_ratio = certificate_ratio(game, f);
  const VectorAssignment normalized =
      normalize_for_rounding(derandomize(game, f));
  rep.rho = game_norm_sq(game, normalized);
  rep.psi_rho = psi(std::min(rep.rho, 1.0));
  const ThresholdRounding tr = threshold_round(normalized);
  const double numerator = game_norm_sq(game, tr.rounded);
  rep.rounded_norm_sq = numerator / vertex_norms_sq(tr.rounded).maxCoeff();
  rep.gamma = 1.0 - rep.rounded_norm_sq;
  rep.sampling_bound = min_max_ratio(rep.gamma);
  rep.approximation_bound = collision_lower_bound(rep.input_ratio);
  rep.psi_ok = numerator >= rep.psi_rho - 1e-9;

  const SymmetrizedGame sg = symmetrize(game);
  const CorrelatedSampler sampler(tr.rounded);
  rep.zero_support = static_cast<int>(sampler.zero_support().size());
  rep.agreement_bound = first_hit_agreement_bound(sg, sampler);
  rep.expected_value = expected_sym_value(sg, sampler);
  rep.chain_ok = rep.expected_value >= rep.agreement_bound - 1e-9 &&
                 rep.agreement_bound >= rep.sampling_bound - 1e-9 &&
                 rep.sampling_bound >= rep.approximation_bound - 1e-9;

  const auto tables = all_tau_tables(sg);
  rep.trials = std::max(options.trials, 0);
  double sum = 0.0;
  double sum_sq = 0.0;
  rep.best_sym_value = -1.0;
  for (int t = 0; t < rep.trials; ++t) {
    Rng rng(options.seed + static_cast<std::uint64_t>(t));
    BobAssignment x = sampler.sample(rng);
    const double val = sym_value_of_labels(sg, tables, x);
    sum += val;
    sum_sq += val * val;
    if (val > rep.best_sym_value) {
      rep.best_sym_value = val;
      rep.best = std::move(x);
    }
  }
  if (rep.trials > 0) {
    const double n = rep.trials;
    rep.mean_value = sum / n;
    rep.stddev = rep.trials > 1
                     ? std::sqrt(std::max(0.0, (sum_sq - n * rep.mean_value *
                                                             rep.mean_value) /
                                                   (n - 1.0)))
                     : 0.0;
    rep.sampling_ok = rep.mean_value >=
                      rep.sampling_bound - 3.0 * rep.stddev / std::sqrt(n) -
                          1e-12;
    rep.best_value = assignment_value(game, rep.best);
  } else {
    rep.best_sym_value = 0.0;
    rep.sampling_ok = true;
  }
  return rep;
}

namespace {

struct Moments {
  double mean = 0.0;      // E (A+B)/2
  double gm = 0.0;        // E sqrt(AB)
  double z_gm = 0.0;      // E Z sqrt(AB)
  double min = 0.0;       // E min
  double z_min = 0.0;     // E Z min
  double max = 0.0;       // E max
};

Moments moments(std::span<const JointSample> samples) {
  Moments m;
  double total = 0.0;
  for (const JointSample& x : samples) {
    if (!(x.a >= 0.0) || !(x.b >= 0.0) || !(x.weight >= 0.0) ||
        (x.z != 0 && x.z != 1)) {
      throw DomainError("joint sample outside the inequality's domain");
    }
    total += x.weight;
    const double g = std::sqrt(x.a * x.b);
    const double lo = std::min(x.a, x.b);
    m.mean += x.weight * 0.5 * (x.a + x.b);
    m.gm += x.weight * g;
    m.z_gm += x.weight * x.z * g;
    m.min += x.weight * lo;
    m.z_min += x.weight * x.z * lo;
    m.max += x.weight * std::max(x.a, x.b);
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw DomainError("joint sample weights must sum to one");
  }
  return m;
}

InequalityCheck finish(double parameter, double lhs, double rhs,
                       double scale) {
  return {parameter, lhs, rhs, lhs >= rhs - 1e-12 * std::max(1.0, scale)};
}

}  // namespace

InequalityCheck check_gm_vs_min(std::span<const JointSample> samples) {
  const Moments m = moments(samples);
  if (m.mean == 0.0) return {0.0, 0.0, 0.0, true};
  const double rho = std::min(m.gm / m.mean, 1.0);
  return finish(rho, m.min, psi(rho) * m.mean, m.mean);
}

InequalityCheck check_cor_gm_vs_min(std::span<const JointSample> samples) {
  const Moments m = moments(samples);
  if (m.mean == 0.0) return {0.0, 0.0, 0.0, true};
  const double rho = std::min(m.z_gm / m.mean, 1.0);
  return finish(rho, m.z_min, psi(rho) * m.mean, m.mean);
}

InequalityCheck check_min_vs_max(std::span<const JointSample> samples) {
  const Moments m = moments(samples);
  if (m.max == 0.0) return {0.0, 0.0, 0.0, true};
  const double one_minus_gamma = m.z_min / m.mean;
  return finish(one_minus_gamma, m.z_min / m.max,
                min_max_ratio(1.0 - one_minus_gamma), 1.0);
}

bool HybridRounding::ok() const {
  if (!expectation_bounds_ok) return false;
  for (const HybridSliceStats& st : slices) {
    if (!st.b_bound_ok) return false;
  }
  return true;
}

HybridRounding hybrid_threshold_round(const VectorAssignment& f,
                                      const SymmetrizedGame& sg) {
  require_deterministic_unit(f, "hybrid_threshold_round");
  if (sg.bob_count != f.bob_count || sg.alphabet_size != f.alphabet_size) {
    throw DimensionError("square game does not match the assignment");
  }
  const double width = kHybridHi - kHybridLo;
  HybridRounding out;
  out.measure.tau_lo = kHybridLo;
  out.measure.tau_hi = kHybridHi;
  out.expected_sq = Eigen::MatrixXd::Zero(f.values.rows(), f.omega_size());
  std::vector<Eigen::VectorXd> columns;
  std::vector<double> weights;
  for (Eigen::Index w = 0; w < f.omega_size(); ++w) {
    std::vector<double> cuts;
    for (double level : squared_levels(f, w)) {
      if (level > kHybridLo && level < kHybridHi) cuts.push_back(level);
    }
    cuts.push_back(kHybridHi);
    std::vector<ThresholdInterval> intervals;
    double lo = kHybridLo;
    for (double hi : cuts) {
      if (!(hi > lo)) continue;
      const double rel = (hi - lo) / width;
      intervals.push_back({lo, hi, rel, Eigen::Index(columns.size())});
      Eigen::VectorXd col = level_set(f, w, hi);
      out.expected_sq.col(w) += rel * col;
      columns.push_back(std::move(col));
      weights.push_back(f.weights[w] * rel);
      lo = hi;
    }
    out.measure.intervals.push_back(std::move(intervals));

    HybridSliceStats st;
    double l1 = 0.0;
    double l2 = 0.0;
    for (int v = 0; v < f.bob_count; ++v) {
      const double mu = sg.bob_measure[v];
      for (int b = 0; b < f.alphabet_size; ++b) {
        const double x = f.values(row_of(v, b, f.alphabet_size), w);
        l1 += mu * x;
        l2 += mu * x * x;
        if (x * x >= kHybridLo && x * x <= kHybridHi) st.b_norm_sq += mu;
      }
    }
    st.gamma = l1 - l2;
    st.eta = l2 - sym_value(sg, f.slice(w));
    st.b_bound_ok = st.b_norm_sq <= 100.0 * st.gamma + 1e-12;
    out.slices.push_back(st);
  }
  out.expectation_bounds_ok = true;
  for (Eigen::Index r = 0; r < f.values.rows(); ++r) {
    for (Eigen::Index w = 0; w < f.omega_size(); ++w) {
      const double sq = f.values(r, w) * f.values(r, w);
      const double e = out.expected_sq(r, w);
      if (e < sq - kHybridLo - 1e-12 || e > sq * (10.0 / 9.0) + 1e-12) {
        out.expectation_bounds_ok = false;
      }
    }
  }
  Eigen::MatrixXd values(f.values.rows(), Eigen::Index(columns.size()));
  for (size_t i = 0; i < columns.size(); ++i) {
    values.col(Eigen::Index(i)) = columns[i];
  }
  out.rounded = VectorAssignment(
      f.bob_count, f.alphabet_size,
      Eigen::Map<const Eigen::VectorXd>(weights.data(),
                                        Eigen::Index(weights.size())),
      std::move(values));
  return out;
}

TwoGamesReport two_games_experiment(const ProjectionGame& g,
                                    const ProjectionGame& h,
                                    const TwoGamesOptions& options) {
  const EnumerationLimits limits{options.cap};
  const ProjectionGame gh = tensor(g, h);
  TwoGamesReport rep;
  const CollisionSolution sol = solve_collision(gh, limits);
  rep.collision_gh = sol.value_sq;
  rep.collision_g = collision_value_sq(g, limits);
  rep.collision_h = collision_value_sq(h, limits);
  rep.gamma = 1.0 - rep.collision_h;
  rep.eta = rep.collision_h - rep.collision_gh;
  rep.rate = rep.eta + std::sqrt(std::max(0.0, rep.gamma * rep.eta));

  // h(v, beta, (u', alpha')) = ((Id x H) f)(v, beta, u', alpha') with the
  // measure of (u', alpha') equal to mu_H(u').
  const int ng = g.bob_count();
  const int sgs = g.alphabet_size();
  const int nh = h.bob_count();
  const int shs = h.alphabet_size();
  const FractionalAssignment f = to_fractional(sol.bob, gh.alphabet_size());
  std::vector<int> alice;
  for (int u = 0; u < h.alice_count(); ++u) {
    if (h.alice_measure()[u] > 0.0) alice.push_back(u);
  }
  const auto omega = Eigen::Index(alice.size()) * shs;
  Eigen::VectorXd weights(omega);
  for (size_t i = 0; i < alice.size(); ++i) {
    weights.segment(Eigen::Index(i) * shs, shs)
        .setConstant(h.alice_measure()[alice[i]]);
  }
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(Eigen::Index{ng} * sgs, omega);
  for (int v = 0; v < ng; ++v) {
    for (int b = 0; b < sgs; ++b) {
      FractionalAssignment inner(nh, shs);
      for (int v2 = 0; v2 < nh; ++v2) {
        for (int b2 = 0; b2 < shs; ++b2) {
          inner(v2, b2) = f(Eigen::Index{v} * nh + v2, Eigen::Index{b} * shs + b2);
        }
      }
      const AliceFunction image = apply_game(h, inner);
      for (size_t i = 0; i < alice.size(); ++i) {
        for (int a = 0; a < shs; ++a) {
          values(row_of(v, b, sgs), Eigen::Index(i) * shs + a) =
              image(alice[i], a);
        }
      }
    }
  }
  const VectorAssignment lifted(ng, sgs, weights, values);
  rep.lift_norm_sq = game_norm_sq(g, lifted);
  rep.lift_ok = std::abs(rep.lift_norm_sq - rep.collision_gh) <= 1e-9;

  VectorAssignment det = derandomize(g, lifted);
  for (Eigen::Index w = 0; w < det.omega_size(); ++w) {
    const double m = det.values.col(w).maxCoeff();
    if (m > 1.0) {
      det.values.col(w) /= m;
      det.weights[w] *= m * m;
    }
  }
  const SymmetrizedGame square = symmetrize(g);
  const HybridRounding hybrid = hybrid_threshold_round(det, square);
  rep.hybrid_ok = hybrid.ok();

  const CorrelatedSampler sampler(hybrid.rounded);
  const auto tables = all_tau_tables(square);
  double sum = 0.0;
  rep.best_extracted = -1.0;
  for (int t = 0; t < options.trials; ++t) {
    Rng rng(options.seed + static_cast<std::uint64_t>(t));
    BobAssignment x = sampler.sample(rng);
    const double sv = sym_value_of_labels(square, tables, x);
    rep.max_sym_mismatch = std::max(
        rep.max_sym_mismatch, std::abs(sv - collision_value_sq_of(g, x)));
    sum += sv;
    if (sv > rep.best_extracted) {
      rep.best_extracted = sv;
      rep.best = std::move(x);
    }
  }
  if (options.trials > 0) {
    rep.mean_extracted = sum / options.trials;
  } else {
    rep.best_extracted = 0.0;
  }
  rep.sym_ok = rep.max_sym_mismatch <= 1e-9;
  return rep;
}

}  // namespace parrep
