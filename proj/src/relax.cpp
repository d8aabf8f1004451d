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

#include "parrep/relax.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "parrep/errors.hpp"
#include "parrep/random.hpp"
#include "parrep/spectral.hpp"
#include "parrep/symmetrize.hpp"
#include "parrep/transfer.hpp"

namespace parrep {
namespace {

constexpr double kTieSlack = 1e-12;

// Per-vertex rescaling so that every nonzero ||(T_v x Id) f|| equals one.
void normalize_vertices(int bob_count, int alphabet_size,
                        const Eigen::VectorXd& weights, Eigen::MatrixXd& f) {
  for (int v = 0; v < bob_count; ++v) {
    auto block = f.middleRows(Eigen::Index{v} * alphabet_size, alphabet_size);
    const Eigen::RowVectorXd sums = block.colwise().sum();
    const double n = sums.array().square().matrix().dot(weights.transpose());
    if (n > 0.0) block /= std::sqrt(n);
  }
}

double kernel_ratio(const Eigen::MatrixXd& kernel, int bob_count,
                    int alphabet_size, const Eigen::VectorXd& weights,
                    const Eigen::MatrixXd& f) {
  const Eigen::MatrixXd kf = kernel * f;
  double numerator = 0.0;
  for (Eigen::Index w = 0; w < f.cols(); ++w) {
    numerator += weights[w] * f.col(w).dot(kf.col(w));
  }
  double denominator = 0.0;
  for (int v = 0; v < bob_count; ++v) {
    const Eigen::RowVectorXd sums =
        f.middleRows(Eigen::Index{v} * alphabet_size, alphabet_size)
            .colwise()
            .sum();
    denominator = std::max(
        denominator, sums.array().square().matrix().dot(weights.transpose()));
  }
  if (denominator <= 0.0) return 0.0;
  return std::sqrt(std::max(0.0, numerator) / denominator);
}

}  // namespace

LabelingMatrix labeling_matrix(const ProjectionGame& game,
                               const Eigen::MatrixXd& kernel,
                               std::vector<int> labeling) {
  if (static_cast<int>(labeling.size()) != game.bob_count()) {
    throw DimensionError("labeling length does not match the game");
  }
  const int s = game.alphabet_size();
  LabelingMatrix out;
  out.labeling = std::move(labeling);
  for (int v = 0; v < game.bob_count(); ++v) {
    if (game.bob_measure()[v] > 0.0) out.vertices.push_back(v);
  }
  const auto n = static_cast<Eigen::Index>(out.vertices.size());
  out.weighted.resize(n, n);
  out.measure.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int vi = out.vertices[static_cast<size_t>(i)];
    out.measure[i] = game.bob_measure()[vi];
    const Eigen::Index ri =
        Eigen::Index{vi} * s + out.labeling[static_cast<size_t>(vi)];
    for (Eigen::Index j = 0; j < n; ++j) {
      const int vj = out.vertices[static_cast<size_t>(j)];
      out.weighted(i, j) =
          kernel(ri, Eigen::Index{vj} * s +
                         out.labeling[static_cast<size_t>(vj)]);
    }
  }
  return out;
}

PerronResult perron_eigen(const Eigen::MatrixXd& m,
                          const PowerIterationOptions& options) {
  const Eigen::Index n = m.rows();
  PerronResult out;
  out.vector = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  if (n == 0) return out;
  const double row_bound = m.cwiseAbs().rowwise().sum().maxCoeff();
  if (row_bound == 0.0) return out;
  // Any positive shift makes the Perron root strictly dominant in magnitude,
  // including for bipartite structure where -lambda is also an eigenvalue.
  const double shift = 0.25 * row_bound;
  Eigen::VectorXd x = out.vector;
  double previous = x.dot(m * x);
  out.min_entry = x.minCoeff();
  for (int it = 1; it <= options.max_iterations; ++it) {
    Eigen::VectorXd y = m * x + shift * x;
    out.min_entry = std::min(out.min_entry, y.minCoeff());
    y = y.cwiseMax(0.0);
    const double norm = y.norm();
    if (norm == 0.0) break;
    x = y / norm;
    const double current = x.dot(m * x);
    out.iterations = it;
    if (std::abs(current - previous) <=
        options.tolerance * std::max(1.0, std::abs(current))) {
      out.eigenvalue = current;
      out.vector = x;
      out.residual = (m * x - current * x).norm();
      return out;
    }
    previous = current;
  }
  std::ostringstream msg;
  msg << "power iteration did not converge in " << options.max_iterations
      << " iterations (residual " << (m * x - previous * x).norm() << ")";
  throw ConvergenceError(msg.str());
}

LambdaPlusResult lambda_plus(const ProjectionGame& game,
                             const EnumerationLimits& limits,
                             const PowerIterationOptions& options) {
  check_enumeration_size(game.alphabet_size(), game.bob_count(), limits,
                         "lambda+");
  const Eigen::MatrixXd kernel = collision_kernel(game);
  const int s = game.alphabet_size();
  std::vector<int> support;
  for (int v = 0; v < game.bob_count(); ++v) {
    if (game.bob_measure()[v] > 0.0) support.push_back(v);
  }
  const auto n = static_cast<Eigen::Index>(support.size());
  Eigen::VectorXd inv_root(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    inv_root[i] = 1.0 / std::sqrt(game.bob_measure()[support[size_t(i)]]);
  }

  LambdaPlusResult best;
  best.value = -1.0;
  std::vector<int> labels(static_cast<size_t>(game.bob_count()), 0);
  Eigen::MatrixXd b(n, n);
  double best_sq = -1.0;
  while (true) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index ri =
          Eigen::Index{support[size_t(i)]} * s + labels[size_t(support[size_t(i)])];
      for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index rj = Eigen::Index{support[size_t(j)]} * s +
                                labels[size_t(support[size_t(j)])];
        b(i, j) = inv_root[i] * kernel(ri, rj) * inv_root[j];
      }
    }
    const PerronResult pr = perron_eigen(b, options);
    ++best.labelings_checked;
    if (pr.eigenvalue > best_sq + kTieSlack) {
      best_sq = pr.eigenvalue;
      best.labeling = labels;
      best.magnitudes = Eigen::VectorXd::Zero(game.bob_count());
      for (Eigen::Index i = 0; i < n; ++i) {
        best.magnitudes[support[size_t(i)]] = pr.vector[i] * inv_root[i];
      }
    }
    // Odometer over support labels, last support vertex fastest, so labelings
    // are visited in lexicographic order.
    Eigen::Index pos = n - 1;
    while (pos >= 0) {
      int& l = labels[size_t(support[size_t(pos)])];
      if (++l < s) break;
      l = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  best.value = std::sqrt(std::max(0.0, best_sq));
  return best;
}

ValPlusCertificate val_plus_search(const ProjectionGame& game,
                                   const ValPlusSearchOptions& options) {
  if (options.omega_size < 1) {
    throw DomainError("omega_size must be at least 1");
  }
  const int nv = game.bob_count();
  const int s = game.alphabet_size();
  const Eigen::Index rows = Eigen::Index{nv} * s;
  const Eigen::MatrixXd kernel = collision_kernel(game);
  const Eigen::VectorXd weights =
      Eigen::VectorXd::Constant(options.omega_size, 1.0 / options.omega_size);
  const double damping = 0.5 * kernel.rowwise().sum().maxCoeff();

  std::vector<Eigen::MatrixXd> starts;
  if (options.classical_start &&
      enumeration_states(game) <= options.limits.cap) {
    const CollisionSolution sol = solve_collision(game, options.limits);
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(rows, options.omega_size);
    for (int v = 0; v < nv; ++v) {
      f.row(Eigen::Index{v} * s + sol.bob.labels[size_t(v)]).setOnes();
    }
    starts.push_back(std::move(f));
  }
  Rng rng(options.seed);
  for (int r = 0; r < options.random_starts; ++r) {
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(rows, options.omega_size);
    if (r % 2 == 0) {
      for (Eigen::Index i = 0; i < f.size(); ++i) f.data()[i] = rng.uniform();
    } else {
      // Random deterministic slices with random magnitudes.
      for (int w = 0; w < options.omega_size; ++w) {
        for (int v = 0; v < nv; ++v) {
          f(Eigen::Index{v} * s + rng.below(s), w) = 0.5 + rng.uniform();
        }
      }
    }
    starts.push_back(std::move(f));
  }

  double best_ratio = -1.0;
  Eigen::MatrixXd best;
  for (Eigen::MatrixXd& f : starts) {
    normalize_vertices(nv, s, weights, f);
    double r = kernel_ratio(kernel, nv, s, weights, f);
    if (r > best_ratio) {
      best_ratio = r;
      best = f;
    }
    for (int it = 0; it < options.iterations; ++it) {
      Eigen::MatrixXd next = kernel * f + damping * f;
      next = next.cwiseMax(0.0);
      normalize_vertices(nv, s, weights, next);
      const double change = (next - f).cwiseAbs().maxCoeff();
      f = std::move(next);
      r = kernel_ratio(kernel, nv, s, weights, f);
      if (r > best_ratio) {
        best_ratio = r;
        best = f;
      }
      if (change < 1e-14) break;
    }
  }

  ValPlusCertificate cert;
  cert.assignment = VectorAssignment(nv, s, weights, best);
  cert.ratio = certificate_ratio(game, cert.assignment);
  return cert;
}

ValPlusInterval val_plus_interval(const ProjectionGame& game,
                                  const ValPlusSearchOptions& options) {
  ValPlusInterval out;
  out.collision_value_sq = collision_value_sq(game, options.limits);
  out.certificate = val_plus_search(game, options);
  out.search_ratio = out.certificate.ratio;
  out.lower = std::max(std::sqrt(out.collision_value_sq), out.search_ratio);
  out.upper = val_plus_upper_bound(out.collision_value_sq);
  if (out.lower > out.upper + 1e-9) {
    throw ContractViolation("val+ certificate exceeds the approximation bound");
  }
  return out;
}

ValPlusCertificate tensor_certificate(const ValPlusCertificate& c1,
                                      const ValPlusCertificate& c2) {
  const VectorAssignment& a = c1.assignment;
  const VectorAssignment& b = c2.assignment;
  validate(a);
  validate(b);
  const int nv = a.bob_count * b.bob_count;
  const int s = a.alphabet_size * b.alphabet_size;
  const Eigen::Index omega = a.omega_size() * b.omega_size();
  Eigen::MatrixXd values(Eigen::Index{nv} * s, omega);
  Eigen::VectorXd weights(omega);
  for (Eigen::Index w1 = 0; w1 < a.omega_size(); ++w1) {
    for (Eigen::Index w2 = 0; w2 < b.omega_size(); ++w2) {
      const Eigen::Index col = w1 * b.omega_size() + w2;
      weights[col] = a.weights[w1] * b.weights[w2];
      for (int v1 = 0; v1 < a.bob_count; ++v1) {
        for (int v2 = 0; v2 < b.bob_count; ++v2) {
          const Eigen::Index v = Eigen::Index{v1} * b.bob_count + v2;
          for (int b1 = 0; b1 < a.alphabet_size; ++b1) {
            const double x =
                a.values(Eigen::Index{v1} * a.alphabet_size + b1, w1);
            for (int b2 = 0; b2 < b.alphabet_size; ++b2) {
              values(v * s + Eigen::Index{b1} * b.alphabet_size + b2, col) =
                  x * b.values(Eigen::Index{v2} * b.alphabet_size + b2, w2);
            }
          }
        }
      }
    }
  }
  ValPlusCertificate out;
  out.assignment = VectorAssignment(nv, s, std::move(weights), std::move(values));
  out.ratio = c1.ratio * c2.ratio;
  return out;
}

ExpanderCheck expander_approx_check(const ProjectionGame& game,
                                    const EnumerationLimits& limits) {
  ExpanderCheck out;
  out.gamma = spectral_gap(markov_chain(symmetrize(game))).gap;
  out.lambda_plus = lambda_plus(game, limits).value;
  out.epsilon = std::max(0.0, 1.0 - out.lambda_plus);
  out.delta = collision_value_sq(game, limits);
  out.lhs = 1.0 - out.delta;
  out.applicable = out.gamma > 1e-12 && out.epsilon / out.gamma <= 1.0 / 6.0;
  out.rhs = out.gamma > 1e-12
                ? 36.0 * out.epsilon / out.gamma + 18.0 * out.epsilon
                : std::numeric_limits<double>::infinity();
  out.holds = !out.applicable || out.lhs <= out.rhs + 1e-9;
  return out;
}

}  // namespace parrep
