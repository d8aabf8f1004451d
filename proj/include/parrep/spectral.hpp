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

// Random walk on Bob questions induced by the symmetrized game, its spectral
// gap, and the transformation that makes any game expanding.

#ifndef PARREP_SPECTRAL_HPP_
#define PARREP_SPECTRAL_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "parrep/game.hpp"
#include "parrep/symmetrize.hpp"

namespace parrep {

// Row-stochastic walk A(v, v') = mu_sym(v' | v) restricted to Bob questions
// of positive measure. `vertices[i]` is the original index of row i.
struct MarkovChain {
  Eigen::MatrixXd transition;
  Eigen::VectorXd stationary;
  std::vector<int> vertices;
};

MarkovChain markov_chain(const SymmetrizedGame& sg);

struct SpectralGap {
  double gap = 0.0;
  double lambda2 = 0.0;
  double lambda_min = 0.0;
};

// 1 - max(|lambda_2|, |lambda_min|). Throws ContractViolation when the chain
// is not reversible with respect to its stationary measure.
SpectralGap spectral_gap(const MarkovChain& chain);

bool is_expanding(const ProjectionGame& game, double c);

// Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.
// Eigenvalues come back in decreasing order with matching eigenvector
// columns.
template <typename Scalar>
struct JacobiResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eigenvalues;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eigenvectors;
  int sweeps = 0;
};

template <typename Scalar>
JacobiResult<Scalar> jacobi_eigen(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a,
    Scalar tolerance = Scalar(1e-12), int max_sweeps = 100) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = a.rows();
  Matrix v = Matrix::Identity(n, n);
  int sweep = 0;
  auto off_norm = [&a, n] {
    Scalar s(0);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) s += 2 * a(i, j) * a(i, j);
    }
    return std::sqrt(s);
  };
  while (off_norm() >= tolerance && sweep < max_sweeps) {
    ++sweep;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        const Scalar t =
            (theta >= 0 ? Scalar(1) : Scalar(-1)) /
            (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
        const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&a](Eigen::Index x, Eigen::Index y) {
                     return a(x, x) > a(y, y);
                   });
  JacobiResult<Scalar> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues[i] = a(order[static_cast<size_t>(i)],
                           order[static_cast<size_t>(i)]);
    out.eigenvectors.col(i) = v.col(order[static_cast<size_t>(i)]);
  }
  out.sweeps = sweep;
  return out;
}

struct ExpandOptions {
  bool regular = false;
  std::uint64_t seed = 0;
  // Attempts at drawing a regular gadget with positive gap.
  int max_attempts = 64;
  // Largest |Sigma|^|V| for which the value identity is checked by
  // enumeration.
  double value_check_cap = 1e7;
};

struct ExpandResult {
  ProjectionGame game;
  SpectralGap spectrum;
  bool value_checked = false;
  double value_before = 0.0;
  double value_after = 0.0;
  std::uint64_t seed_used = 0;
};

// Mixes the game half-and-half with a trivially satisfiable gadget on fresh
// Alice questions. In the default mode the gadget is a single Alice question
// joined to every Bob question in proportion to the Bob marginal; in regular
// mode the input must be (c, d)-regular with uniform edge weights and the
// gadget is a seeded (c, d)-regular bipartite multigraph on |U| new Alice
// questions. Post-conditions (throwing ContractViolation on failure):
// val(G') = 1/2 + val(G)/2 when enumeration fits the cap, and the measured
// spectral gap is positive.
ExpandResult make_expanding(const ProjectionGame& game,
                            const ExpandOptions& options = {});

}  // namespace parrep

#endif  // PARREP_SPECTRAL_HPP_
