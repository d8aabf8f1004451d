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

// Brute-force reference implementations shared by the unit tests. They work
// straight from the edge list and never call the library's own evaluators.

#ifndef PARREP_TESTS_ORACLES_HPP_
#define PARREP_TESTS_ORACLES_HPP_

#include <algorithm>
#include <vector>

#include <Eigen/Dense>

#include "parrep/game.hpp"

namespace parrep::oracle {

inline double total_weight(const ProjectionGame& g) {
  double t = 0.0;
  for (const Edge& e : g.edges()) t += e.weight;
  return t;
}

inline std::vector<double> alice_mass(const ProjectionGame& g) {
  std::vector<double> mu(static_cast<size_t>(g.alice_count()), 0.0);
  const double t = total_weight(g);
  for (const Edge& e : g.edges()) mu[static_cast<size_t>(e.u)] += e.weight / t;
  return mu;
}

inline Eigen::MatrixXd apply(const ProjectionGame& g, const Eigen::MatrixXd& f) {
  const auto mu = alice_mass(g);
  const double t = total_weight(g);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(g.alice_count(), g.alphabet_size());
  for (const Edge& e : g.edges()) {
    for (int b = 0; b < g.alphabet_size(); ++b) {
      const int a = e.constraint.project(b);
      if (a == kRejected) continue;
      out(e.u, a) += e.weight / t / mu[static_cast<size_t>(e.u)] * f(e.v, b);
    }
  }
  return out;
}

inline double norm_sq(const ProjectionGame& g, const Eigen::MatrixXd& f) {
  const auto mu = alice_mass(g);
  const Eigen::MatrixXd gf = apply(g, f);
  double s = 0.0;
  for (int u = 0; u < g.alice_count(); ++u) {
    s += mu[static_cast<size_t>(u)] * gf.row(u).squaredNorm();
  }
  return s;
}

// Calls visit(labels) for every Bob labeling in lexicographic order.
template <typename Visit>
void for_each_labeling(int bob_count, int alphabet_size, Visit visit) {
  std::vector<int> x(static_cast<size_t>(bob_count), 0);
  for (;;) {
    visit(x);
    int i = 0;
    while (i < bob_count && ++x[static_cast<size_t>(i)] == alphabet_size) {
      x[static_cast<size_t>(i)] = 0;
      ++i;
    }
    if (i == bob_count) return;
  }
}

// Per-u accepted mass of each Alice answer under Bob labeling x.
inline Eigen::MatrixXd answer_mass(const ProjectionGame& g,
                                   const std::vector<int>& x) {
  const double t = total_weight(g);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(g.alice_count(), g.alphabet_size());
  for (const Edge& e : g.edges()) {
    const int b = x[static_cast<size_t>(e.v)];
    if (b == kRejected) continue;
    const int a = e.constraint.project(b);
    if (a != kRejected) m(e.u, a) += e.weight / t;
  }
  return m;
}

inline double labeling_value(const ProjectionGame& g, const std::vector<int>& x) {
  const Eigen::MatrixXd m = answer_mass(g, x);
  double s = 0.0;
  for (int u = 0; u < g.alice_count(); ++u) s += m.row(u).maxCoeff();
  return s;
}

inline double labeling_collision(const ProjectionGame& g,
                                 const std::vector<int>& x) {
  const auto mu = alice_mass(g);
  const Eigen::MatrixXd m = answer_mass(g, x);
  double s = 0.0;
  for (int u = 0; u < g.alice_count(); ++u) {
    if (mu[static_cast<size_t>(u)] > 0.0) {
      s += m.row(u).squaredNorm() / mu[static_cast<size_t>(u)];
    }
  }
  return s;
}

inline double value(const ProjectionGame& g) {
  double best = 0.0;
  for_each_labeling(g.bob_count(), g.alphabet_size(), [&](const auto& x) {
    best = std::max(best, labeling_value(g, x));
  });
  return best;
}

inline double collision(const ProjectionGame& g) {
  double best = 0.0;
  for_each_labeling(g.bob_count(), g.alphabet_size(), [&](const auto& x) {
    best = std::max(best, labeling_collision(g, x));
  });
  return best;
}

}  // namespace parrep::oracle

#endif  // PARREP_TESTS_ORACLES_HPP_
