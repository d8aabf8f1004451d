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

#include "parrep/enumerate.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "parrep/errors.hpp"

namespace parrep {
namespace {

// Pruning slack: subtrees whose bound cannot beat the incumbent by more than
// this are skipped.
constexpr double kPruneSlack = 1e-12;

enum class Objective { kValue, kCollision };

// Depth-first search over Bob labelings. Per Alice question u it keeps the
// accepted mass per Alice label (score), its maximum (top) and the mass of
// edges whose Bob endpoint is still unassigned (rem). Every mutation is
// journaled so backtracking restores bit-identical state.
template <Objective kObjective>
class LabelSearch {
 public:
  explicit LabelSearch(const ProjectionGame& game)
      : game_(game),
        sigma_(game.alphabet_size()),
        incidence_(static_cast<size_t>(game.bob_count())),
        score_(static_cast<size_t>(game.alice_count()) *
                   static_cast<size_t>(sigma_),
               0.0),
        top_(static_cast<size_t>(game.alice_count()), 0.0),
        rem_(static_cast<size_t>(game.alice_count()), 0.0),
        sumsq_(static_cast<size_t>(game.alice_count()), 0.0),
        inv_mu_(static_cast<size_t>(game.alice_count()), 0.0),
        bound_(static_cast<size_t>(game.alice_count()), 0.0),
        labels_(static_cast<size_t>(game.bob_count()), 0) {
    for (const Edge& e : game.edges()) {
      if (e.weight == 0.0) continue;
      incidence_[static_cast<size_t>(e.v)].push_back(
          {e.u, e.weight, e.constraint.image().data()});
      rem_[static_cast<size_t>(e.u)] += e.weight;
    }
    for (int v = 0; v < game.bob_count(); ++v) {
      if (!incidence_[static_cast<size_t>(v)].empty()) order_.push_back(v);
    }
    for (int u = 0; u < game.alice_count(); ++u) {
      const double mu = game.alice_measure()[u];
      inv_mu_[static_cast<size_t>(u)] = mu > 0.0 ? 1.0 / mu : 0.0;
      bound_[static_cast<size_t>(u)] = local_bound(u);
      total_bound_ += bound_[static_cast<size_t>(u)];
    }
  }

  void run() {
    best_ = -std::numeric_limits<double>::infinity();
    descend(0);
  }

  double best() const { return best_; }
  const std::vector<int>& best_labels() const { return best_labels_; }

 private:
  struct Incidence {
    int u;
    double weight;
    const int* image;
  };

  double local_bound(int u) const {
    const auto i = static_cast<size_t>(u);
    if constexpr (kObjective == Objective::kValue) {
      return top_[i] + rem_[i];
    } else {
      // Pouring the remaining mass onto the leading label maximizes the
      // convex sum of squares.
      return (sumsq_[i] + 2.0 * top_[i] * rem_[i] + rem_[i] * rem_[i]) *
             inv_mu_[i];
    }
  }

  double leaf_value() const {
    double total = 0.0;
    for (size_t u = 0; u < top_.size(); ++u) {
      if constexpr (kObjective == Objective::kValue) {
        total += top_[u];
      } else {
        total += sumsq_[u] * inv_mu_[u];
      }
    }
    return total;
  }

  void set(double& slot, double value) {
    journal_.push_back({&slot, slot});
    slot = value;
  }

  void undo_to(size_t mark) {
    while (journal_.size() > mark) {
      *journal_.back().first = journal_.back().second;
      journal_.pop_back();
    }
  }

  void assign(int v, int beta) {
    for (const Incidence& inc : incidence_[static_cast<size_t>(v)]) {
      const auto u = static_cast<size_t>(inc.u);
      set(rem_[u], rem_[u] - inc.weight);
      const int alpha = inc.image[beta];
      if (alpha != kRejected) {
        double& s = score_[u * static_cast<size_t>(sigma_) +
                           static_cast<size_t>(alpha)];
        const double updated = s + inc.weight;
        if constexpr (kObjective == Objective::kCollision) {
          set(sumsq_[u], sumsq_[u] + updated * updated - s * s);
        }
        set(s, updated);
        if (updated > top_[u]) set(top_[u], updated);
      }
      const double b = local_bound(inc.u);
      set(total_bound_, total_bound_ + b - bound_[u]);
      set(bound_[u], b);
    }
  }

  void descend(size_t depth) {
    if (depth == order_.size()) {
      const double v = leaf_value();
      if (v > best_) {
        best_ = v;
        best_labels_ = labels_;
      }
      return;
    }
    const int v = order_[depth];
    for (int beta = 0; beta < sigma_; ++beta) {
      const size_t mark = journal_.size();
      assign(v, beta);
      labels_[static_cast<size_t>(v)] = beta;
      if (total_bound_ >= best_ + kPruneSlack) descend(depth + 1);
      undo_to(mark);
    }
    labels_[static_cast<size_t>(v)] = 0;
  }

  const ProjectionGame& game_;
  int sigma_;
  std::vector<std::vector<Incidence>> incidence_;
  std::vector<int> order_;
  std::vector<double> score_;
  std::vector<double> top_;
  std::vector<double> rem_;
  std::vector<double> sumsq_;
  std::vector<double> inv_mu_;
  std::vector<double> bound_;
  double total_bound_ = 0.0;
  std::vector<std::pair<double*, double>> journal_;
  std::vector<int> labels_;
  std::vector<int> best_labels_;
  double best_ = 0.0;
};

}  // namespace

double enumeration_states(const ProjectionGame& game) {
  return std::pow(static_cast<double>(game.alphabet_size()),
                  static_cast<double>(game.bob_count()));
}

void check_enumeration_size(int base, int exponent,
                            const EnumerationLimits& limits,
                            const char* what) {
  const double states =
      std::pow(static_cast<double>(base), static_cast<double>(exponent));
  if (!(states <= limits.cap)) {
    throw CapExceeded(std::string(what) + ": " + std::to_string(base) + "^" +
                      std::to_string(exponent) +
                      " states exceed the enumeration cap " +
                      std::to_string(static_cast<long long>(limits.cap)));
  }
}

ValueSolution solve_value(const ProjectionGame& game,
                          const EnumerationLimits& limits) {
  check_enumeration_size(game.alphabet_size(), game.bob_count(), limits,
                         "value");
  LabelSearch<Objective::kValue> search(game);
  search.run();
  ValueSolution out;
  out.bob.labels = search.best_labels();
  out.alice = best_response(game, out.bob);
  out.value = assignment_value(game, out.bob);
  return out;
}

CollisionSolution solve_collision(const ProjectionGame& game,
                                  const EnumerationLimits& limits) {
  check_enumeration_size(game.alphabet_size(), game.bob_count(), limits,
                         "collision value");
  LabelSearch<Objective::kCollision> search(game);
  search.run();
  CollisionSolution out;
  out.bob.labels = search.best_labels();
  out.value_sq = collision_value_sq_of(game, out.bob);
  return out;
}

double value(const ProjectionGame& game, const EnumerationLimits& limits) {
  return solve_value(game, limits).value;
}

double collision_value_sq(const ProjectionGame& game,
                          const EnumerationLimits& limits) {
  return solve_collision(game, limits).value_sq;
}

std::vector<int> best_response(const ProjectionGame& game,
                               const BobAssignment& bob) {
  if (static_cast<int>(bob.labels.size()) != game.bob_count()) {
    throw DimensionError("assignment length does not match the game");
  }
  Eigen::MatrixXd score =
      Eigen::MatrixXd::Zero(game.alice_count(), game.alphabet_size());
  for (const Edge& e : game.edges()) {
    const int a = e.constraint.project(bob.labels[static_cast<size_t>(e.v)]);
    if (a != kRejected) score(e.u, a) += e.weight;
  }
  std::vector<int> alice(static_cast<size_t>(game.alice_count()), 0);
  for (int u = 0; u < game.alice_count(); ++u) {
    Eigen::Index arg = 0;
    score.row(u).maxCoeff(&arg);
    alice[static_cast<size_t>(u)] = static_cast<int>(arg);
  }
  return alice;
}

double assignment_value(const ProjectionGame& game, const BobAssignment& bob) {
  const std::vector<int> alice = best_response(game, bob);
  double total = 0.0;
  for (const Edge& e : game.edges()) {
    const int a = e.constraint.project(bob.labels[static_cast<size_t>(e.v)]);
    if (a != kRejected && a == alice[static_cast<size_t>(e.u)]) {
      total += e.weight;
    }
  }
  return total;
}

}  // namespace parrep
