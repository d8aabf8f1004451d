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

#include "parrep/spectral.hpp"

#include <cmath>
#include <string>

#include "parrep/enumerate.hpp"
#include "parrep/errors.hpp"
#include "parrep/random.hpp"

namespace parrep {
namespace {

constexpr double kChainTolerance = 1e-9;

// Degrees and common edge weight of a (c, d)-regular game; throws otherwise.
std::pair<int, int> regular_degrees(const ProjectionGame& game) {
  const auto& edges = game.edges();
  const double w0 = edges.front().weight;
  for (const Edge& e : edges) {
    if (std::abs(e.weight - w0) > kTolerance * w0) {
      throw DomainError("regular mode needs uniform edge weights");
    }
  }
  const auto c = game.alice_edges(0).size();
  for (int u = 0; u < game.alice_count(); ++u) {
    if (game.alice_edges(u).size() != c) {
      throw DomainError("regular mode needs equal Alice degrees");
    }
  }
  const auto d = game.bob_edges(0).size();
  for (int v = 0; v < game.bob_count(); ++v) {
    if (game.bob_edges(v).size() != d) {
      throw DomainError("regular mode needs equal Bob degrees");
    }
  }
  return {static_cast<int>(c), static_cast<int>(d)};
}

ProjectionGame trivial_half(const ProjectionGame& game) {
  std::vector<Edge> edges;
  const int s = game.alphabet_size();
  for (const Edge& e : game.edges()) {
    edges.push_back({e.u, e.v, 0.5 * e.weight, e.constraint});
  }
  const int u0 = game.alice_count();
  for (int v = 0; v < game.bob_count(); ++v) {
    const double mu = game.bob_measure()[v];
    if (mu > 0.0) {
      edges.push_back({u0, v, 0.5 * mu, ProjectionConstraint::trivial(s)});
    }
  }
  return ProjectionGame(game.alice_count() + 1, game.bob_count(), s,
                        std::move(edges));
}

ProjectionGame regular_half(const ProjectionGame& game, int c, int d,
                            std::uint64_t seed) {
  const int n_u = game.alice_count();
  std::vector<int> bob_stubs;
  bob_stubs.reserve(static_cast<size_t>(d) *
                    static_cast<size_t>(game.bob_count()));
  for (int v = 0; v < game.bob_count(); ++v) {
    for (int i = 0; i < d; ++i) bob_stubs.push_back(v);
  }
  Rng rng(seed);
  rng.shuffle(bob_stubs);
  std::vector<Edge> edges;
  for (const Edge& e : game.edges()) edges.push_back({e.u, e.v, 1.0, e.constraint});
  const auto trivial = ProjectionConstraint::trivial(game.alphabet_size());
  size_t stub = 0;
  for (int u = 0; u < n_u; ++u) {
    for (int i = 0; i < c; ++i) {
      edges.push_back({n_u + u, bob_stubs[stub++], 1.0, trivial});
    }
  }
  return ProjectionGame(2 * n_u, game.bob_count(), game.alphabet_size(),
                        std::move(edges));
}

SpectralGap game_gap(const ProjectionGame& game) {
  return spectral_gap(markov_chain(symmetrize(game)));
}

}  // namespace

MarkovChain markov_chain(const SymmetrizedGame& sg) {
  const Eigen::MatrixXd p = pair_weights(sg);
  MarkovChain chain;
  for (int v = 0; v < sg.bob_count; ++v) {
    if (sg.bob_measure[v] > 0.0) chain.vertices.push_back(v);
  }
  const auto n = static_cast<Eigen::Index>(chain.vertices.size());
  chain.transition = Eigen::MatrixXd::Zero(n, n);
  chain.stationary.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int v = chain.vertices[static_cast<size_t>(i)];
    double row_mass = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      row_mass += p(v, chain.vertices[static_cast<size_t>(j)]);
    }
    if (row_mass <= 0.0) {
      throw DomainError("Bob question " + std::to_string(v) +
                        " has positive measure but no symmetrized mass");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      chain.transition(i, j) =
          p(v, chain.vertices[static_cast<size_t>(j)]) / row_mass;
    }
    chain.stationary[i] = sg.bob_measure[v];
  }
  chain.stationary /= chain.stationary.sum();
  return chain;
}

SpectralGap spectral_gap(const MarkovChain& chain) {
  const Eigen::MatrixXd& a = chain.transition;
  const Eigen::VectorXd& pi = chain.stationary;
  const Eigen::Index n = a.rows();
  if (a.cols() != n || pi.size() != n || n == 0) {
    throw DimensionError("chain matrix and stationary measure disagree");
  }
  if ((a.array() < 0.0).any() || (pi.array() <= 0.0).any()) {
    throw ContractViolation("chain entries must be nonnegative");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(a.row(i).sum() - 1.0) > kChainTolerance) {
      throw ContractViolation("chain is not row-stochastic");
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(pi[i] * a(i, j) - pi[j] * a(j, i)) > kChainTolerance) {
        throw ContractViolation("chain is not reversible");
      }
    }
  }
  if (n == 1) return {1.0, 0.0, 0.0};
  const Eigen::VectorXd root = pi.array().sqrt();
  Eigen::MatrixXd s = root.asDiagonal() * a * root.cwiseInverse().asDiagonal();
  s = 0.5 * (s + s.transpose()).eval();
  const auto eig = jacobi_eigen<double>(s);
  SpectralGap out;
  out.lambda2 = eig.eigenvalues[1];
  out.lambda_min = eig.eigenvalues[n - 1];
  out.gap = 1.0 - std::max(std::abs(out.lambda2), std::abs(out.lambda_min));
  return out;
}

bool is_expanding(const ProjectionGame& game, double c) {
  return game_gap(game).gap >= c;
}

ExpandResult make_expanding(const ProjectionGame& game,
                            const ExpandOptions& options) {
  ExpandResult out;
  if (!options.regular) {
    out.game = trivial_half(game);
    out.spectrum = game_gap(out.game);
    out.seed_used = options.seed;
  } else {
    const auto [c, d] = regular_degrees(game);
    bool found = false;
    for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
      const std::uint64_t seed =
          options.seed + static_cast<std::uint64_t>(attempt);
      ProjectionGame candidate = regular_half(game, c, d, seed);
      const SpectralGap gap = game_gap(candidate);
      if (gap.gap > 1e-12) {
        out.game = std::move(candidate);
        out.spectrum = gap;
        out.seed_used = seed;
        found = true;
        break;
      }
    }
    if (!found) {
      throw ContractViolation("no regular gadget with positive gap found");
    }
  }
  if (!(out.spectrum.gap > 0.0)) {
    throw ContractViolation("expanded game has no spectral gap");
  }
  if (enumeration_states(game) <= options.value_check_cap) {
    const EnumerationLimits limits{options.value_check_cap};
    out.value_before = value(game, limits);
    out.value_after = value(out.game, limits);
    out.value_checked = true;
    if (std::abs(out.value_after - (0.5 + 0.5 * out.value_before)) >
        kTolerance) {
      throw ContractViolation("expanded game violates val' = 1/2 + val/2");
    }
  }
  return out;
}

}  // namespace parrep
