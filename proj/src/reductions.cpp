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

#include "parrep/reductions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "parrep/errors.hpp"
#include "parrep/random.hpp"

namespace parrep {
namespace {

using Mask = std::uint64_t;

// Fixed-width bitset over the ground set of a set-cover instance.
class Bits {
 public:
  explicit Bits(int n) : words_(static_cast<size_t>((n + 63) / 64), 0) {}

  void set(int i) { words_[static_cast<size_t>(i / 64)] |= Mask{1} << (i % 64); }
  bool test(int i) const {
    return (words_[static_cast<size_t>(i / 64)] >> (i % 64)) & 1U;
  }
  void merge(const Bits& o) {
    for (size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
  }
  // |o \ this|
  int gain(const Bits& o) const {
    int n = 0;
    for (size_t w = 0; w < words_.size(); ++w) {
      n += std::popcount(o.words_[w] & ~words_[w]);
    }
    return n;
  }
  int count() const {
    int n = 0;
    for (Mask w : words_) n += std::popcount(w);
    return n;
  }

 private:
  std::vector<Mask> words_;
};

std::vector<Bits> set_bits(const SetCoverInstance& inst) {
  std::vector<Bits> out;
  out.reserve(inst.sets.size());
  for (const auto& s : inst.sets) {
    Bits b(inst.ground_size);
    for (int e : s) b.set(e);
    out.push_back(std::move(b));
  }
  return out;
}

struct CoverSearch {
  std::vector<Mask> masks;      // in search order
  std::vector<int> partition;   // partition of each mask
  Mask full = 0;
  std::vector<char> used;

  bool exists(size_t start, int remaining, Mask covered) {
    if (covered == full) return true;
    if (remaining == 0) return false;
    for (size_t p = start; p < masks.size(); ++p) {
      const int part = partition[p];
      if (used[static_cast<size_t>(part)]) continue;
      if ((masks[p] | covered) == covered) continue;
      used[static_cast<size_t>(part)] = 1;
      const bool hit = exists(p + 1, remaining - 1, covered | masks[p]);
      used[static_cast<size_t>(part)] = 0;
      if (hit) return true;
    }
    return false;
  }
};

struct ExactSearch {
  const SetCoverInstance& inst;
  const std::vector<Bits>& bits;
  std::vector<std::vector<int>> containing;  // sets per element
  int max_size = 0;
  long long node_cap = 0;
  long long nodes = 0;
  int bound = 0;  // only covers strictly smaller than this are accepted
  std::vector<int> best;
  std::vector<int> current;

  void run(Bits& covered) {
    if (++nodes > node_cap) {
      throw CapExceeded("exact set cover exceeded the node cap of " +
                        std::to_string(node_cap));
    }
    const int uncovered = inst.ground_size - covered.count();
    if (uncovered == 0) {
      if (static_cast<int>(current.size()) < bound) {
        bound = static_cast<int>(current.size());
        best = current;
      }
      return;
    }
    int max_gain = 0;
    for (const Bits& b : bits) max_gain = std::max(max_gain, covered.gain(b));
    if (max_gain == 0) return;
    const int need = (uncovered + max_gain - 1) / max_gain;
    if (static_cast<int>(current.size()) + need >= bound) return;

    int pick = -1;
    size_t fewest = SIZE_MAX;
    for (int e = 0; e < inst.ground_size; ++e) {
      if (covered.test(e)) continue;
      const size_t n = containing[static_cast<size_t>(e)].size();
      if (n < fewest) {
        fewest = n;
        pick = e;
      }
    }
    for (int s : containing[static_cast<size_t>(pick)]) {
      Bits next = covered;
      next.merge(bits[static_cast<size_t>(s)]);
      current.push_back(s);
      run(next);
      current.pop_back();
    }
  }
};

}  // namespace

AmplificationPlan amplification_plan(double epsilon, double alpha, double c) {
  if (!(alpha > 0.0) || !(c > 0.0) || !(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw DomainError(
        "amplification plan needs alpha > 0, c > 0 and 0 < epsilon < 1");
  }
  AmplificationPlan p;
  p.epsilon = epsilon;
  p.alpha = alpha;
  p.c = c;
  const double ratio = 3.0 * c / alpha;
  p.k = static_cast<int>(std::ceil(ratio - 1e-12));
  p.epsilon1 = std::exp((std::log(ratio) + alpha * std::log(epsilon)) / c);
  p.log_alphabet = p.k * std::exp(-c * std::log(p.epsilon1));
  p.log_soundness = 0.5 * p.k * std::log(4.0 * p.epsilon1);
  p.log_epsilon = std::log(epsilon);
  p.soundness_ok = p.log_soundness <= p.log_epsilon + 1e-12;
  // (k/2)(ln 4 + ln(ratio)/c) + (k alpha / 2c) ln eps <= ln eps.
  const double a = 0.5 * p.k * (std::log(4.0) + std::log(ratio) / c);
  const double slope = p.k * alpha / (2.0 * c) - 1.0;
  p.epsilon_threshold = slope > 0.0 ? std::exp(-a / slope) : 0.0;
  return p;
}

int verify_partition_system(const PartitionSystem& ps, int dmax,
                            std::span<const int> set_order) {
  if (ps.m < 1 || ps.L < 1 || ps.k < 1 ||
      static_cast<int>(ps.partitions.size()) != ps.L) {
    throw DomainError("malformed partition system");
  }
  if (ps.L * ps.k > kMaxPartitionSets || dmax > kMaxCoverDepth ||
      ps.m > kMaxGroundBits) {
    throw CapExceeded("partition system exceeds the verification caps (L*k <= " +
                      std::to_string(kMaxPartitionSets) + ", d <= " +
                      std::to_string(kMaxCoverDepth) + ", m <= " +
                      std::to_string(kMaxGroundBits) + ")");
  }
  const int n = ps.L * ps.k;
  std::vector<Mask> masks(static_cast<size_t>(n), 0);
  for (int i = 0; i < ps.L; ++i) {
    const auto& part = ps.partitions[static_cast<size_t>(i)];
    if (static_cast<int>(part.size()) != ps.m) {
      throw DomainError("partition " + std::to_string(i) + " has wrong length");
    }
    for (int e = 0; e < ps.m; ++e) {
      const int j = part[static_cast<size_t>(e)];
      if (j < 0 || j >= ps.k) throw DomainError("part index out of range");
      masks[static_cast<size_t>(i * ps.k + j)] |= Mask{1} << e;
    }
  }
  std::vector<int> order(static_cast<size_t>(n));
  if (set_order.empty()) {
    std::iota(order.begin(), order.end(), 0);
  } else {
    order.assign(set_order.begin(), set_order.end());
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> ident(static_cast<size_t>(n));
    std::iota(ident.begin(), ident.end(), 0);
    if (sorted != ident) throw DomainError("set order is not a permutation");
  }
  CoverSearch search;
  for (int idx : order) {
    search.masks.push_back(masks[static_cast<size_t>(idx)]);
    search.partition.push_back(idx / ps.k);
  }
  search.full = ps.m == 64 ? ~Mask{0} : (Mask{1} << ps.m) - 1;
  search.used.assign(static_cast<size_t>(ps.L), 0);
  for (int d = 1; d <= dmax; ++d) {
    if (search.exists(0, d, 0)) return d;
  }
  return dmax + 1;
}

PartitionSystem build_partition_system(int m, int L, int k, std::uint64_t seed,
                                       int target_d, int retries, int dmax) {
  if (m < 1 || L < 1 || k < 1 || retries < 1) {
    throw DomainError("partition system needs positive m, L, k and retries");
  }
  int best_d = 0;
  for (int r = 0; r < retries; ++r) {
    Rng rng(seed + static_cast<std::uint64_t>(r));
    PartitionSystem ps;
    ps.m = m;
    ps.L = L;
    ps.k = k;
    ps.partitions.assign(static_cast<size_t>(L),
                         std::vector<int>(static_cast<size_t>(m)));
    for (auto& part : ps.partitions) {
      for (int& j : part) j = rng.below(k);
    }
    ps.d = verify_partition_system(ps, dmax);
    ps.verified = true;
    if (ps.d >= target_d) return ps;
    best_d = std::max(best_d, ps.d);
  }
  throw ContractViolation("no partition system reached d >= " +
                          std::to_string(target_d) + " after " +
                          std::to_string(retries) + " seeds; best d = " +
                          std::to_string(best_d));
}

SetCoverInstance build_setcover(const ProjectionGame& game,
                                const PartitionSystem& ps) {
  const int sigma = game.alphabet_size();
  if (sigma > ps.L) {
    throw ContractViolation("alphabet of size " + std::to_string(sigma) +
                            " exceeds the " + std::to_string(ps.L) +
                            " partitions of the gadget");
  }
  for (int u = 0; u < game.alice_count(); ++u) {
    if (static_cast<int>(game.alice_edges(u).size()) != ps.k) {
      throw ContractViolation("Alice question " + std::to_string(u) +
                              " has degree " +
                              std::to_string(game.alice_edges(u).size()) +
                              ", gadget needs " + std::to_string(ps.k));
    }
  }
  SetCoverInstance inst;
  inst.alice_count = game.alice_count();
  inst.bob_count = game.bob_count();
  inst.m = ps.m;
  inst.ground_size = game.alice_count() * ps.m;
  inst.sets.resize(static_cast<size_t>(game.bob_count() * sigma));
  for (int v = 0; v < game.bob_count(); ++v) {
    for (int b = 0; b < sigma; ++b) inst.labels.emplace_back(v, b);
  }
  for (int u = 0; u < game.alice_count(); ++u) {
    const auto& incident = game.alice_edges(u);
    for (size_t j = 0; j < incident.size(); ++j) {
      const Edge& e = game.edges()[static_cast<size_t>(incident[j])];
      for (int b = 0; b < sigma; ++b) {
        const int a = e.constraint.project(b);
        if (a == kRejected) continue;
        auto& set = inst.sets[static_cast<size_t>(e.v * sigma + b)];
        const auto& part = ps.partitions[static_cast<size_t>(a)];
        for (int x = 0; x < ps.m; ++x) {
          if (part[static_cast<size_t>(x)] == static_cast<int>(j)) {
            set.push_back(u * ps.m + x);
          }
        }
      }
    }
  }
  for (auto& s : inst.sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return inst;
}

std::vector<int> assignment_cover(const SetCoverInstance& inst,
                                  const BobAssignment& f) {
  if (static_cast<int>(f.labels.size()) != inst.bob_count) {
    throw DimensionError("assignment size does not match the instance");
  }
  const int sigma =
      inst.bob_count == 0 ? 0 : static_cast<int>(inst.sets.size()) / inst.bob_count;
  std::vector<int> out;
  for (int v = 0; v < inst.bob_count; ++v) {
    out.push_back(v * sigma + f.labels[static_cast<size_t>(v)]);
  }
  return out;
}

bool is_cover(const SetCoverInstance& inst, std::span<const int> chosen) {
  std::vector<char> hit(static_cast<size_t>(inst.ground_size), 0);
  for (int s : chosen) {
    if (s < 0 || s >= static_cast<int>(inst.sets.size())) return false;
    for (int e : inst.sets[static_cast<size_t>(s)]) hit[static_cast<size_t>(e)] = 1;
  }
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

std::optional<std::vector<int>> greedy_setcover(const SetCoverInstance& inst) {
  if (inst.ground_size > kGreedyGroundCap) {
    throw CapExceeded("greedy set cover is capped at " +
                      std::to_string(kGreedyGroundCap) + " elements");
  }
  const auto bits = set_bits(inst);
  Bits covered(inst.ground_size);
  std::vector<int> chosen;
  while (covered.count() < inst.ground_size) {
    int pick = -1;
    int gain = 0;
    for (size_t s = 0; s < bits.size(); ++s) {
      const int g = covered.gain(bits[s]);
      if (g > gain) {
        gain = g;
        pick = static_cast<int>(s);
      }
    }
    if (pick < 0) return std::nullopt;
    covered.merge(bits[static_cast<size_t>(pick)]);
    chosen.push_back(pick);
  }
  return chosen;
}

std::optional<std::vector<int>> exact_setcover(const SetCoverInstance& inst,
                                               int size_cap,
                                               long long node_cap) {
  if (size_cap < 0) throw DomainError("size cap must be nonnegative");
  const auto bits = set_bits(inst);
  ExactSearch search{inst, bits, {}, size_cap, node_cap, 0, size_cap + 1, {}, {}};
  search.containing.resize(static_cast<size_t>(inst.ground_size));
  for (size_t s = 0; s < inst.sets.size(); ++s) {
    for (int e : inst.sets[s]) {
      search.containing[static_cast<size_t>(e)].push_back(static_cast<int>(s));
    }
  }
  if (inst.ground_size <= kGreedyGroundCap) {
    if (auto g = greedy_setcover(inst); g && static_cast<int>(g->size()) <= size_cap) {
      search.bound = static_cast<int>(g->size());
      search.best = *g;
    }
  }
  Bits covered(inst.ground_size);
  search.run(covered);
  if (search.bound > size_cap) return std::nullopt;
  std::sort(search.best.begin(), search.best.end());
  return search.best;
}

double agreement_soundness(const ProjectionGame& game, const BobAssignment& f) {
  if (static_cast<int>(f.labels.size()) != game.bob_count()) {
    throw DimensionError("assignment size does not match the game");
  }
  if (game.alice_count() == 0) return 0.0;
  const size_t degree = game.alice_edges(0).size();
  int good = 0;
  for (int u = 0; u < game.alice_count(); ++u) {
    const auto& incident = game.alice_edges(u);
    if (incident.size() != degree) {
      throw ContractViolation("agreement soundness needs regular Alice degree");
    }
    std::vector<int> answers;
    for (int id : incident) {
      const Edge& e = game.edges()[static_cast<size_t>(id)];
      answers.push_back(
          e.constraint.project(f.labels[static_cast<size_t>(e.v)]));
    }
    std::sort(answers.begin(), answers.end());
    const bool defined = answers.empty() || answers.front() != kRejected;
    const bool distinct =
        std::adjacent_find(answers.begin(), answers.end()) == answers.end();
    if (defined && distinct) ++good;
  }
  return static_cast<double>(good) / game.alice_count();
}

}  // namespace parrep
