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

#include "parrep/acceptance.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "parrep/cli.hpp"
#include "parrep/enumerate.hpp"
#include "parrep/errors.hpp"
#include "parrep/io.hpp"
#include "parrep/random.hpp"
#include "parrep/reductions.hpp"
#include "parrep/relax.hpp"
#include "parrep/replab.hpp"
#include "parrep/rounding.hpp"
#include "parrep/spectral.hpp"
#include "parrep/transfer.hpp"
#include "parrep/vector_assignment.hpp"

namespace parrep {
namespace {

constexpr double kExact = 1e-9;
constexpr double kBound = 1e-7;

// Instance seed for case i of a criterion, decorrelated by SplitMix64.
std::uint64_t derive(std::uint64_t seed, int criterion, int i) {
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL +
                    static_cast<std::uint64_t>(criterion) * 0xBF58476D1CE4E5B9ULL +
                    static_cast<std::uint64_t>(i);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(6);
  ss << x;
  return ss.str();
}

CriterionResult make(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

void finish(CriterionResult& r, std::string detail) {
  r.passed = r.violations == 0 && r.cases > 0;
  r.detail = std::move(detail);
}

// Small game with sizes drawn from `rng`.
ProjectionGame small_game(Rng& rng, int max_alice, int max_bob, int max_sigma,
                          double reject) {
  RandomGameOptions o;
  o.alice_count = 1 + rng.below(max_alice);
  o.bob_count = 1 + rng.below(max_bob);
  o.alphabet_size = 2 + rng.below(max_sigma - 1);
  o.density = rng.uniform(0.3, 1.0);
  o.reject_prob = rng.bernoulli(0.5) ? reject : 0.0;
  o.planted = rng.bernoulli(0.25);
  o.seed = rng.engine()();
  return random_projection_game(o);
}

// Game from the val+ experiments: 2-3 questions per side, 2-3 labels.
ProjectionGame certificate_game(std::uint64_t seed) {
  Rng rng(seed);
  RandomGameOptions o;
  o.alice_count = 2 + rng.below(2);
  o.bob_count = 2 + rng.below(2);
  o.alphabet_size = 2 + rng.below(2);
  o.density = 0.8;
  o.reject_prob = 0.2;
  o.seed = rng.engine()();
  return random_projection_game(o);
}

// With `classical` off the search starts from random fractional points
// only, which yields genuinely fractional certificates for the rounding
// criteria.
ValPlusCertificate search(const ProjectionGame& game, std::uint64_t seed,
                          bool classical = true) {
  ValPlusSearchOptions o;
  o.omega_size = 4;
  o.iterations = 500;
  o.random_starts = 2;
  o.seed = seed;
  o.classical_start = classical;
  return val_plus_search(game, o);
}

CriterionResult feige(std::uint64_t) {
  auto r = make(1, "Feige game exact values");
  const FeigeReport f = feige_suite();
  r.cases = 5;
  r.violations += std::abs(f.value - 0.5) > kExact;
  r.violations += std::abs(f.collision_sq - 0.5) > kExact;
  r.violations += std::abs(f.tensor_value - 0.5) > kExact;
  r.violations += std::abs(f.tensor_strategy_collision_sq - 0.25) > kExact;
  r.violations += f.tensor_collision_sq < 0.25 - kExact ||
                  f.tensor_collision_sq > 0.4715;
  finish(r, "val=" + fmt(f.value) + " col=" + fmt(f.collision_sq) +
                " val2=" + fmt(f.tensor_value) + " strategy=" +
                fmt(f.tensor_strategy_collision_sq) + " col2=" +
                fmt(f.tensor_collision_sq));
  return r;
}

CriterionResult sandwich(std::uint64_t seed) {
  auto r = make(2, "val <= ||G|| <= sqrt(val)");
  double worst = -1.0;
  for (int i = 0; i < 200; ++i) {
    Rng rng(derive(seed, 2, i));
    const ProjectionGame g = small_game(rng, 4, 4, 4, 0.3);
    const double val = value(g);
    const double col = collision_value_sq(g);
    const double lo = val - std::sqrt(col);
    const double hi = col - val;
    worst = std::max({worst, lo, hi});
    ++r.cases;
    r.violations += lo > kExact || hi > kExact;
  }
  finish(r, "200 games, max excess " + fmt(worst));
  return r;
}

CriterionResult product_criterion(int id, std::uint64_t seed) {
  static const char* names[] = {"||G(x)H||^2 <= ||G||^2",
                                "||G(x)H|| <= lambda+(G) ||H||",
                                "||G(x)H||^2 <= phi(||G||^2) ||H||^2"};
  auto r = make(id, names[id - 3]);
  const ProductSweepReport rep = product_theorem_sweep(50, derive(seed, 3, 0));
  double slack = 1e300;
  for (const ProductPair& p : rep.pairs) {
    ++r.cases;
    switch (id) {
      case 3:
        r.violations += !p.monotone_ok;
        slack = std::min(slack, p.collision_g - p.collision_gh);
        break;
      case 4:
        r.violations += !p.simple_ok;
        slack = std::min(slack, p.simple_bound - std::sqrt(p.collision_gh));
        break;
      default:
        r.violations += !p.product_ok;
        slack = std::min(slack, p.product_bound - p.collision_gh);
        break;
    }
  }
  finish(r, std::to_string(r.cases) + " pairs (Feige pair included), min slack " +
                fmt(slack));
  return r;
}

CriterionResult repetition(std::uint64_t seed) {
  auto r = make(6, "val(G^k) <= phi(val)^(k/2) and corollary forms, k = 2, 3");
  const EnumerationLimits limits{16777216.0};
  int small_cases = 0;
  for (int i = 0; i < 20; ++i) {
    RandomGameOptions o;
    o.alice_count = 2;
    o.bob_count = 2;
    o.alphabet_size = 2;
    o.density = 1.0;
    // Every fourth game rejects most answers, so that small values occur.
    o.reject_prob = i % 4 == 3 ? 0.7 : 0.2;
    o.seed = derive(seed, 6, i);
    const RepetitionReport rep =
        parrep_report(random_projection_game(o), 3, limits);
    for (const RepetitionRow& row : rep.rows) {
      if (row.k < 2) continue;
      ++r.cases;
      small_cases += row.small_applicable;
      r.violations += !row.computed || !row.value_ok || !row.small_ok ||
                      !row.rao_ok || !row.chain_ok;
    }
  }
  finish(r, "20 games x k in {2,3}; small-value form applicable in " +
                std::to_string(small_cases) + " rows");
  return r;
}

CriterionResult expander(std::uint64_t seed) {
  auto r = make(7, "1 - ||G||^2 <= 36 eps/gamma + 18 eps on expanding games");
  int tried = 0;
  double worst = -1e300;
  for (int i = 0; i < 2000 && r.cases < 20; ++i) {
    Rng rng(derive(seed, 7, i));
    RandomGameOptions o;
    o.alice_count = 2 + rng.below(3);
    o.bob_count = 2 + rng.below(3);
    o.alphabet_size = 2 + rng.below(2);
    o.density = 0.8;
    o.seed = rng.engine()();
    ExpandOptions eo;
    eo.seed = rng.engine()();
    const ExpandResult x = make_expanding(random_projection_game(o), eo);
    const ExpanderCheck c = expander_approx_check(x.game);
    ++tried;
    // Perfect games make both sides zero; keep the informative ones.
    if (!c.applicable || c.epsilon <= 1e-6) continue;
    ++r.cases;
    r.violations += !c.holds;
    worst = std::max(worst, c.lhs - c.rhs);
  }
  if (r.cases < 20) ++r.violations;
  finish(r, std::to_string(r.cases) + " applicable games out of " +
                std::to_string(tried) + ", max lhs - rhs " + fmt(worst));
  return r;
}

CriterionResult threshold(std::uint64_t seed) {
  auto r = make(8, "threshold rounding identity and psi(rho) bound");
  double worst_identity = 0.0;
  double worst_psi = 1e300;
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t s = derive(seed, 8, i);
    const ProjectionGame game = certificate_game(s);
    const VectorAssignment normalized =
        normalize_for_rounding(
            derandomize(game, search(game, s, false).assignment));
    const ThresholdRounding tr = threshold_round(normalized);
    const Eigen::VectorXd before = vertex_norms_sq(normalized);
    // E_tau ||T_v h_tau||^2 summed interval by interval.
    Eigen::VectorXd after = Eigen::VectorXd::Zero(before.size());
    for (size_t w = 0; w < tr.measure.intervals.size(); ++w) {
      for (const ThresholdInterval& iv : tr.measure.intervals[w]) {
        const FractionalAssignment h = tr.rounded.slice(iv.slice);
        after += normalized.weights(static_cast<Eigen::Index>(w)) * iv.weight *
                 h.rowwise().squaredNorm();
      }
    }
    const double identity = (after - before).cwiseAbs().maxCoeff();
    const double rho = game_norm_sq(game, normalized);
    const double rounded = game_norm_sq(game, tr.rounded);
    const double margin = rounded - psi(std::min(rho, 1.0));
    worst_identity = std::max(worst_identity, identity);
    worst_psi = std::min(worst_psi, margin);
    ++r.cases;
    r.violations += identity > 1e-12 || margin < -kExact;
  }
  finish(r, "100 certificates, identity error " + fmt(worst_identity) +
                ", min psi margin " + fmt(worst_psi));
  return r;
}

CriterionResult sampling(std::uint64_t seed) {
  auto r = make(9, "correlated sampling mean >= (1-g)/(1+g) - 3 sigma/sqrt(N)");
  double worst = 1e300;
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t s = derive(seed, 9, i);
    const ProjectionGame game = certificate_game(s);
    ExtractOptions opt;
    opt.seed = s;
    opt.trials = 10000;
    const ExtractionReport x =
        extract_assignment(game, search(game, s, false).assignment, opt);
    worst = std::min(worst, x.mean_value - (x.sampling_bound -
                                            3.0 * x.stddev / std::sqrt(10000.0)));
    ++r.cases;
    r.violations += !x.sampling_ok;
  }
  finish(r, "20 certificates x 10^4 seeds, min margin " + fmt(worst));
  return r;
}

std::vector<JointSample> joint_distribution(Rng& rng) {
  for (;;) {
    const int n = 1 + rng.below(6);
    std::vector<JointSample> out(static_cast<size_t>(n));
    double total = 0.0;
    double mass = 0.0;
    for (auto& s : out) {
      s.a = rng.bernoulli(0.2) ? 0.0 : rng.uniform();
      s.b = rng.bernoulli(0.2) ? 0.0 : rng.uniform();
      s.z = rng.bernoulli(0.7) ? 1 : 0;
      s.weight = rng.uniform() + 1e-3;
      total += s.weight;
    }
    for (auto& s : out) {
      s.weight /= total;
      mass += s.weight * (s.a + s.b);
    }
    if (mass > 1e-9) return out;
  }
}

CriterionResult inequalities(std::uint64_t seed) {
  auto r = make(10, "min/geometric-mean/max inequalities by exact summation");
  int failures[3] = {0, 0, 0};
  for (int i = 0; i < 1000; ++i) {
    Rng rng(derive(seed, 10, i));
    const auto d = joint_distribution(rng);
    failures[0] += !check_gm_vs_min(d).holds;
    failures[1] += !check_cor_gm_vs_min(d).holds;
    failures[2] += !check_min_vs_max(d).holds;
    r.cases += 3;
  }
  r.violations = failures[0] + failures[1] + failures[2];
  finish(r, "1000 distributions per inequality; violations " +
                std::to_string(failures[0]) + "/" + std::to_string(failures[1]) +
                "/" + std::to_string(failures[2]));
  return r;
}

CriterionResult approximation(std::uint64_t seed) {
  auto r = make(11, "val+ certificates lower-bound ||G||^2; tensor ratios multiply");
  double worst_bound = 1e300;
  double worst_product = 0.0;
  for (int i = 0; i < 30; ++i) {
    const std::uint64_t s = derive(seed, 11, i);
    const ProjectionGame game = certificate_game(s);
    const ValPlusCertificate c = search(game, s);
    const double margin =
        collision_value_sq(game) - collision_lower_bound(c.ratio);
    worst_bound = std::min(worst_bound, margin);
    ++r.cases;
    r.violations += margin < -kBound;
  }
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t s = derive(seed, 11, 1000 + i);
    const auto [g, h] = random_game_pair(s);
    const ValPlusCertificate cg = search(g, s);
    const ValPlusCertificate ch = search(h, s + 1);
    const ValPlusCertificate ct = tensor_certificate(cg, ch);
    const ProjectionGame gh = tensor(g, h);
    const double recomputed = certificate_ratio(gh, ct.assignment);
    const double err = std::max(std::abs(recomputed - cg.ratio * ch.ratio),
                                std::abs(ct.ratio - cg.ratio * ch.ratio));
    const double margin =
        collision_value_sq(gh) - collision_lower_bound(ct.ratio);
    worst_product = std::max(worst_product, err);
    worst_bound = std::min(worst_bound, margin);
    ++r.cases;
    r.violations += err > kExact || margin < -kBound;
  }
  finish(r, "30 certificates + 20 tensor pairs, min margin " +
                fmt(worst_bound) + ", max product error " + fmt(worst_product));
  return r;
}

CriterionResult setcover(std::uint64_t seed) {
  auto r = make(12, "set-cover completeness and partition-system stability");
  std::string sizes;
  for (int i = 0; i < 10; ++i) {
    const std::uint64_t s = derive(seed, 12, i);
    const ProjectionGame game = random_biregular_game(4, 4, 2, 2, true, s);
    // With L = 2 partitions, d > 2 means no two parts from different
    // partitions cover the ground set.
    const PartitionSystem ps = build_partition_system(8, 2, 2, s, 3, 64, 2);
    const SetCoverInstance inst = build_setcover(game, ps);
    const ValueSolution sol = solve_value(game);
    const auto planted = assignment_cover(inst, sol.bob);
    const auto exact = exact_setcover(inst, game.bob_count());
    bool stable = true;
    Rng rng(s);
    for (int t = 0; t < 5; ++t) {
      std::vector<int> order(static_cast<size_t>(ps.L * ps.k));
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(order);
      stable = stable && verify_partition_system(ps, 2, order) == ps.d;
    }
    ++r.cases;
    const bool ok = std::abs(sol.value - 1.0) <= kExact &&
                    is_cover(inst, planted) &&
                    static_cast<int>(planted.size()) == game.bob_count() &&
                    exact.has_value() &&
                    static_cast<int>(exact->size()) == game.bob_count() &&
                    agreement_soundness(game, sol.bob) == 0.0 && stable;
    r.violations += !ok;
    sizes += (sizes.empty() ? "" : ",") +
             (exact ? std::to_string(exact->size()) : std::string("none"));
  }
  finish(r, "10 instances with |V| = 4, exact optimum sizes " + sizes);
  return r;
}

CriterionResult expanding(std::uint64_t seed) {
  auto r = make(13, "make_expanding: val' = 1/2 + val/2, gap > 0");
  double worst = 0.0;
  double min_gap = 1e300;
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t s = derive(seed, 13, i);
    Rng rng(s);
    ExpandOptions eo;
    eo.seed = rng.engine()();
    ProjectionGame g;
    if (i % 2 == 0) {
      g = small_game(rng, 3, 3, 3, 0.2);
    } else {
      eo.regular = true;
      g = random_biregular_game(3, 3, 2, 2, false, rng.engine()());
    }
    const ExpandResult x = make_expanding(g, eo);
    const double err = std::abs(value(x.game) - (0.5 + 0.5 * value(g)));
    worst = std::max(worst, err);
    min_gap = std::min(min_gap, x.spectrum.gap);
    ++r.cases;
    r.violations += err > kExact || !(x.spectrum.gap > 0.0);
  }
  finish(r, "20 inputs (10 regular), max identity error " + fmt(worst) +
                ", min gap " + fmt(min_gap));
  return r;
}

struct CliRun {
  int code = 0;
  std::string report;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = cli::run(args, out, err);
  r.report = out.str();
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CriterionResult determinism(std::uint64_t seed) {
  auto r = make(14, "CLI reports are reproducible");
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() /
                       ("parrep-accept-" + std::to_string(::getpid()) + "-" +
                        std::to_string(seed));
  fs::create_directories(dir);
  const std::string game = (dir / "game.txt").string();
  const std::string bireg = (dir / "bireg.txt").string();
  const std::string gadget = (dir / "gadget.txt").string();
  const std::string sc = (dir / "sc.txt").string();
  {
    RandomGameOptions o;
    o.alice_count = 2;
    o.bob_count = 2;
    o.alphabet_size = 2;
    o.density = 1.0;
    o.reject_prob = 0.2;
    o.seed = derive(seed, 14, 0);
    std::ostringstream a, b, c, d;
    write_game(a, random_projection_game(o));
    const ProjectionGame bg =
        random_biregular_game(4, 4, 2, 2, true, derive(seed, 14, 1));
    write_game(b, bg);
    const PartitionSystem ps =
        build_partition_system(8, 2, 2, derive(seed, 14, 2), 3, 64, 2);
    write_partition_system(c, ps);
    write_setcover(d, build_setcover(bg, ps));
    write_file_atomic(game, a.str());
    write_file_atomic(bireg, b.str());
    write_file_atomic(gadget, c.str());
    write_file_atomic(sc, d.str());
  }
  const std::string s = std::to_string(seed);
  const std::vector<std::vector<std::string>> commands = {
      {"game", "val", game},
      {"game", "colval", game},
      {"game", "tensor", game, game},
      {"game", "sym", game},
      {"spectral", "gap", game},
      {"spectral", "expandify", game, "--seed", s},
      {"spectral", "expandify", bireg, "--regular", "--seed", s},
      {"relax", "lambda-plus", game},
      {"relax", "valplus", game, "--seed", s},
      {"relax", "expander-check", game},
      {"round", "extract", game, "--seed", s, "--trials", "500"},
      {"rep", "report", game, "--kmax", "2"},
      {"rep", "few", game, "--kmax", "2"},
      {"rep", "sweep", "--pairs", "3", "--seed", s},
      {"rep", "feige-suite"},
      {"reduce", "plan", "--eps", "0.01", "--alpha", "0.5", "--c", "5"},
      {"reduce", "gadget", "--m", "8", "--L", "2", "--k", "2", "--seed", s},
      {"reduce", "setcover", bireg, "--gadget", gadget},
      {"reduce", "solve", sc, "--exact"},
      {"rep", "feige-suite", "--format", "csv"},
      {"relax", "valplus", game, "--seed", s, "--format", "csv"},
  };
  std::string mismatched;
  for (const auto& cmd : commands) {
    const CliRun a = run_cli(cmd);
    const CliRun b = run_cli(cmd);
    ++r.cases;
    const bool same = a.code == b.code && (a.code == 0 || a.code == 1) &&
                      !a.report.empty() &&
                      cli::strip_timestamp(a.report) ==
                          cli::strip_timestamp(b.report);
    if (!same) {
      ++r.violations;
      mismatched += " [" + cmd[0] + " " + cmd[1] + "]";
    }
  }
  // The same through -o, comparing the written files.
  {
    const std::string out = (dir / "report.json").string();
    std::vector<std::string> cmd = {"rep", "sweep", "--pairs", "2",
                                    "--seed", s,   "-o",      out};
    run_cli(cmd);
    const std::string first = slurp(out);
    run_cli(cmd);
    const std::string second = slurp(out);
    ++r.cases;
    if (first.empty() ||
        cli::strip_timestamp(first) != cli::strip_timestamp(second)) {
      ++r.violations;
      mismatched += " [-o]";
    }
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  finish(r, std::to_string(r.cases) + " commands run twice" +
                (mismatched.empty() ? "" : "; differing:" + mismatched));
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  switch (id) {
    case 1: return feige(seed);
    case 2: return sandwich(seed);
    case 3:
    case 4:
    case 5: return product_criterion(id, seed);
    case 6: return repetition(seed);
    case 7: return expander(seed);
    case 8: return threshold(seed);
    case 9: return sampling(seed);
    case 10: return inequalities(seed);
    case 11: return approximation(seed);
    case 12: return setcover(seed);
    case 13: return expanding(seed);
    case 14: return determinism(seed);
    default: throw DomainError("no acceptance criterion " + std::to_string(id));
  }
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    try {
      out.push_back(run_criterion(id, seed));
    } catch (const std::exception& e) {
      CriterionResult r;
      r.id = id;
      r.name = "criterion " + std::to_string(id);
      r.detail = std::string("error: ") + e.what();
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace parrep
