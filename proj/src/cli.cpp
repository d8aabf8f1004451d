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

#include "parrep/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "parrep/acceptance.hpp"
#include "parrep/enumerate.hpp"
#include "parrep/errors.hpp"
#include "parrep/io.hpp"
#include "parrep/random.hpp"
#include "parrep/reductions.hpp"
#include "parrep/relax.hpp"
#include "parrep/replab.hpp"
#include "parrep/rounding.hpp"
#include "parrep/spectral.hpp"
#include "parrep/symmetrize.hpp"
#include "parrep/transfer.hpp"

namespace parrep::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Globals {
  std::string format = "json";
  std::string output;
  double cap = kDefaultEnumerationCap;
  double tol = kTolerance;
  std::uint64_t seed = 0;
  int trials = 10000;
};

struct Report {
  Json results = Json::object();
  Json checks = Json::object();

  void check(const std::string& name, bool ok) { checks[name] = ok; }
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Json& c) { return c.get<bool>(); });
  }
};

Json describe(const ProjectionGame& g) {
  return Json{{"alice_count", g.alice_count()},
              {"bob_count", g.bob_count()},
              {"alphabet_size", g.alphabet_size()},
              {"edges", g.edges().size()}};
}

std::string game_text(const ProjectionGame& g) {
  std::ostringstream ss;
  write_game(ss, g);
  return ss.str();
}

template <typename Writer, typename T>
void save(const std::string& path, Writer writer, const T& item) {
  if (path.empty()) return;
  std::ostringstream ss;
  writer(ss, item);
  write_file_atomic(path, ss.str());
}

Json to_json(const Eigen::VectorXd& x) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) a.push_back(x(i));
  return a;
}

// ---------------------------------------------------------------- game

void game_val(const Globals& g, const std::string& file, Report& r) {
  const ProjectionGame game = load_game(file);
  const ValueSolution sol = solve_value(game, {g.cap});
  r.results["game"] = describe(game);
  r.results["value"] = sol.value;
  r.results["bob"] = sol.bob.labels;
  r.results["alice"] = sol.alice;
}

void game_colval(const Globals& g, const std::string& file, Report& r) {
  const ProjectionGame game = load_game(file);
  const CollisionSolution sol = solve_collision(game, {g.cap});
  const double val = value(game, {g.cap});
  r.results["game"] = describe(game);
  r.results["collision_value_sq"] = sol.value_sq;
  r.results["collision_value"] = std::sqrt(sol.value_sq);
  r.results["value"] = val;
  r.results["bob"] = sol.bob.labels;
  r.check("value_le_collision",
          val <= std::sqrt(sol.value_sq) + g.tol);
  r.check("collision_le_sqrt_value", sol.value_sq <= val + g.tol);
}

void game_tensor(const std::vector<std::string>& files, int power,
                 const std::string& game_out, Report& r) {
  ProjectionGame out = load_game(files.at(0));
  if (files.size() > 1) out = tensor(out, load_game(files[1]));
  if (power > 1) out = tensor_power(out, power);
  save(game_out, &write_game, out);
  r.results["game"] = describe(out);
  r.results["game_text"] = game_text(out);
}

void game_sym(const std::string& file, const Globals& g, Report& r) {
  const SymmetrizedGame sg = symmetrize(load_game(file));
  Json triples = Json::array();
  double total = 0.0;
  for (const SymTriple& t : sg.triples) {
    Json tau = Json::array();
    for (const auto& [b1, b2] : t.tau) tau.push_back({b1, b2});
    triples.push_back(
        {{"v1", t.v1}, {"v2", t.v2}, {"weight", t.weight}, {"tau", tau}});
    total += t.weight;
  }
  r.results["bob_count"] = sg.bob_count;
  r.results["alphabet_size"] = sg.alphabet_size;
  r.results["triple_count"] = sg.triples.size();
  r.results["weight_sum"] = total;
  r.results["triples"] = std::move(triples);
  r.check("weights_sum_to_one", std::abs(total - 1.0) <= g.tol);
}

// ---------------------------------------------------------------- spectral

void spectral_gap_cmd(const Globals& g, const std::string& file, Report& r) {
  const ProjectionGame game = load_game(file);
  const MarkovChain chain = markov_chain(symmetrize(game));
  const SpectralGap sp = spectral_gap(chain);
  r.results["game"] = describe(game);
  r.results["vertices"] = chain.vertices;
  r.results["gap"] = sp.gap;
  r.results["lambda2"] = sp.lambda2;
  r.results["lambda_min"] = sp.lambda_min;
  r.check("gap_nonnegative", sp.gap >= -g.tol);
}

void spectral_expandify(const Globals& g, const std::string& file,
                        bool regular, const std::string& game_out,
                        Report& r) {
  const ProjectionGame game = load_game(file);
  ExpandOptions opt;
  opt.regular = regular;
  opt.seed = g.seed;
  opt.value_check_cap = g.cap;
  const ExpandResult x = make_expanding(game, opt);
  save(game_out, &write_game, x.game);
  r.results["input"] = describe(game);
  r.results["game"] = describe(x.game);
  r.results["gap"] = x.spectrum.gap;
  r.results["lambda2"] = x.spectrum.lambda2;
  r.results["lambda_min"] = x.spectrum.lambda_min;
  r.results["seed_used"] = x.seed_used;
  r.results["value_checked"] = x.value_checked;
  if (x.value_checked) {
    r.results["value_before"] = x.value_before;
    r.results["value_after"] = x.value_after;
    r.check("value_identity",
            std::abs(x.value_after - (0.5 + 0.5 * x.value_before)) <= g.tol);
  }
  r.results["game_text"] = game_text(x.game);
  r.check("gap_positive", x.spectrum.gap > 0.0);
}

// ---------------------------------------------------------------- relax

struct SearchFlags {
  int omega = 4;
  int iterations = 2000;
  int starts = 3;
};

ValPlusSearchOptions search_options(const Globals& g, const SearchFlags& s) {
  ValPlusSearchOptions o;
  o.omega_size = s.omega;
  o.iterations = s.iterations;
  o.random_starts = s.starts;
  o.seed = g.seed;
  o.limits = {g.cap};
  return o;
}

void relax_lambda_plus(const Globals& g, const std::string& file, Report& r) {
  const ProjectionGame game = load_game(file);
  const LambdaPlusResult lp = lambda_plus(game, {g.cap});
  const double col = collision_value_sq(game, {g.cap});
  r.results["game"] = describe(game);
  r.results["lambda_plus"] = lp.value;
  r.results["lambda_plus_sq"] = lp.value * lp.value;
  r.results["labeling"] = lp.labeling;
  r.results["magnitudes"] = to_json(lp.magnitudes);
  r.results["labelings_checked"] = lp.labelings_checked;
  r.results["collision_value_sq"] = col;
  r.check("lambda_plus_ge_collision", lp.value >= std::sqrt(col) - g.tol);
}

void relax_valplus(const Globals& g, const std::string& file,
                   const SearchFlags& s, const std::string& cert_out,
                   Report& r) {
  const ProjectionGame game = load_game(file);
  const ValPlusInterval iv = val_plus_interval(game, search_options(g, s));
  save(cert_out, &write_certificate, iv.certificate.assignment);
  r.results["game"] = describe(game);
  r.results["lower"] = iv.lower;
  r.results["upper"] = iv.upper;
  r.results["collision_value_sq"] = iv.collision_value_sq;
  r.results["search_ratio"] = iv.search_ratio;
  r.results["certificate_ratio"] = iv.certificate.ratio;
  r.results["approximation_bound"] = collision_lower_bound(iv.search_ratio);
  r.check("interval_ordered", iv.lower <= iv.upper + g.tol);
  r.check("approximation",
          iv.collision_value_sq >=
              collision_lower_bound(iv.search_ratio) - 1e-7);
}

void relax_expander(const Globals& g, const std::string& file, Report& r) {
  const ProjectionGame game = load_game(file);
  const ExpanderCheck c = expander_approx_check(game, {g.cap});
  r.results["game"] = describe(game);
  r.results["gamma"] = c.gamma;
  r.results["epsilon"] = c.epsilon;
  r.results["lambda_plus"] = c.lambda_plus;
  r.results["collision_value_sq"] = c.delta;
  r.results["lhs"] = c.lhs;
  r.results["rhs"] = c.rhs;
  r.results["applicable"] = c.applicable;
  r.check("bound", !c.applicable || c.holds);
}

// ---------------------------------------------------------------- round

void round_extract(const Globals& g, const std::string& file,
                   const std::string& cert_file, const SearchFlags& s,
                   Report& r) {
  const ProjectionGame game = load_game(file);
  const VectorAssignment f =
      cert_file.empty() ? val_plus_search(game, search_options(g, s)).assignment
                        : load_certificate(cert_file);
  ExtractOptions opt;
  opt.seed = g.seed;
  opt.trials = g.trials;
  const ExtractionReport x = extract_assignment(game, f, opt);
  r.results["game"] = describe(game);
  r.results["input_ratio"] = x.input_ratio;
  r.results["rho"] = x.rho;
  r.results["psi_rho"] = x.psi_rho;
  r.results["rounded_norm_sq"] = x.rounded_norm_sq;
  r.results["gamma"] = x.gamma;
  r.results["sampling_bound"] = x.sampling_bound;
  r.results["approximation_bound"] = x.approximation_bound;
  r.results["agreement_bound"] = x.agreement_bound;
  r.results["expected_value"] = x.expected_value;
  r.results["trials"] = x.trials;
  r.results["mean_value"] = x.mean_value;
  r.results["stddev"] = x.stddev;
  r.results["best"] = x.best.labels;
  r.results["best_sym_value"] = x.best_sym_value;
  r.results["best_value"] = x.best_value;
  r.results["zero_support"] = x.zero_support;
  r.check("psi", x.psi_ok);
  r.check("chain", x.chain_ok);
  r.check("sampling", x.sampling_ok);
}

// ---------------------------------------------------------------- rep

void rep_report(const Globals& g, const std::string& file, int k_max,
                Report& r) {
  const ProjectionGame game = load_game(file);
  const RepetitionReport rep = parrep_report(game, k_max, {g.cap});
  Json rows = Json::array();
  bool chain = true, bound = true, small = true, rao = true, mono = true;
  for (const RepetitionRow& row : rep.rows) {
    Json j{{"k", row.k}, {"computed", row.computed}};
    if (!row.computed) {
      j["refusal"] = row.refusal;
      rows.push_back(std::move(j));
      continue;
    }
    j["value"] = row.value;
    j["collision_value_sq"] = row.collision_sq;
    j["chain_bound"] = row.chain_bound;
    j["phi_bound"] = row.phi_bound;
    j["value_bound"] = row.value_bound;
    j["small_applicable"] = row.small_applicable;
    j["small_bound"] = row.small_bound;
    j["rao_bound"] = row.rao_bound;
    j["chain_ok"] = row.chain_ok;
    j["value_ok"] = row.value_ok;
    j["small_ok"] = row.small_ok;
    j["rao_ok"] = row.rao_ok;
    j["monotone_ok"] = row.monotone_ok;
    chain = chain && row.chain_ok;
    bound = bound && row.value_ok;
    small = small && row.small_ok;
    rao = rao && row.rao_ok;
    mono = mono && row.monotone_ok;
    rows.push_back(std::move(j));
  }
  r.results["game"] = describe(game);
  r.results["value"] = rep.value;
  r.results["collision_value_sq"] = rep.collision_sq;
  r.results["rows"] = std::move(rows);
  r.check("chain", chain);
  r.check("value_bound", bound);
  r.check("small_value_bound", small);
  r.check("high_value_bound", rao);
  r.check("monotone", mono);
}

void rep_few(const Globals& g, const std::string& file, int k_max,
             Report& r) {
  const ProjectionGame game = load_game(file);
  const FewRepsReport rep = few_reps_report(game, k_max, {g.cap});
  Json rows = Json::array();
  for (const FewRepsRow& row : rep.rows) {
    Json j{{"k", row.k}, {"computed", row.computed}};
    if (row.computed) {
      j["collision_value_sq"] = row.collision_sq;
      j["deficit"] = row.deficit;
      j["t"] = row.t;
      j["t_over_sqrt_k"] = row.t_over_sqrt_k;
      j["monotone_ok"] = row.monotone_ok;
    } else {
      j["refusal"] = row.refusal;
    }
    rows.push_back(std::move(j));
  }
  r.results["game"] = describe(game);
  r.results["epsilon"] = rep.epsilon;
  r.results["rows"] = std::move(rows);
  r.check("deficit_monotone", rep.ok());
}

void rep_sweep(const Globals& g, int pairs, Report& r) {
  const ProductSweepReport rep = product_theorem_sweep(pairs, g.seed, {g.cap});
  Json rows = Json::array();
  int mono = 0, simple = 0, product = 0;
  for (const ProductPair& p : rep.pairs) {
    rows.push_back({{"label", p.label},
                    {"collision_g", p.collision_g},
                    {"collision_h", p.collision_h},
                    {"collision_gh", p.collision_gh},
                    {"lambda_plus_g", p.lambda_plus_g},
                    {"simple_bound", p.simple_bound},
                    {"product_bound", p.product_bound},
                    {"monotone_ok", p.monotone_ok},
                    {"simple_ok", p.simple_ok},
                    {"product_ok", p.product_ok}});
    mono += !p.monotone_ok;
    simple += !p.simple_ok;
    product += !p.product_ok;
  }
  r.results["pairs"] = std::move(rows);
  r.results["violations"] = {
      {"monotone", mono}, {"simple", simple}, {"product", product}};
  r.check("monotone", mono == 0);
  r.check("simple_bound", simple == 0);
  r.check("product_bound", product == 0);
}

void rep_feige(const Globals& g, Report& r) {
  const FeigeReport f = feige_suite();
  r.results["value"] = f.value;
  r.results["collision_value_sq"] = f.collision_sq;
  r.results["tensor_value"] = f.tensor_value;
  r.results["tensor_strategy_collision_sq"] = f.tensor_strategy_collision_sq;
  r.results["tensor_collision_sq"] = f.tensor_collision_sq;
  r.results["tensor_upper_bound"] = f.tensor_upper_bound;
  r.results["tensor_optimum"] = f.tensor_optimum.labels;
  r.check("value", std::abs(f.value - 0.5) <= g.tol);
  r.check("collision_value_sq", std::abs(f.collision_sq - 0.5) <= g.tol);
  r.check("tensor_value", std::abs(f.tensor_value - 0.5) <= g.tol);
  r.check("tensor_strategy",
          std::abs(f.tensor_strategy_collision_sq - 0.25) <= g.tol);
  r.check("tensor_collision_range", f.tensor_collision_sq >= 0.25 - g.tol &&
                                        f.tensor_collision_sq <= 0.4715);
}

// ---------------------------------------------------------------- reduce

void reduce_plan(double eps, double alpha, double c, Report& r) {
  const AmplificationPlan p = amplification_plan(eps, alpha, c);
  r.results["k"] = p.k;
  r.results["epsilon1"] = p.epsilon1;
  r.results["log_alphabet"] = p.log_alphabet;
  r.results["log_soundness"] = p.log_soundness;
  r.results["log_epsilon"] = p.log_epsilon;
  r.results["soundness_ok"] = p.soundness_ok;
  r.results["epsilon_threshold"] = p.epsilon_threshold;
  // The closed-form threshold and the direct comparison must agree.
  const bool below = std::log(eps) <= std::log(p.epsilon_threshold) + 1e-9;
  const bool boundary =
      std::abs(std::log(eps) - std::log(p.epsilon_threshold)) <= 1e-9;
  r.check("threshold_consistent", boundary || p.soundness_ok == below);
}

struct GadgetFlags {
  int m = 16;
  int L = 3;
  int k = 2;
  int target_d = 0;
  int dmax = kMaxCoverDepth;
  int retries = 64;
};

void reduce_gadget(const Globals& g, const GadgetFlags& f,
                   const std::string& gadget_out, Report& r) {
  const PartitionSystem ps =
      build_partition_system(f.m, f.L, f.k, g.seed, f.target_d, f.retries,
                             f.dmax);
  save(gadget_out, &write_partition_system, ps);
  std::vector<int> order(static_cast<size_t>(ps.L * ps.k));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(g.seed);
  rng.shuffle(order);
  const int shuffled = verify_partition_system(ps, f.dmax, order);
  r.results["m"] = ps.m;
  r.results["L"] = ps.L;
  r.results["k"] = ps.k;
  r.results["d"] = ps.d;
  r.results["d_exceeds_dmax"] = ps.d > f.dmax;
  r.results["partitions"] = ps.partitions;
  r.check("target_met", ps.d >= f.target_d);
  r.check("shuffle_stable", shuffled == ps.d);
}

void reduce_setcover(const Globals& g, const std::string& game_file,
                     const std::string& gadget_file,
                     const std::string& sc_out, Report& r) {
  const ProjectionGame game = load_game(game_file);
  const PartitionSystem ps = load_partition_system(gadget_file);
  const SetCoverInstance inst = build_setcover(game, ps);
  save(sc_out, &write_setcover, inst);
  Json sizes = Json::array();
  for (const auto& s : inst.sets) sizes.push_back(s.size());
  r.results["game"] = describe(game);
  r.results["ground_size"] = inst.ground_size;
  r.results["set_count"] = inst.sets.size();
  r.results["set_sizes"] = std::move(sizes);
  r.results["log_ground"] = std::log(static_cast<double>(inst.ground_size));
  const ValueSolution sol = solve_value(game, {g.cap});
  r.results["value"] = sol.value;
  r.results["agreement_soundness"] = agreement_soundness(game, sol.bob);
  if (sol.value >= 1.0 - g.tol) {
    const auto cover = assignment_cover(inst, sol.bob);
    r.results["assignment_cover"] = cover;
    r.check("completeness", is_cover(inst, cover) &&
                                static_cast<int>(cover.size()) ==
                                    game.bob_count());
  }
}

void reduce_solve(const std::string& file, bool exact, int size_cap,
                  Report& r) {
  const SetCoverInstance inst = load_setcover(file);
  const auto greedy = greedy_setcover(inst);
  r.results["ground_size"] = inst.ground_size;
  r.results["set_count"] = inst.sets.size();
  r.results["coverable"] = greedy.has_value();
  if (!greedy) return;
  r.results["greedy"] = *greedy;
  r.results["greedy_size"] = greedy->size();
  r.check("greedy_is_cover", is_cover(inst, *greedy));
  if (!exact) return;
  const int cap = size_cap > 0 ? size_cap : static_cast<int>(greedy->size());
  const auto best = exact_setcover(inst, cap);
  if (best) {
    r.results["exact"] = *best;
    r.results["exact_size"] = best->size();
    r.check("exact_is_cover", is_cover(inst, *best));
    r.check("greedy_ge_exact", greedy->size() >= best->size());
  } else {
    r.results["exact"] = nullptr;
  }
}

// ---------------------------------------------------------------- accept

void accept_all(const Globals& g, Report& r) {
  Json rows = Json::array();
  for (const CriterionResult& c : run_acceptance(g.seed)) {
    rows.push_back({{"id", c.id},
                    {"name", c.name},
                    {"passed", c.passed},
                    {"cases", c.cases},
                    {"violations", c.violations},
                    {"detail", c.detail}});
    r.check("criterion_" + std::to_string(c.id), c.passed);
  }
  r.results["criteria"] = std::move(rows);
}

// ---------------------------------------------------------------- output

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void flatten(const Json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
              rows);
    }
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], prefix + "." + std::to_string(i), rows);
    }
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else if (j.is_null()) {
    rows.emplace_back(prefix, "");
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

std::string to_csv(const Json& doc) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(doc, "", rows);
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) out += csv_field(k) + "," + csv_field(v) + "\n";
  return out;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Every option of `app` and its selected subcommands, as given or defaulted.
void echo_config(const CLI::App* app, Json& config) {
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "h") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_expected_max() > 1 && res.size() != 1) {
        config[name] = res;
      } else if (opt->get_type_size() == 0) {
        config[name] = true;
      } else {
        config[name] = res.empty() ? std::string() : res.back();
      }
    } else if (opt->get_type_size() == 0) {
      config[name] = false;
    } else {
      config[name] = opt->get_default_str();
    }
  }
  for (const CLI::App* sub : app->get_subcommands()) echo_config(sub, config);
}

std::string command_path(const CLI::App* app) {
  std::string path;
  for (const CLI::App* sub = app; sub != nullptr;) {
    const auto subs = sub->get_subcommands();
    if (subs.empty()) break;
    sub = subs.front();
    path += (path.empty() ? "" : " ") + sub->get_name();
  }
  return path;
}

}  // namespace

std::string strip_timestamp(const std::string& report) {
  if (!report.empty() && report.front() == '{') {
    Json doc = Json::parse(report);
    doc.erase("timestamp");
    return doc.dump(2);
  }
  std::istringstream in(report);
  std::string out;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("timestamp.", 0) == 0) continue;
    out += line + "\n";
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  Globals g;
  if (const char* env = std::getenv("PARREP_CAP"); env != nullptr && *env) {
    char* end = nullptr;
    const double cap = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(cap >= 1.0)) {
      err << "error: PARREP_CAP must be a number >= 1, got '" << env << "'\n";
      return kExitUsage;
    }
    g.cap = cap;
  }

  CLI::App app("Numerical experiments on projection games and their repetition.",
               "parrep-lab");
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("-o,--output", g.output, "Write the report to this file");
  app.add_option("--cap", g.cap, "Largest |Sigma|^|V| enumerated exactly")
      ->check(CLI::Range(1.0, 1e300))
      ->capture_default_str();
  app.add_option("--tol", g.tol, "Tolerance of report checks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--trials", g.trials, "Sampling trials")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  std::function<void(Report&)> action;
  std::string file, file2, cert_out, game_out, gadget_file, sc_out;
  std::vector<std::string> files;
  int power = 1;
  int k_max = 3;
  int pairs = 50;
  bool regular = false;
  bool exact = false;
  bool all = false;
  int size_cap = 0;
  double eps = 0.01, alpha = 0.5, c = 5.0;
  SearchFlags search;
  GadgetFlags gadget;

  auto add_search_flags = [&search](CLI::App* sub) {
    sub->add_option("--omega", search.omega, "Size of the measure space")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--iterations", search.iterations, "Iterations per start")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--starts", search.starts, "Random starts")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  };

  // game
  CLI::App* game = app.add_subcommand("game", "Values of a single game");
  game->require_subcommand(1);
  {
    auto* s = game->add_subcommand("val", "Exact value");
    s->add_option("game", file, "Game file")->required();
    s->callback([&] { action = [&](Report& r) { game_val(g, file, r); }; });
    s = game->add_subcommand("colval", "Exact collision value");
    s->add_option("game", file, "Game file")->required();
    s->callback([&] { action = [&](Report& r) { game_colval(g, file, r); }; });
    s = game->add_subcommand("tensor", "Tensor product or power");
    s->add_option("games", files, "One or two game files")
        ->required()
        ->expected(1, 2);
    s->add_option("--power", power, "Tensor power of the product")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--game-out", game_out, "Write the product game here");
    s->callback([&] {
      action = [&](Report& r) { game_tensor(files, power, game_out, r); };
    });
    s = game->add_subcommand("sym", "Symmetrized game");
    s->add_option("game", file, "Game file")->required();
    s->callback([&] { action = [&](Report& r) { game_sym(file, g, r); }; });
  }

  // spectral
  CLI::App* spectral = app.add_subcommand("spectral", "Spectral gap tools");
  spectral->require_subcommand(1);
  {
    auto* s = spectral->add_subcommand("gap", "Spectral gap of the game");
    s->add_option("game", file, "Game file")->required();
    s->callback(
        [&] { action = [&](Report& r) { spectral_gap_cmd(g, file, r); }; });
    s = spectral->add_subcommand("expandify", "Make the game expanding");
    s->add_option("game", file, "Game file")->required();
    s->add_flag("--regular", regular, "Keep the game regular");
    s->add_option("--game-out", game_out, "Write the new game here");
    s->callback([&] {
      action = [&](Report& r) {
        spectral_expandify(g, file, regular, game_out, r);
      };
    });
  }

  // relax
  CLI::App* relax = app.add_subcommand("relax", "Relaxations of the value");
  relax->require_subcommand(1);
  {
    auto* s = relax->add_subcommand("lambda-plus", "Exact lambda+");
    s->add_option("game", file, "Game file")->required();
    s->callback(
        [&] { action = [&](Report& r) { relax_lambda_plus(g, file, r); }; });
    s = relax->add_subcommand("valplus", "Certified val+ interval");
    s->add_option("game", file, "Game file")->required();
    add_search_flags(s);
    s->add_option("--certificate-out", cert_out, "Write the certificate here");
    s->callback([&] {
      action = [&](Report& r) { relax_valplus(g, file, search, cert_out, r); };
    });
    s = relax->add_subcommand("expander-check", "Expander approximation");
    s->add_option("game", file, "Game file")->required();
    s->callback(
        [&] { action = [&](Report& r) { relax_expander(g, file, r); }; });
  }

  // round
  CLI::App* round = app.add_subcommand("round", "Rounding");
  round->require_subcommand(1);
  {
    auto* s = round->add_subcommand("extract", "Extract a Bob assignment");
    s->add_option("game", file, "Game file")->required();
    s->add_option("--certificate", file2,
                  "Certificate file (default: run the val+ search)");
    add_search_flags(s);
    s->callback([&] {
      action = [&](Report& r) { round_extract(g, file, file2, search, r); };
    });
  }

  // rep
  CLI::App* rep = app.add_subcommand("rep", "Repetition experiments");
  rep->require_subcommand(1);
  {
    auto* s = rep->add_subcommand("report", "Repetition bounds up to kmax");
    s->add_option("game", file, "Game file")->required();
    s->add_option("--kmax", k_max, "Largest power")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->callback([&] { action = [&](Report& r) { rep_report(g, file, k_max, r); }; });
    s = rep->add_subcommand("few", "Collision deficit trend");
    s->add_option("game", file, "Game file")->required();
    s->add_option("--kmax", k_max, "Largest power")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->callback([&] { action = [&](Report& r) { rep_few(g, file, k_max, r); }; });
    s = rep->add_subcommand("sweep", "Product bounds on seeded pairs");
    s->add_option("--pairs", pairs, "Number of seeded pairs")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    s->callback([&] { action = [&](Report& r) { rep_sweep(g, pairs, r); }; });
    s = rep->add_subcommand("feige-suite", "Non-interactive agreement game");
    s->callback([&] { action = [&](Report& r) { rep_feige(g, r); }; });
  }

  // reduce
  CLI::App* reduce = app.add_subcommand("reduce", "Set-cover reduction");
  reduce->require_subcommand(1);
  {
    auto* s = reduce->add_subcommand("plan", "Amplification parameters");
    s->add_option("--eps", eps, "Target soundness")->capture_default_str();
    s->add_option("--alpha", alpha, "Alphabet exponent")->capture_default_str();
    s->add_option("--c", c, "Soundness exponent")->capture_default_str();
    s->callback([&] { action = [&](Report& r) { reduce_plan(eps, alpha, c, r); }; });
    s = reduce->add_subcommand("gadget", "Verified partition system");
    s->add_option("--m", gadget.m, "Ground size")->capture_default_str();
    s->add_option("--L", gadget.L, "Partitions")->capture_default_str();
    s->add_option("--k", gadget.k, "Parts per partition")->capture_default_str();
    s->add_option("--target-d", gadget.target_d, "Required cover size")
        ->capture_default_str();
    s->add_option("--dmax", gadget.dmax, "Search depth")->capture_default_str();
    s->add_option("--retries", gadget.retries, "Seeds to try")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--gadget-out", game_out, "Write the gadget here");
    s->callback([&] {
      action = [&](Report& r) { reduce_gadget(g, gadget, game_out, r); };
    });
    s = reduce->add_subcommand("setcover", "Build the set-cover instance");
    s->add_option("game", file, "Game file")->required();
    s->add_option("--gadget", gadget_file, "Partition system file")->required();
    s->add_option("--setcover-out", sc_out, "Write the instance here");
    s->callback([&] {
      action = [&](Report& r) {
        reduce_setcover(g, file, gadget_file, sc_out, r);
      };
    });
    s = reduce->add_subcommand("solve", "Solve a set-cover instance");
    s->add_option("instance", file, "Set-cover file")->required();
    s->add_flag("--exact", exact, "Also run the exact solver");
    s->add_option("--size-cap", size_cap,
                  "Largest exact cover searched (default: greedy size)")
        ->capture_default_str();
    s->callback(
        [&] { action = [&](Report& r) { reduce_solve(file, exact, size_cap, r); }; });
  }

  // accept
  CLI::App* accept = app.add_subcommand("accept", "Acceptance suite");
  accept->add_flag("--all", all, "Run every criterion")->required();
  accept->callback([&] { action = [&](Report& r) { accept_all(g, r); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Report report;
  try {
    action(report);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command_path(&app);
  Json config = Json::object();
  echo_config(&app, config);
  doc["config"] = std::move(config);
  doc["results"] = std::move(report.results);
  doc["checks"] = report.checks;
  doc["passed"] = report.passed();
  const double elapsed = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - started)
                             .count();
  doc["timestamp"] = {{"utc", utc_now()}, {"elapsed_ms", elapsed}};

  const std::string text =
      g.format == "csv" ? to_csv(doc) : doc.dump(2) + "\n";
  try {
    if (g.output.empty()) {
      out << text;
    } else {
      write_file_atomic(g.output, text);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return report.passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace parrep::cli
