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

#include "parrep/io.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "parrep/errors.hpp"

namespace parrep {
namespace {

// Splits the input into whitespace-separated tokens, one line at a time,
// skipping comments and blank lines.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next nonempty line, or false at end of input.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      std::istringstream ss(line);
      tokens.clear();
      for (std::string t; ss >> t;) tokens.push_back(std::move(t));
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::vector<std::string> expect_line(const char* what) {
    std::vector<std::string> tokens;
    if (!next(tokens)) fail(std::string("unexpected end of input, expected ") + what);
    return tokens;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("line " + std::to_string(line_no_) + ": " + message);
  }

  void expect_magic(const char* kind) {
    const auto t = expect_line("header");
    if (t.size() != 2 || t[0] != kind || t[1] != "1") {
      fail(std::string("expected '") + kind + " 1'");
    }
  }

  // "<key> <int>"
  int keyed_int(const char* key) {
    const auto t = expect_line(key);
    if (t.size() != 2 || t[0] != key) fail(std::string("expected '") + key + " <n>'");
    return to_int(t[1]);
  }

  int to_int(const std::string& s) const {
    int x = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || p != s.data() + s.size()) {
      fail("expected an integer, got '" + s + "'");
    }
    return x;
  }

  double to_real(const std::string& s) const {
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
      fail("expected a real number, got '" + s + "'");
    }
    return x;
  }

  void expect_end() {
    std::vector<std::string> tokens;
    if (next(tokens)) fail("trailing content");
  }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

template <typename T>
T load_with(const std::filesystem::path& path, T (*reader)(std::istream&)) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return reader(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

ProjectionGame read_game(std::istream& in) {
  LineReader r(in);
  r.expect_magic("parrep-game");
  const int alice = r.keyed_int("alice");
  const int bob = r.keyed_int("bob");
  const int sigma = r.keyed_int("alphabet");
  const int n = r.keyed_int("edges");
  if (alice < 1 || bob < 1 || sigma < 1 || n < 1) {
    r.fail("sizes and edge count must be positive");
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    const auto t = r.expect_line("an edge");
    if (t.size() < 3) r.fail("edge needs '<u> <v> <weight> [beta:alpha ...]'");
    Edge e;
    e.u = r.to_int(t[0]);
    e.v = r.to_int(t[1]);
    e.weight = r.to_real(t[2]);
    std::vector<int> image(static_cast<size_t>(sigma), kRejected);
    for (size_t j = 3; j < t.size(); ++j) {
      const auto colon = t[j].find(':');
      if (colon == std::string::npos) r.fail("expected 'beta:alpha', got '" + t[j] + "'");
      const int b = r.to_int(t[j].substr(0, colon));
      const int a = r.to_int(t[j].substr(colon + 1));
      if (b < 0 || b >= sigma || a < 0 || a >= sigma) r.fail("label out of range");
      if (image[static_cast<size_t>(b)] != kRejected) r.fail("repeated beta");
      image[static_cast<size_t>(b)] = a;
    }
    e.constraint = ProjectionConstraint::from_image(sigma, std::move(image));
    edges.push_back(std::move(e));
  }
  r.expect_end();
  try {
    return ProjectionGame(alice, bob, sigma, std::move(edges));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid game: ") + e.what());
  }
}

void write_game(std::ostream& out, const ProjectionGame& game) {
  out << "parrep-game 1\n"
      << "alice " << game.alice_count() << "\n"
      << "bob " << game.bob_count() << "\n"
      << "alphabet " << game.alphabet_size() << "\n"
      << "edges " << game.edges().size() << "\n";
  for (const Edge& e : game.edges()) {
    out << e.u << ' ' << e.v << ' ' << format_real(e.weight);
    for (const auto& [b, a] : e.constraint.pairs()) out << ' ' << b << ':' << a;
    out << '\n';
  }
}

VectorAssignment read_certificate(std::istream& in) {
  LineReader r(in);
  r.expect_magic("parrep-certificate");
  const int bob = r.keyed_int("bob");
  const int sigma = r.keyed_int("alphabet");
  const int omega = r.keyed_int("omega");
  if (bob < 1 || sigma < 1 || omega < 1) r.fail("sizes must be positive");
  auto t = r.expect_line("weights");
  if (t.empty() || t[0] != "weights" || static_cast<int>(t.size()) != omega + 1) {
    r.fail("expected 'weights' followed by " + std::to_string(omega) + " reals");
  }
  Eigen::VectorXd w(omega);
  for (int i = 0; i < omega; ++i) w(i) = r.to_real(t[static_cast<size_t>(i + 1)]);
  Eigen::MatrixXd values(bob * sigma, omega);
  for (int row = 0; row < bob * sigma; ++row) {
    t = r.expect_line("a value row");
    if (static_cast<int>(t.size()) != omega) {
      r.fail("value row needs " + std::to_string(omega) + " entries");
    }
    for (int i = 0; i < omega; ++i) values(row, i) = r.to_real(t[static_cast<size_t>(i)]);
  }
  r.expect_end();
  try {
    VectorAssignment f(bob, sigma, std::move(w), std::move(values));
    validate(f);
    return f;
  } catch (const Error& e) {
    throw ParseError(std::string("invalid certificate: ") + e.what());
  }
}

void write_certificate(std::ostream& out, const VectorAssignment& f) {
  out << "parrep-certificate 1\n"
      << "bob " << f.bob_count << "\n"
      << "alphabet " << f.alphabet_size << "\n"
      << "omega " << f.omega_size() << "\n"
      << "weights";
  for (Eigen::Index i = 0; i < f.weights.size(); ++i) out << ' ' << format_real(f.weights(i));
  out << '\n';
  for (Eigen::Index row = 0; row < f.values.rows(); ++row) {
    for (Eigen::Index i = 0; i < f.values.cols(); ++i) {
      if (i > 0) out << ' ';
      out << format_real(f.values(row, i));
    }
    out << '\n';
  }
}

PartitionSystem read_partition_system(std::istream& in) {
  LineReader r(in);
  r.expect_magic("parrep-gadget");
  PartitionSystem ps;
  ps.m = r.keyed_int("m");
  ps.L = r.keyed_int("L");
  ps.k = r.keyed_int("k");
  ps.d = r.keyed_int("d");
  if (ps.m < 1 || ps.L < 1 || ps.k < 1) r.fail("m, L and k must be positive");
  for (int i = 0; i < ps.L; ++i) {
    const auto t = r.expect_line("a partition");
    if (t.empty() || t[0] != "partition" || static_cast<int>(t.size()) != ps.m + 1) {
      r.fail("expected 'partition' followed by " + std::to_string(ps.m) + " parts");
    }
    std::vector<int> part;
    for (size_t j = 1; j < t.size(); ++j) {
      const int p = r.to_int(t[j]);
      if (p < 0 || p >= ps.k) r.fail("part index out of range");
      part.push_back(p);
    }
    ps.partitions.push_back(std::move(part));
  }
  r.expect_end();
  return ps;
}

void write_partition_system(std::ostream& out, const PartitionSystem& ps) {
  out << "parrep-gadget 1\n"
      << "m " << ps.m << "\nL " << ps.L << "\nk " << ps.k << "\nd " << ps.d
      << "\n";
  for (const auto& part : ps.partitions) {
    out << "partition";
    for (int p : part) out << ' ' << p;
    out << '\n';
  }
}

SetCoverInstance read_setcover(std::istream& in) {
  LineReader r(in);
  r.expect_magic("parrep-setcover");
  SetCoverInstance inst;
  inst.ground_size = r.keyed_int("ground");
  const int k = r.keyed_int("sets");
  if (inst.ground_size < 0 || k < 0) r.fail("sizes must be nonnegative");
  for (int s = 0; s < k; ++s) {
    const auto t = r.expect_line("a set");
    if (t.empty() || t[0] != "set") r.fail("expected 'set <elements>'");
    std::vector<int> elems;
    for (size_t j = 1; j < t.size(); ++j) {
      const int e = r.to_int(t[j]);
      if (e < 0 || e >= inst.ground_size) r.fail("element out of range");
      elems.push_back(e);
    }
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    inst.sets.push_back(std::move(elems));
  }
  r.expect_end();
  return inst;
}

void write_setcover(std::ostream& out, const SetCoverInstance& inst) {
  out << "parrep-setcover 1\n"
      << "ground " << inst.ground_size << "\n"
      << "sets " << inst.sets.size() << "\n";
  for (const auto& s : inst.sets) {
    out << "set";
    for (int e : s) out << ' ' << e;
    out << '\n';
  }
}

ProjectionGame load_game(const std::filesystem::path& path) {
  return load_with(path, &read_game);
}
VectorAssignment load_certificate(const std::filesystem::path& path) {
  return load_with(path, &read_certificate);
}
PartitionSystem load_partition_system(const std::filesystem::path& path) {
  return load_with(path, &read_partition_system);
}
SetCoverInstance load_setcover(const std::filesystem::path& path) {
  return load_with(path, &read_setcover);
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() +
                ": " + ec.message());
  }
}

}  // namespace parrep
