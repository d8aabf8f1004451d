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


// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if
// any criterion fails.
//
//   parrep_acceptance [--seed N] [--only ID]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "parrep/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 7;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--seed N] [--only ID]\n", argv[0]);
      return 2;
    }
  }
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int id = 1; id <= parrep::kCriterionCount; ++id) {
    if (only != 0 && id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    parrep::CriterionResult r;
    try {
      r = parrep::run_criterion(id, seed);
    } catch (const std::exception& e) {
      r.id = id;
      r.name = "criterion " + std::to_string(id);
      r.detail = std::string("error: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("%s %2d  %s  [%d cases, %d violations, %.1fs] %s\n",
                r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.cases,
                r.violations, secs, r.detail.c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("%s: %d failed, %.1fs total\n", failed == 0 ? "ALL PASS" : "FAILURES",
              failed, total);
  return failed == 0 ? 0 : 1;
}
