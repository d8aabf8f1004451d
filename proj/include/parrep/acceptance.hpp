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

#ifndef PARREP_ACCEPTANCE_HPP_
#define PARREP_ACCEPTANCE_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace parrep {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  int cases = 0;
  int violations = 0;
  std::string detail;
};

inline constexpr int kCriterionCount = 14;

// Runs criterion `id` (1..14) with instances derived from `seed`.
CriterionResult run_criterion(int id, std::uint64_t seed);

// Runs every criterion in order.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

}  // namespace parrep

#endif  // PARREP_ACCEPTANCE_HPP_
