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

// Plain-text file formats. All of them are line based, start with a
// "parrep-<kind> 1" magic line, ignore blank lines and '#' comments, and
// print reals with 17 significant digits so that a write/read round trip
// is exact.
//
// Game:
//   parrep-game 1
//   alice <|U|>
//   bob <|V|>
//   alphabet <|Sigma|>
//   edges <N>
//   <u> <v> <weight> <beta>:<alpha> ...      (N lines; unlisted beta rejected)
//
// Certificate (vector assignment):
//   parrep-certificate 1
//   bob <|V|>
//   alphabet <|Sigma|>
//   omega <|Omega|>
//   weights <w_0> ... <w_{|Omega|-1}>
//   <f(v, beta, 0)> ... <f(v, beta, |Omega|-1)>   (one row per v * |Sigma| + beta)
//
// Partition system:
//   parrep-gadget 1
//   m <m>
//   L <L>
//   k <k>
//   d <d>
//   partition <part of element 0> ... <part of element m-1>   (L lines)
//
// Set cover:
//   parrep-setcover 1
//   ground <N>
//   sets <K>
//   set <e_1> <e_2> ...                        (K lines)

#ifndef PARREP_IO_HPP_
#define PARREP_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "parrep/game.hpp"
#include "parrep/reductions.hpp"
#include "parrep/vector_assignment.hpp"

namespace parrep {

// Readers throw ParseError with the offending line number.
ProjectionGame read_game(std::istream& in);
void write_game(std::ostream& out, const ProjectionGame& game);

VectorAssignment read_certificate(std::istream& in);
void write_certificate(std::ostream& out, const VectorAssignment& f);

PartitionSystem read_partition_system(std::istream& in);
void write_partition_system(std::ostream& out, const PartitionSystem& ps);

SetCoverInstance read_setcover(std::istream& in);
void write_setcover(std::ostream& out, const SetCoverInstance& inst);

// File wrappers; read failures raise ParseError naming the path.
ProjectionGame load_game(const std::filesystem::path& path);
VectorAssignment load_certificate(const std::filesystem::path& path);
PartitionSystem load_partition_system(const std::filesystem::path& path);
SetCoverInstance load_setcover(const std::filesystem::path& path);

// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

// Shortest round-trip representation used by every writer.
std::string format_real(double x);

}  // namespace parrep

#endif  // PARREP_IO_HPP_
