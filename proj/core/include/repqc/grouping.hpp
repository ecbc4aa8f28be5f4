// Copyright 2026 The repqc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Register inference by sequential levelization.
//
// input_level(f) is 1 when a primary input lies in f's combinational input
// cone, else 1 + the minimum input level over f's sequential fanin.
// output_level is the mirror image toward primary outputs. Flip-flops that
// share an (input_level, output_level) pair form one register.

#ifndef REPQC_GROUPING_HPP_
#define REPQC_GROUPING_HPP_

#include <string>
#include <vector>

#include "repqc/depgraph.hpp"

namespace repqc {

inline constexpr int kUnreachable = -1;

struct LevelTable {
  std::vector<int> input_level;   // kUnreachable when no path from a PI
  std::vector<int> output_level;  // kUnreachable when no path to a PO
};

LevelTable compute_levels(const DependencyGraph& graph);

struct Group {
  std::size_t id = 0;
  int input_level = kUnreachable;
  int output_level = kUnreachable;
  // Holds every flip-flop with an unreachable level; never scanned for
  // input-register candidates.
  bool residual = false;
  std::vector<FfIndex> members;  // ascending
};

struct GroupTable {
  // Sorted by (input_level, output_level); the residual group, if any, last.
  std::vector<Group> groups;
  std::vector<std::size_t> group_of;  // per flip-flop
};

GroupTable group_by_levels(const LevelTable& levels);

// "group-id,input_level,output_level,size,members..." CSV. Unreachable
// levels print as -1.
std::string dump_groups(const GroupTable& groups, const DependencyGraph& graph);

}  // namespace repqc

#endif  // REPQC_GROUPING_HPP_
