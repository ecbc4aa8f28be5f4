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

#ifndef REPQC_VALIDATE_HPP_
#define REPQC_VALIDATE_HPP_

#include <string>
#include <vector>

#include "repqc/netlist.hpp"

namespace repqc {

enum class ViolationKind {
  kUndrivenNet,
  kMultiplyDrivenNet,
  kUnconnectedInput,
  kCombinationalCycle,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  // Offending nets or cells by name. For cycles: every cell of the strongly
  // connected component, sorted.
  std::vector<std::string> objects;

  std::string message() const;
};

// Empty result means the netlist is valid. A combinational cycle is reported
// per strongly connected component of non-DFF cells that contains at least
// one cell not tagged analog_island.
std::vector<Violation> validate(const Netlist& netlist);

// Strongly connected components (size > 1, or a self-loop) of the
// combinational cell graph, each sorted by cell id. Components whose cells
// are all analog islands are included only when `include_islands` is set.
std::vector<std::vector<CellId>> combinational_cycles(const Netlist& netlist,
                                                      bool include_islands);

}  // namespace repqc

#endif  // REPQC_VALIDATE_HPP_
