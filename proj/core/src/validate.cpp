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

#include "repqc/validate.hpp"

#include <algorithm>

namespace repqc {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kUndrivenNet:
      return "undriven-net";
    case ViolationKind::kMultiplyDrivenNet:
      return "multiply-driven-net";
    case ViolationKind::kUnconnectedInput:
      return "unconnected-input";
    case ViolationKind::kCombinationalCycle:
      return "combinational-cycle";
  }
  return "unknown";
}

std::string Violation::message() const {
  std::string msg(to_string(kind));
  msg += ':';
  for (const auto& obj : objects) {
    msg += ' ';
    msg += obj;
  }
  return msg;
}

std::vector<std::vector<CellId>> combinational_cycles(const Netlist& netlist,
                                                      bool include_islands) {
  const Connectivity conn(netlist);
  const std::size_t n = netlist.num_cells();

  // Iterative Tarjan over edges cell -> reader cell, restricted to
  // combinational cells.
  auto is_comb = [&](CellId c) {
    return !is_sequential(netlist.cell(c).kind);
  };
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(n, kUnvisited), lowlink(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<CellId> stack;
  std::vector<std::vector<CellId>> result;
  std::uint32_t counter = 0;

  struct Frame {
    CellId cell;
    std::size_t next_reader;
  };
  std::vector<Frame> call;

  for (CellId root = 0; root < n; ++root) {
    if (!is_comb(root) || index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& frame = call.back();
      const auto& readers = conn.readers[netlist.cell(frame.cell).output];
      if (frame.next_reader < readers.size()) {
        const CellId next = readers[frame.next_reader++];
        if (!is_comb(next)) continue;
        if (index[next] == kUnvisited) {
          index[next] = lowlink[next] = counter++;
          stack.push_back(next);
          on_stack[next] = 1;
          call.push_back({next, 0});
        } else if (on_stack[next]) {
          lowlink[frame.cell] = std::min(lowlink[frame.cell], index[next]);
        }
        continue;
      }
      const CellId done = frame.cell;
      call.pop_back();
      if (!call.empty()) {
        lowlink[call.back().cell] =
            std::min(lowlink[call.back().cell], lowlink[done]);
      }
      if (lowlink[done] != index[done]) continue;
      std::vector<CellId> component;
      CellId member;
      do {
        member = stack.back();
        stack.pop_back();
        on_stack[member] = 0;
        component.push_back(member);
      } while (member != done);

      bool cyclic = component.size() > 1;
      if (!cyclic) {
        const Cell& cell = netlist.cell(done);
        cyclic = std::find(cell.input_span().begin(), cell.input_span().end(),
                           cell.output) != cell.input_span().end();
      }
      if (!cyclic) continue;
      const bool all_island =
          std::all_of(component.begin(), component.end(), [&](CellId c) {
            return netlist.cell(c).is_analog_island();
          });
      if (all_island && !include_islands) continue;
      std::sort(component.begin(), component.end());
      result.push_back(std::move(component));
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<Violation> validate(const Netlist& netlist) {
  std::vector<Violation> violations;
  const Connectivity conn(netlist);

  for (NetId id = 0; id < netlist.num_nets(); ++id) {
    if (conn.driver[id] == Connectivity::kUndriven) {
      violations.push_back(
          {ViolationKind::kUndrivenNet, {netlist.net_name(id)}});
    }
  }
  for (NetId id : conn.multiply_driven) {
    violations.push_back(
        {ViolationKind::kMultiplyDrivenNet, {netlist.net_name(id)}});
  }
  for (const Cell& cell : netlist.cells()) {
    const CellKindInfo& info = cell_kind_info(cell.kind);
    for (std::size_t i = 0; i < info.required_inputs; ++i) {
      if (cell.inputs[i] == kNoNet) {
        violations.push_back({ViolationKind::kUnconnectedInput,
                              {cell.name + "." + std::string(info.inputs[i])}});
      }
    }
  }
  for (const auto& component : combinational_cycles(netlist, false)) {
    Violation v{ViolationKind::kCombinationalCycle, {}};
    for (CellId c : component) v.objects.push_back(netlist.cell(c).name);
    std::sort(v.objects.begin(), v.objects.end());
    violations.push_back(std::move(v));
  }
  return violations;
}

}  // namespace repqc
