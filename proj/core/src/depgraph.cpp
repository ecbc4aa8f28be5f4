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

#include "repqc/depgraph.hpp"

#include <algorithm>
#include <sstream>

#include "repqc/validate.hpp"

namespace repqc {

DependencyGraph::DependencyGraph(
    std::vector<std::string> ffs,
    const std::vector<std::pair<FfIndex, FfIndex>>& edges,
    std::vector<std::vector<std::uint32_t>> input_reach,
    std::vector<char> output_reach)
    : ffs_(std::move(ffs)),
      fanin_(ffs_.size()),
      fanout_(ffs_.size()),
      input_reach_(std::move(input_reach)),
      output_reach_(std::move(output_reach)) {
  for (FfIndex i = 0; i < ffs_.size(); ++i) {
    if (!index_.emplace(ffs_[i], i).second) {
      throw std::invalid_argument("duplicate flip-flop '" + ffs_[i] + "'");
    }
  }
  if (input_reach_.empty()) input_reach_.resize(ffs_.size());
  if (output_reach_.empty()) output_reach_.resize(ffs_.size(), 0);
  if (input_reach_.size() != ffs_.size() ||
      output_reach_.size() != ffs_.size()) {
    throw std::invalid_argument("reach tables do not match flip-flop count");
  }
  for (const auto& [src, dst] : edges) {
    if (src >= ffs_.size() || dst >= ffs_.size()) {
      throw std::out_of_range("dependency edge out of range");
    }
    fanin_[dst].push_back(src);
    fanout_[src].push_back(dst);
  }
  auto normalize = [](std::vector<FfIndex>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  for (auto& v : fanin_) normalize(v);
  for (auto& v : fanout_) normalize(v);
  for (auto& v : input_reach_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
}

std::optional<FfIndex> DependencyGraph::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool DependencyGraph::depends(FfIndex dst, FfIndex src) const {
  const auto& sources = fanin_.at(dst);
  return std::binary_search(sources.begin(), sources.end(), src);
}

std::size_t DependencyGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& v : fanin_) n += v.size();
  return n;
}

DependencyGraph extract_dependencies(const Netlist& netlist) {
  if (const auto cycles = combinational_cycles(netlist, false);
      !cycles.empty()) {
    throw CombinationalCycleError(
        "combinational cycle through cell '" +
        netlist.cell(cycles.front().front()).name + "'");
  }
  const Connectivity conn(netlist);

  std::vector<std::string> ffs;
  std::vector<FfIndex> ff_of_cell(netlist.num_cells(),
                                  std::numeric_limits<FfIndex>::max());
  std::vector<CellId> dff_cells;
  for (CellId c = 0; c < netlist.num_cells(); ++c) {
    if (netlist.cell(c).kind != CellKind::kDff) continue;
    ff_of_cell[c] = static_cast<FfIndex>(ffs.size());
    ffs.push_back(netlist.cell(c).name);
    dff_cells.push_back(c);
  }
  std::vector<std::uint32_t> input_index(netlist.num_nets(),
                                         std::numeric_limits<std::uint32_t>::max());
  {
    std::uint32_t k = 0;
    for (NetId id : netlist.inputs()) input_index[id] = k++;
  }

  std::vector<std::pair<FfIndex, FfIndex>> edges;
  std::vector<std::vector<std::uint32_t>> input_reach(ffs.size());
  std::vector<std::uint32_t> visited(netlist.num_nets(), 0);
  std::uint32_t epoch = 0;
  std::vector<NetId> stack;

  for (FfIndex f = 0; f < dff_cells.size(); ++f) {
    const Cell& dff = netlist.cell(dff_cells[f]);
    ++epoch;
    stack.clear();
    for (std::size_t pin : {kDffD, kDffRst}) {
      const NetId n = dff.inputs[pin];
      if (n != kNoNet && visited[n] != epoch) {
        visited[n] = epoch;
        stack.push_back(n);
      }
    }
    while (!stack.empty()) {
      const NetId net = stack.back();
      stack.pop_back();
      const CellId drv = conn.driver[net];
      if (drv == Connectivity::kInputPort) {
        input_reach[f].push_back(input_index[net]);
        continue;
      }
      if (drv == Connectivity::kUndriven) continue;
      const Cell& cell = netlist.cell(drv);
      if (cell.kind == CellKind::kDff) {
        edges.emplace_back(ff_of_cell[drv], f);
        continue;
      }
      if (cell.is_analog_island()) continue;
      for (NetId in : cell.input_span()) {
        if (in != kNoNet && visited[in] != epoch) {
          visited[in] = epoch;
          stack.push_back(in);
        }
      }
    }
  }

  // Multi-source backward sweep from primary outputs marks every flip-flop
  // whose output reaches one combinationally.
  std::vector<char> output_reach(ffs.size(), 0);
  std::vector<char> seen(netlist.num_nets(), 0);
  stack.clear();
  for (NetId out : netlist.outputs()) {
    if (!seen[out]) {
      seen[out] = 1;
      stack.push_back(out);
    }
  }
  while (!stack.empty()) {
    const NetId net = stack.back();
    stack.pop_back();
    const CellId drv = conn.driver[net];
    if (drv == Connectivity::kInputPort || drv == Connectivity::kUndriven) {
      continue;
    }
    const Cell& cell = netlist.cell(drv);
    if (cell.kind == CellKind::kDff) {
      output_reach[ff_of_cell[drv]] = 1;
      continue;
    }
    if (cell.is_analog_island()) continue;
    for (NetId in : cell.input_span()) {
      if (in != kNoNet && !seen[in]) {
        seen[in] = 1;
        stack.push_back(in);
      }
    }
  }
  return DependencyGraph(std::move(ffs), edges, std::move(input_reach),
                         std::move(output_reach));
}

DegreeHistogram degree_histogram(const DependencyGraph& graph) {
  DegreeHistogram histogram;
  for (FfIndex f = 0; f < graph.size(); ++f) {
    ++histogram[{graph.fanin(f), graph.fanout(f)}];
  }
  return histogram;
}

std::string dump_edges(const DependencyGraph& graph) {
  std::ostringstream out;
  for (FfIndex f = 0; f < graph.size(); ++f) {
    for (FfIndex sink : graph.sinks(f)) {
      out << graph.name(f) << ' ' << graph.name(sink) << '\n';
    }
  }
  return out.str();
}

std::string dump_degrees(const DependencyGraph& graph) {
  std::ostringstream out;
  out << "ff,fanin,fanout\n";
  for (FfIndex f = 0; f < graph.size(); ++f) {
    out << graph.name(f) << ',' << graph.fanin(f) << ',' << graph.fanout(f)
        << '\n';
  }
  return out.str();
}

std::string dump_histogram(const DegreeHistogram& histogram) {
  std::ostringstream out;
  out << "fanin,fanout,count\n";
  for (const auto& [key, count] : histogram) {
    out << key.first << ',' << key.second << ',' << count << '\n';
  }
  return out.str();
}

}  // namespace repqc
