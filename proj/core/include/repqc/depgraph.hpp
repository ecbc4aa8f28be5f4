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

// Flip-flop to flip-flop sequential dependencies.
//
// There is an edge src -> dst when the output of flip-flop src lies in the
// combinational input cone of dst, i.e. dst's next value depends on src's
// current value. The sequential fanin of a flip-flop is the number of
// distinct sources; the fanout is the number of distinct sinks.

#ifndef REPQC_DEPGRAPH_HPP_
#define REPQC_DEPGRAPH_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "repqc/netlist.hpp"

namespace repqc {

using FfIndex = std::uint32_t;

class DependencyGraph {
 public:
  DependencyGraph() = default;

  // `edges` are (source, sink) pairs; duplicates are collapsed.
  // `input_reach[f]` lists primary-input indices in f's input cone and
  // `output_reach[f]` says whether f's output reaches a primary output.
  // Both may be empty, meaning "none".
  DependencyGraph(std::vector<std::string> ffs,
                  const std::vector<std::pair<FfIndex, FfIndex>>& edges,
                  std::vector<std::vector<std::uint32_t>> input_reach = {},
                  std::vector<char> output_reach = {});

  std::size_t size() const { return ffs_.size(); }
  bool empty() const { return ffs_.empty(); }
  const std::vector<std::string>& ffs() const { return ffs_; }
  const std::string& name(FfIndex f) const { return ffs_.at(f); }
  std::optional<FfIndex> find(const std::string& name) const;

  // Sorted, unique.
  const std::vector<FfIndex>& sources(FfIndex f) const { return fanin_.at(f); }
  const std::vector<FfIndex>& sinks(FfIndex f) const { return fanout_.at(f); }
  std::uint32_t fanin(FfIndex f) const {
    return static_cast<std::uint32_t>(fanin_.at(f).size());
  }
  std::uint32_t fanout(FfIndex f) const {
    return static_cast<std::uint32_t>(fanout_.at(f).size());
  }
  // True iff dst depends on src (edge src -> dst).
  bool depends(FfIndex dst, FfIndex src) const;
  std::size_t edge_count() const;

  const std::vector<std::uint32_t>& input_reach(FfIndex f) const {
    return input_reach_.at(f);
  }
  bool reaches_input(FfIndex f) const { return !input_reach_.at(f).empty(); }
  bool reaches_output(FfIndex f) const { return output_reach_.at(f) != 0; }

 private:
  std::vector<std::string> ffs_;
  std::unordered_map<std::string, FfIndex> index_;
  std::vector<std::vector<FfIndex>> fanin_;
  std::vector<std::vector<FfIndex>> fanout_;
  std::vector<std::vector<std::uint32_t>> input_reach_;
  std::vector<char> output_reach_;
};

class CombinationalCycleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Backward traversal from every DFF's d and rst pins through combinational
// cells. Traversal stops at DFF outputs and primary inputs and never enters
// analog-island cells. Flip-flops are ordered as the DFF cells appear in the
// netlist. Throws CombinationalCycleError on an untagged combinational loop.
DependencyGraph extract_dependencies(const Netlist& netlist);

// (fanin, fanout) -> number of flip-flops.
using DegreeHistogram = std::map<std::pair<std::uint32_t, std::uint32_t>,
                                 std::size_t>;
DegreeHistogram degree_histogram(const DependencyGraph& graph);

// One "src dst" line per edge, sources in flip-flop order.
std::string dump_edges(const DependencyGraph& graph);
// "ff,fanin,fanout" CSV.
std::string dump_degrees(const DependencyGraph& graph);
// "fanin,fanout,count" CSV.
std::string dump_histogram(const DegreeHistogram& histogram);

}  // namespace repqc

#endif  // REPQC_DEPGRAPH_HPP_
