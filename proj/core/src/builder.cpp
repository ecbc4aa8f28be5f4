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

#include "repqc/builder.hpp"

#include <stdexcept>

namespace repqc {

NetlistBuilder::NetlistBuilder(Netlist& netlist, std::string prefix)
    : netlist_(netlist), prefix_(std::move(prefix)) {}

std::string NetlistBuilder::next_net_name() {
  return prefix_ + "_n" + std::to_string(counter_++);
}

std::string NetlistBuilder::next_cell_name() {
  return prefix_ + "_u" + std::to_string(counter_++);
}

NetId NetlistBuilder::gate(CellKind kind, std::initializer_list<NetId> inputs) {
  return gate(kind, std::span<const NetId>(inputs.begin(), inputs.size()));
}

NetId NetlistBuilder::gate(CellKind kind, std::span<const NetId> inputs) {
  const NetId out = netlist_.add_net(next_net_name());
  netlist_.add_cell(kind, next_cell_name(), inputs, out, tags_);
  return out;
}

NetId NetlistBuilder::tie0() {
  if (tie0_ == kNoNet) tie0_ = gate(CellKind::kTie0, {});
  return tie0_;
}

NetId NetlistBuilder::tie1() {
  if (tie1_ == kNoNet) tie1_ = gate(CellKind::kTie1, {});
  return tie1_;
}

NetId NetlistBuilder::reduce(CellKind kind, std::span<const NetId> leaves) {
  if (leaves.empty()) throw std::invalid_argument("reduce: no leaves");
  std::vector<NetId> level(leaves.begin(), leaves.end());
  while (level.size() > 1) {
    std::vector<NetId> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      next.push_back(gate(kind, {level[i], level[i + 1]}));
    }
    if (level.size() % 2) next.push_back(level.back());
    level = std::move(next);
  }
  return level.front();
}

NetId NetlistBuilder::and_tree(std::span<const NetId> leaves) {
  return reduce(CellKind::kAnd2, leaves);
}

NetId NetlistBuilder::or_tree(std::span<const NetId> leaves) {
  return reduce(CellKind::kOr2, leaves);
}

NetId NetlistBuilder::xor_tree(std::span<const NetId> leaves) {
  return reduce(CellKind::kXor2, leaves);
}

NetId NetlistBuilder::mux_tree(std::span<const NetId> leaves,
                               std::span<const NetId> selects) {
  if (leaves.size() != (std::size_t{1} << selects.size())) {
    throw std::invalid_argument("mux_tree: leaf count must be 2^selects");
  }
  std::vector<NetId> level(leaves.begin(), leaves.end());
  std::size_t s = 0;
  while (level.size() > 1) {
    std::vector<NetId> next;
    if (selects.size() - s >= 2) {
      for (std::size_t i = 0; i < level.size(); i += 4) {
        next.push_back(gate(CellKind::kMux4,
                            {level[i], level[i + 1], level[i + 2],
                             level[i + 3], selects[s], selects[s + 1]}));
      }
      s += 2;
    } else {
      for (std::size_t i = 0; i < level.size(); i += 2) {
        next.push_back(mux2(level[i], level[i + 1], selects[s]));
      }
      s += 1;
    }
    level = std::move(next);
  }
  return level.front();
}

NetId NetlistBuilder::named_net(const std::string& name) {
  return netlist_.add_net(name);
}

CellId NetlistBuilder::dff(const std::string& name, NetId q, NetId d,
                           NetId clk, NetId rst) {
  const std::array<NetId, 3> pins{d, clk, rst};
  return netlist_.add_cell(CellKind::kDff, name,
                           {pins.data(), rst == kNoNet ? 2U : 3U}, q, tags_);
}

}  // namespace repqc
