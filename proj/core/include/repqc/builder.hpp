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

#ifndef REPQC_BUILDER_HPP_
#define REPQC_BUILDER_HPP_

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "repqc/netlist.hpp"

namespace repqc {

// Appends gates to a netlist with generated "<prefix>_n<k>" net and
// "<prefix>_u<k>" cell names.
class NetlistBuilder {
 public:
  NetlistBuilder(Netlist& netlist, std::string prefix);

  Netlist& netlist() { return netlist_; }
  const std::string& prefix() const { return prefix_; }

  // Sets the tags attached to every cell created from now on.
  void set_tags(std::vector<std::string> tags) { tags_ = std::move(tags); }

  NetId gate(CellKind kind, std::initializer_list<NetId> inputs);
  NetId gate(CellKind kind, std::span<const NetId> inputs);

  NetId inv(NetId a) { return gate(CellKind::kInv, {a}); }
  NetId buf(NetId a) { return gate(CellKind::kBuf, {a}); }
  NetId and2(NetId a, NetId b) { return gate(CellKind::kAnd2, {a, b}); }
  NetId or2(NetId a, NetId b) { return gate(CellKind::kOr2, {a, b}); }
  NetId xor2(NetId a, NetId b) { return gate(CellKind::kXor2, {a, b}); }
  NetId xnor2(NetId a, NetId b) { return gate(CellKind::kXnor2, {a, b}); }
  NetId nand2(NetId a, NetId b) { return gate(CellKind::kNand2, {a, b}); }
  NetId nor2(NetId a, NetId b) { return gate(CellKind::kNor2, {a, b}); }
  NetId mux2(NetId d0, NetId d1, NetId s) {
    return gate(CellKind::kMux2, {d0, d1, s});
  }
  // Shared constant drivers, created on first use.
  NetId tie0();
  NetId tie1();
  NetId constant(bool value) { return value ? tie1() : tie0(); }

  // Balanced reductions; `leaves` must be non-empty.
  NetId and_tree(std::span<const NetId> leaves);
  NetId or_tree(std::span<const NetId> leaves);
  NetId xor_tree(std::span<const NetId> leaves);

  // Selects leaves[sel] where sel is the little-endian value of `selects`;
  // needs leaves.size() == 2^selects.size(). Uses MUX4 per select pair and
  // MUX2 for a leftover select bit.
  NetId mux_tree(std::span<const NetId> leaves, std::span<const NetId> selects);

  // Reserves a named net to be driven later, e.g. a flip-flop output read by
  // its own next-state logic.
  NetId named_net(const std::string& name);
  // Adds a DFF named `name` driving the existing net `q`.
  CellId dff(const std::string& name, NetId q, NetId d, NetId clk,
             NetId rst = kNoNet);

  std::string next_net_name();
  std::string next_cell_name();

 private:
  NetId reduce(CellKind kind, std::span<const NetId> leaves);

  Netlist& netlist_;
  std::string prefix_;
  std::vector<std::string> tags_;
  std::size_t counter_ = 0;
  NetId tie0_ = kNoNet;
  NetId tie1_ = kNoNet;
};

}  // namespace repqc

#endif  // REPQC_BUILDER_HPP_
