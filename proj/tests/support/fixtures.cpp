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

#include "fixtures.hpp"

#include <stdexcept>

#include "repqc/random.hpp"

namespace fixtures {

using namespace repqc;

Netlist random_netlist(std::mt19937_64& rng, std::size_t inputs,
                       std::size_t ffs, std::size_t gates,
                       std::size_t outputs) {
  static constexpr CellKind kGates[] = {
      CellKind::kInv,  CellKind::kBuf,  CellKind::kAnd2, CellKind::kOr2,
      CellKind::kXor2, CellKind::kXnor2, CellKind::kNand2, CellKind::kNor2,
      CellKind::kMux2, CellKind::kMux4};
  Netlist n("rand");
  std::vector<NetId> pool;
  const NetId clk = n.add_input("clk");
  for (std::size_t i = 0; i < inputs; ++i) {
    pool.push_back(n.add_input("pi" + std::to_string(i)));
  }
  std::vector<NetId> q;
  for (std::size_t i = 0; i < ffs; ++i) {
    q.push_back(n.add_net("q" + std::to_string(i)));
    pool.push_back(q.back());
  }
  auto pick = [&] { return pool[uniform_below(rng, pool.size())]; };
  for (std::size_t g = 0; g < gates; ++g) {
    const CellKind kind = kGates[uniform_below(rng, std::size(kGates))];
    std::vector<NetId> in(cell_kind_info(kind).inputs.size());
    for (auto& net : in) net = pick();
    const NetId out = n.add_net("g" + std::to_string(g));
    n.add_cell(kind, "u" + std::to_string(g), in, out);
    pool.push_back(out);
  }
  for (std::size_t i = 0; i < ffs; ++i) {
    std::vector<NetId> in{pick(), clk};
    if (uniform_below(rng, 4) == 0) in.push_back(pick());
    n.add_cell(CellKind::kDff, "ff" + std::to_string(i), in, q[i]);
  }
  std::vector<char> used(n.num_nets(), 0);
  for (std::size_t o = 0; o < outputs; ++o) {
    const NetId net = pick();
    if (used[net] || n.is_input_net(net)) continue;
    used[net] = 1;
    n.add_output(net);
  }
  return n;
}

Netlist parse(const std::string& text) { return parse_netlist(text); }

AcceleratorSim::AcceleratorSim(const Accelerator& acc)
    : acc_(acc), sim_(acc.netlist) {
  for (const auto& list : acc.truth.state_ffs) {
    auto& cells = state_cells_.emplace_back();
    for (const auto& name : list) cells.push_back(*acc.netlist.find_cell(name));
  }
}

void AcceleratorSim::set_port(const std::string& name, std::uint64_t lanes) {
  const auto net = acc_.netlist.find_net(name);
  if (!net) throw std::invalid_argument("no port " + name);
  sim_.set_input(*net, lanes);
}

void AcceleratorSim::load_state(unsigned instance, unsigned share,
                                const KeccakState& state, unsigned lane) {
  const unsigned w = acc_.truth.lane_width;
  const auto& cells = state_cells_.at(instance * acc_.truth.shares + share);
  const std::uint64_t bit = std::uint64_t{1} << lane;
  for (unsigned x = 0; x < 5; ++x)
    for (unsigned y = 0; y < 5; ++y)
      for (unsigned z = 0; z < w; ++z) {
        const CellId c = cells[state_bit(x, y, z, w)];
        std::uint64_t v = sim_.flip_flop(c) & ~bit;
        if (state.get(x, y, z)) v |= bit;
        sim_.set_flip_flop(c, v);
      }
}

KeccakState AcceleratorSim::read_state(unsigned instance, unsigned share,
                                       unsigned lane) const {
  const unsigned w = acc_.truth.lane_width;
  const auto& cells = state_cells_.at(instance * acc_.truth.shares + share);
  KeccakState s(w);
  for (unsigned x = 0; x < 5; ++x)
    for (unsigned y = 0; y < 5; ++y)
      for (unsigned z = 0; z < w; ++z) {
        s.set(x, y, z, (sim_.flip_flop(cells[state_bit(x, y, z, w)]) >> lane) & 1U);
      }
  return s;
}

KeccakState random_state(std::mt19937_64& rng, unsigned w) {
  KeccakState s(w);
  for (unsigned x = 0; x < 5; ++x)
    for (unsigned y = 0; y < 5; ++y) s.set_lane(x, y, rng());
  return s;
}

}  // namespace fixtures
