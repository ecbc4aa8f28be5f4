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

#include "repqc/simulator.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace repqc {
namespace {

constexpr std::uint64_t kAll = ~std::uint64_t{0};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

constexpr std::size_t kMux4S0 = 4;
constexpr std::size_t kMux4S1 = 5;

}  // namespace

std::vector<AnalogIsland> find_analog_islands(const Netlist& netlist) {
  const auto& cells = netlist.cells();
  DisjointSets sets(cells.size());
  std::vector<std::vector<CellId>> on_net(netlist.num_nets());
  for (CellId c = 0; c < cells.size(); ++c) {
    if (!cells[c].is_analog_island()) continue;
    for (NetId in : cells[c].input_span()) {
      if (in != kNoNet) on_net[in].push_back(c);
    }
    on_net[cells[c].output].push_back(c);
  }
  for (const auto& touching : on_net) {
    for (std::size_t i = 1; i < touching.size(); ++i) {
      sets.unite(touching[0], touching[i]);
    }
  }
  std::map<std::size_t, AnalogIsland> by_root;
  for (CellId c = 0; c < cells.size(); ++c) {
    if (cells[c].is_analog_island()) by_root[sets.find(c)].cells.push_back(c);
  }

  const Connectivity conn(netlist);
  std::vector<AnalogIsland> islands;
  for (auto& [root, island] : by_root) {
    const std::set<CellId> members(island.cells.begin(), island.cells.end());
    for (CellId c : island.cells) {
      const Cell& cell = cells[c];
      if (cell.kind == CellKind::kNand2 && island.enable == kNoNet) {
        for (NetId in : cell.input_span()) {
          if (!members.count(conn.driver[in])) island.enable = in;
        }
      } else if (cell.kind == CellKind::kMux4 && island.leak_msb == kNoNet) {
        island.leak_lsb = cell.inputs[kMux4S0];
        island.leak_msb = cell.inputs[kMux4S1];
      }
    }
    if (island.enable == kNoNet || island.leak_msb == kNoNet) {
      throw std::invalid_argument(
          "analog island at cell '" + cells[island.cells.front()].name +
          "' has no external NAND2 enable or MUX4 leak select");
    }
    islands.push_back(std::move(island));
  }
  return islands;
}

Simulator::Simulator(const Netlist& netlist)
    : netlist_(&netlist),
      values_(netlist.num_nets(), 0),
      islands_(find_analog_islands(netlist)) {
  const auto& cells = netlist.cells();
  const Connectivity conn(netlist);
  auto evaluated = [&](CellId c) {
    return c < cells.size() && cells[c].kind != CellKind::kDff &&
           !cells[c].is_analog_island();
  };

  std::vector<std::uint32_t> pending(cells.size(), 0);
  std::vector<CellId> ready;
  for (CellId c = 0; c < cells.size(); ++c) {
    if (cells[c].kind == CellKind::kDff) dffs_.push_back(c);
    if (!evaluated(c)) continue;
    for (NetId in : cells[c].input_span()) {
      if (evaluated(conn.driver[in])) ++pending[c];
    }
    if (pending[c] == 0) ready.push_back(c);
  }
  std::size_t expected = 0;
  for (CellId c = 0; c < cells.size(); ++c) expected += evaluated(c);

  while (!ready.empty()) {
    const CellId c = ready.back();
    ready.pop_back();
    const Cell& cell = cells[c];
    Op op{cell.kind, static_cast<std::uint8_t>(cell.num_inputs()), {}, cell.output};
    std::copy(cell.inputs.begin(), cell.inputs.end(), op.in.begin());
    ops_.push_back(op);
    // readers lists a cell once per pin, matching the pending count.
    for (CellId r : conn.readers[cell.output]) {
      if (evaluated(r) && --pending[r] == 0) ready.push_back(r);
    }
  }
  if (ops_.size() != expected) {
    throw std::invalid_argument("simulator: combinational cycle outside the "
                                "analog islands");
  }
  next_.resize(dffs_.size());
}

void Simulator::reset() {
  for (CellId c : dffs_) values_[netlist_->cell(c).output] = 0;
}

void Simulator::set_input(NetId net, std::uint64_t lanes) {
  if (!netlist_->is_input_net(net)) {
    throw std::invalid_argument("simulator: '" + netlist_->net_name(net) +
                                "' is not an input port");
  }
  values_[net] = lanes;
}

void Simulator::set_flip_flop(CellId dff, std::uint64_t lanes) {
  const Cell& cell = netlist_->cell(dff);
  if (cell.kind != CellKind::kDff) {
    throw std::invalid_argument("simulator: '" + cell.name + "' is not a DFF");
  }
  values_[cell.output] = lanes;
}

std::uint64_t Simulator::flip_flop(CellId dff) const {
  return values_[netlist_->cell(dff).output];
}

void Simulator::evaluate() {
  std::uint64_t* v = values_.data();
  for (const Op& op : ops_) {
    const auto& in = op.in;
    std::uint64_t r = 0;
    switch (op.kind) {
      case CellKind::kInv: r = ~v[in[0]]; break;
      case CellKind::kBuf: r = v[in[0]]; break;
      case CellKind::kAnd2: r = v[in[0]] & v[in[1]]; break;
      case CellKind::kOr2: r = v[in[0]] | v[in[1]]; break;
      case CellKind::kXor2: r = v[in[0]] ^ v[in[1]]; break;
      case CellKind::kXnor2: r = ~(v[in[0]] ^ v[in[1]]); break;
      case CellKind::kNand2: r = ~(v[in[0]] & v[in[1]]); break;
      case CellKind::kNor2: r = ~(v[in[0]] | v[in[1]]); break;
      case CellKind::kMux2: {
        const std::uint64_t s = v[in[2]];
        r = (v[in[0]] & ~s) | (v[in[1]] & s);
        break;
      }
      case CellKind::kMux4: {
        const std::uint64_t s0 = v[in[4]], s1 = v[in[5]];
        const std::uint64_t lo = (v[in[0]] & ~s0) | (v[in[1]] & s0);
        const std::uint64_t hi = (v[in[2]] & ~s0) | (v[in[3]] & s0);
        r = (lo & ~s1) | (hi & s1);
        break;
      }
      case CellKind::kTie0: r = 0; break;
      case CellKind::kTie1: r = kAll; break;
      case CellKind::kDff: break;
    }
    v[op.out] = r;
  }
}

void Simulator::clock() {
  for (std::size_t i = 0; i < dffs_.size(); ++i) {
    const Cell& cell = netlist_->cell(dffs_[i]);
    std::uint64_t d = values_[cell.inputs[kDffD]];
    const NetId rst = cell.inputs[kDffRst];
    if (rst != kNoNet) d &= ~values_[rst];
    next_[i] = d;
  }
  for (std::size_t i = 0; i < dffs_.size(); ++i) {
    values_[netlist_->cell(dffs_[i]).output] = next_[i];
  }
}

void Simulator::step() {
  evaluate();
  clock();
}

Stimulus parse_stimulus(std::string_view text) {
  Stimulus stim;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '#') continue;
    std::istringstream in(line);
    std::vector<std::pair<std::string, bool>> cycle;
    std::string token;
    while (in >> token) {
      const auto eq = token.find('=');
      const std::string value = eq == std::string::npos ? "" : token.substr(eq + 1);
      if (eq == 0 || (value != "0" && value != "1")) {
        throw std::invalid_argument("stimulus line " + std::to_string(line_no) +
                                    ": expected port=0 or port=1, got '" +
                                    token + "'");
      }
      cycle.emplace_back(token.substr(0, eq), value == "1");
    }
    stim.cycles.push_back(std::move(cycle));
  }
  return stim;
}

std::string write_stimulus(const Stimulus& stimulus) {
  std::ostringstream out;
  for (const auto& cycle : stimulus.cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) out << ' ';
      out << cycle[i].first << '=' << (cycle[i].second ? 1 : 0);
    }
    out << '\n';
  }
  return out.str();
}

SimTrace simulate(const Netlist& netlist, const Stimulus& stimulus,
                  std::size_t cycles, const SimOptions& options) {
  if (stimulus.size() < cycles) {
    throw std::invalid_argument("stimulus has " +
                                std::to_string(stimulus.size()) +
                                " cycles, " + std::to_string(cycles) +
                                " requested");
  }
  Simulator sim(netlist);
  for (const auto& [name, value] : options.initial_flip_flops) {
    const auto cell = netlist.find_cell(name);
    if (!cell) throw std::invalid_argument("unknown flip-flop '" + name + "'");
    sim.set_flip_flop(*cell, value ? kAll : 0);
  }

  SimTrace trace;
  std::vector<NetId> watched;
  for (const auto& name : options.watch) {
    const auto net = netlist.find_net(name);
    if (!net) throw std::invalid_argument("unknown watch net '" + name + "'");
    watched.push_back(*net);
    trace.watched.push_back(name);
  }
  const std::vector<NetId> inputs = netlist.inputs();
  for (NetId i : inputs) trace.inputs.push_back(netlist.net_name(i));
  for (NetId o : netlist.outputs()) trace.outputs.push_back(netlist.net_name(o));

  // Resolve stimulus names once.
  std::vector<std::vector<std::pair<NetId, bool>>> resolved(cycles);
  for (std::size_t t = 0; t < cycles; ++t) {
    for (const auto& [name, value] : stimulus.cycles[t]) {
      const auto net = netlist.find_net(name);
      if (!net || !netlist.is_input_net(*net)) {
        throw std::invalid_argument("stimulus cycle " + std::to_string(t) +
                                    ": unknown input port '" + name + "'");
      }
      resolved[t].emplace_back(*net, value);
    }
  }

  auto bit = [](std::uint64_t v) { return static_cast<std::uint8_t>(v & 1U); };
  for (std::size_t t = 0; t < cycles; ++t) {
    for (const auto& [net, value] : resolved[t]) {
      sim.set_input(net, value ? kAll : 0);
    }
    sim.evaluate();
    auto& ins = trace.input_values.emplace_back();
    for (NetId i : inputs) ins.push_back(bit(sim.value(i)));
    auto& outs = trace.output_values.emplace_back();
    for (NetId o : netlist.outputs()) outs.push_back(bit(sim.value(o)));
    auto& watch = trace.watched_values.emplace_back();
    for (NetId n : watched) watch.push_back(bit(sim.value(n)));
    auto& samples = trace.islands.emplace_back();
    for (const AnalogIsland& island : sim.islands()) {
      IslandSample s;
      s.enable = bit(sim.value(island.enable)) != 0;
      if (s.enable) {
        s.leak = (bit(sim.value(island.leak_msb)) << 1U) |
                 bit(sim.value(island.leak_lsb));
        s.power_uw = kLeakPowerMicrowatts[s.leak];
      }
      samples.push_back(s);
    }
    sim.clock();
  }
  return trace;
}

Equivalence equivalence_check(const Netlist& a, const Netlist& b,
                              const Stimulus& stimulus, std::size_t cycles) {
  auto names = [](const Netlist& n, const std::vector<NetId>& nets) {
    std::set<std::string> out;
    for (NetId net : nets) out.insert(n.net_name(net));
    return out;
  };
  if (names(a, a.inputs()) != names(b, b.inputs()) ||
      names(a, a.outputs()) != names(b, b.outputs())) {
    throw std::invalid_argument("equivalence_check: primary ports differ");
  }
  const SimTrace ta = simulate(a, stimulus, cycles);
  const SimTrace tb = simulate(b, stimulus, cycles);
  // Output order may differ between the two netlists.
  std::map<std::string, std::size_t> column_b;
  for (std::size_t i = 0; i < tb.outputs.size(); ++i) column_b[tb.outputs[i]] = i;
  Equivalence result;
  for (std::size_t t = 0; t < cycles; ++t) {
    for (std::size_t i = 0; i < ta.outputs.size(); ++i) {
      if (ta.output_values[t][i] !=
          tb.output_values[t][column_b.at(ta.outputs[i])]) {
        result.equal = false;
        result.first_mismatch_cycle = t;
        result.mismatched_output = ta.outputs[i];
        return result;
      }
    }
  }
  return result;
}

std::string trace_to_csv(const SimTrace& trace) {
  std::ostringstream out;
  out << "cycle";
  for (const auto& o : trace.outputs) out << ',' << o;
  for (const auto& w : trace.watched) out << ',' << w;
  const std::size_t islands = trace.islands.empty() ? 0 : trace.islands[0].size();
  for (std::size_t i = 0; i < islands; ++i) {
    const std::string suffix = i == 0 ? "" : std::to_string(i);
    out << ",leak" << suffix << ",power_uW" << suffix;
  }
  out << '\n';
  for (std::size_t t = 0; t < trace.cycles(); ++t) {
    out << t;
    for (auto v : trace.output_values[t]) out << ',' << int{v};
    for (auto v : trace.watched_values[t]) out << ',' << int{v};
    for (const IslandSample& s : trace.islands[t]) {
      out << ',';
      if (s.enable) out << ((s.leak >> 1U) & 1U) << (s.leak & 1U);
      out << ',' << s.power_uw;
    }
    out << '\n';
  }
  return out.str();
}

std::vector<bool> leak_stream(const SimTrace& trace, std::size_t island) {
  std::vector<bool> bits;
  for (const auto& samples : trace.islands) {
    const IslandSample& s = samples.at(island);
    if (!s.enable) continue;
    bits.push_back(((s.leak >> 1U) & 1U) != 0);
    bits.push_back((s.leak & 1U) != 0);
  }
  return bits;
}

}  // namespace repqc
