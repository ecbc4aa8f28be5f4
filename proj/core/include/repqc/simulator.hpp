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

// Two-valued, cycle-based gate-level simulation.
//
// Each net carries 64 independent lanes (one uint64_t), so 64 stimuli run
// at once. Combinational cells are evaluated in topological order. A DFF
// loads 0 when its rst pin is high and d otherwise; all DFFs start at 0.
// Cells tagged analog_island are not evaluated: each island is read out
// behaviorally from its enable and leak select nets.

#ifndef REPQC_SIMULATOR_HPP_
#define REPQC_SIMULATOR_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repqc/netlist.hpp"

namespace repqc {

// Oscillator readout per 2-bit leak symbol.
inline constexpr std::array<double, 4> kLeakPowerMicrowatts = {32.3, 34.2,
                                                              36.9, 38.9};
inline constexpr std::array<double, 4> kLeakFrequencyMhz = {639.0, 671.0,
                                                           732.0, 767.0};

struct AnalogIsland {
  std::vector<CellId> cells;
  NetId enable = kNoNet;    // external input of the island NAND2
  NetId leak_msb = kNoNet;  // MUX4 s1
  NetId leak_lsb = kNoNet;  // MUX4 s0
};

// Islands are the connected components of tagged cells. Throws
// std::invalid_argument when an island lacks its NAND2 enable or MUX4.
std::vector<AnalogIsland> find_analog_islands(const Netlist& netlist);

class Simulator {
 public:
  // Throws std::invalid_argument on a combinational cycle outside the
  // analog islands.
  explicit Simulator(const Netlist& netlist);

  const Netlist& netlist() const { return *netlist_; }
  const std::vector<AnalogIsland>& islands() const { return islands_; }

  // Every DFF back to 0.
  void reset();
  void set_input(NetId net, std::uint64_t lanes);
  void set_flip_flop(CellId dff, std::uint64_t lanes);
  std::uint64_t flip_flop(CellId dff) const;

  // Settles combinational logic for the current inputs and state.
  void evaluate();
  // Clock edge; evaluate() must have run since the last change.
  void clock();
  // evaluate() then clock().
  void step();

  std::uint64_t value(NetId net) const { return values_[net]; }

 private:
  struct Op {
    CellKind kind;
    std::uint8_t arity;
    std::array<NetId, kMaxCellInputs> in;
    NetId out;
  };

  const Netlist* netlist_;
  std::vector<std::uint64_t> values_;
  std::vector<Op> ops_;
  std::vector<CellId> dffs_;
  std::vector<std::uint64_t> next_;
  std::vector<AnalogIsland> islands_;
};

// Per-cycle port assignments; a port keeps its last value until assigned
// again, starting from 0.
struct Stimulus {
  std::vector<std::vector<std::pair<std::string, bool>>> cycles;

  std::size_t size() const { return cycles.size(); }
};

// One line per cycle of `port=bit` pairs separated by whitespace. Lines
// starting with '#' are skipped; an empty line is a cycle without changes.
Stimulus parse_stimulus(std::string_view text);
std::string write_stimulus(const Stimulus& stimulus);

struct IslandSample {
  bool enable = false;
  unsigned leak = 0;  // {msb, lsb}; meaningful only when enabled
  double power_uw = 0.0;
};

struct SimTrace {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::string> watched;
  // Per cycle, sampled after inputs are applied and before the clock edge.
  std::vector<std::vector<std::uint8_t>> input_values;
  std::vector<std::vector<std::uint8_t>> output_values;
  std::vector<std::vector<std::uint8_t>> watched_values;
  std::vector<std::vector<IslandSample>> islands;

  std::size_t cycles() const { return output_values.size(); }
};

struct SimOptions {
  std::vector<std::string> watch;  // net names
  std::map<std::string, bool> initial_flip_flops;  // by cell name
};

// Throws std::invalid_argument when the stimulus is shorter than `cycles`
// or names an unknown input port.
SimTrace simulate(const Netlist& netlist, const Stimulus& stimulus,
                  std::size_t cycles, const SimOptions& options = {});

struct Equivalence {
  bool equal = true;
  std::optional<std::size_t> first_mismatch_cycle;
  std::string mismatched_output;
};

// Compares primary-output traces cycle by cycle. Throws
// std::invalid_argument when the port sets differ.
Equivalence equivalence_check(const Netlist& a, const Netlist& b,
                              const Stimulus& stimulus, std::size_t cycles);

// cycle, outputs..., watched..., then leak and power_uW per island. leak
// is blank on cycles where the island is disabled.
std::string trace_to_csv(const SimTrace& trace);

// Leak symbols of one island over its enabled cycles, MSB first.
std::vector<bool> leak_stream(const SimTrace& trace, std::size_t island = 0);

}  // namespace repqc

#endif  // REPQC_SIMULATOR_HPP_
