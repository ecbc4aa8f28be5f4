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

#ifndef REPQC_TESTS_FIXTURES_HPP_
#define REPQC_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "repqc/generator.hpp"
#include "repqc/keccak.hpp"
#include "repqc/netlist.hpp"
#include "repqc/simulator.hpp"

namespace fixtures {

// Random netlist with acyclic combinational logic; every flip-flop d pin
// and every output reads some earlier net.
repqc::Netlist random_netlist(std::mt19937_64& rng, std::size_t inputs,
                              std::size_t ffs, std::size_t gates,
                              std::size_t outputs);

repqc::Netlist parse(const std::string& text);

// Drives a generated accelerator through the simulator, one stimulus per
// lane.
class AcceleratorSim {
 public:
  explicit AcceleratorSim(const repqc::Accelerator& acc);

  repqc::Simulator& sim() { return sim_; }
  void set_port(const std::string& name, std::uint64_t lanes);
  // Lane `lane` of the simulator gets `state` for (instance, share).
  void load_state(unsigned instance, unsigned share,
                  const repqc::KeccakState& state, unsigned lane);
  repqc::KeccakState read_state(unsigned instance, unsigned share,
                                unsigned lane) const;
  void step() { sim_.step(); }

 private:
  const repqc::Accelerator& acc_;
  repqc::Simulator sim_;
  std::vector<std::vector<repqc::CellId>> state_cells_;
};

repqc::KeccakState random_state(std::mt19937_64& rng, unsigned w);

}  // namespace fixtures

#endif  // REPQC_TESTS_FIXTURES_HPP_
