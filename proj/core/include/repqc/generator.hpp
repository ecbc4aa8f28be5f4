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

// Synthetic Keccak accelerators with labeled ground truth.
//
// Each instance k<i> has:
//   ports    clk, k<i>_din[z], k<i>_load, k<i>_start, k<i>_clear,
//            k<i>_lane_sel[0..4]; outputs k<i>_dout_s<s>[z], k<i>_done
//   control  absorb (start), clr (clear), round counter, done
//   input    w-bit register, din loaded on `load`, held otherwise
//   state    25*w flip-flops per share computing one round per cycle;
//            the input register is XORed into lane (0,0) of share 0 while
//            absorb is set; clr resets the state
//   readout  one w-bit register per share selecting a lane by lane_sel
//
// The counter steps through 12 + 2l round constants and wraps; start
// restarts it. Decoy logic (pipelines, counters, LFSRs, small FSMs) is
// appended with its own ports.

#ifndef REPQC_GENERATOR_HPP_
#define REPQC_GENERATOR_HPP_

#include <cstdint>
#include <string>

#include "repqc/ground_truth.hpp"
#include "repqc/netlist.hpp"

namespace repqc {

struct GenConfig {
  unsigned lane_width = 64;
  unsigned instances = 1;
  unsigned shares = 1;  // 1 plain, 2 first-order masked
  std::size_t decoy_ffs = 0;
  std::uint64_t seed = 0;
  // Loads the upper half of the input register through an extra stage so
  // the register splits into two level groups.
  bool split_loader = false;
  // Anonymize names with `seed`; the ground truth follows the renaming.
  bool blind = true;

  // Throws std::invalid_argument.
  void check() const;
};

struct Accelerator {
  Netlist netlist;
  GroundTruth truth;
};

Accelerator generate_accelerator(const GenConfig& config);

GenConfig gen_config_from_json(std::string_view text);
std::string gen_config_to_json(const GenConfig& config);

}  // namespace repqc

#endif  // REPQC_GENERATOR_HPP_
