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

#ifndef REPQC_GROUND_TRUTH_HPP_
#define REPQC_GROUND_TRUTH_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "repqc/anonymize.hpp"

namespace repqc {

// Sidecar labels for a generated design. Never embedded in the netlist.
struct GroundTruth {
  unsigned lane_width = 0;
  unsigned instances = 0;
  unsigned shares = 0;
  // One list per (instance, share), instance-major. Entry (x + 5y) * w + z
  // holds the flip-flop storing a[x][y][z].
  std::vector<std::vector<std::string>> state_ffs;
  // One list per instance, indexed by lane bit z.
  std::vector<std::vector<std::string>> input_ffs;
  // Primary input driving input register bit z, per instance.
  std::vector<std::vector<std::string>> input_ports;
  // Other accelerator flip-flops: strobes, round counter, loader stages,
  // readout.
  std::vector<std::string> control_ffs;
  std::vector<std::string> decoy_ffs;
  // Decoy flip-flops that fall inside the naive search window.
  std::vector<std::string> collisions;

  std::size_t total_state_ffs() const;
  std::vector<std::string> all_state_ffs() const;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

// Throws std::invalid_argument when a length or disjointness invariant fails.
void check_ground_truth(const GroundTruth& truth);

// Applies a cell rename map to every flip-flop id.
GroundTruth remap(const GroundTruth& truth, const RenameMap& cells);

std::string ground_truth_to_json(const GroundTruth& truth);
GroundTruth ground_truth_from_json(std::string_view text);

}  // namespace repqc

#endif  // REPQC_GROUND_TRUTH_HPP_
