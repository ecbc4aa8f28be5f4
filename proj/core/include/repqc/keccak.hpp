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

// Keccak-f[25w] for lane widths w = 2^l, l = 0..6.

#ifndef REPQC_KECCAK_HPP_
#define REPQC_KECCAK_HPP_

#include <array>
#include <cstdint>
#include <vector>

namespace repqc {

// Throws std::invalid_argument unless w is a power of two in [1, 64].
void check_lane_width(unsigned w);
unsigned lane_log2(unsigned w);
// 12 + 2l.
unsigned round_count(unsigned w);
// Rotation offset for lane (x, y), before reduction mod w.
unsigned rho_offset(unsigned x, unsigned y);
// 64-bit round constant of round `round`; truncate to w bits for smaller
// lanes.
std::uint64_t round_constant(unsigned round);

// Flat bit index of a[x][y][z].
inline std::size_t state_bit(unsigned x, unsigned y, unsigned z, unsigned w) {
  return (std::size_t{x} + 5 * std::size_t{y}) * w + z;
}

class KeccakState {
 public:
  explicit KeccakState(unsigned w = 64);

  unsigned width() const { return width_; }
  std::size_t bits() const { return 25 * std::size_t{width_}; }

  std::uint64_t lane(unsigned x, unsigned y) const { return lanes_[x + 5 * y]; }
  void set_lane(unsigned x, unsigned y, std::uint64_t value);
  bool get(unsigned x, unsigned y, unsigned z) const;
  void set(unsigned x, unsigned y, unsigned z, bool value);
  std::uint64_t mask() const;

  friend bool operator==(const KeccakState&, const KeccakState&) = default;

 private:
  unsigned width_;
  std::array<std::uint64_t, 25> lanes_{};
};

// One round theta, rho, pi, chi, iota with constant index `round`.
KeccakState keccak_round(const KeccakState& state, unsigned round);
// All 12 + 2l rounds.
KeccakState keccak_f(const KeccakState& state);

// Structural one-round dependencies, indexed by state_bit().
struct RoundDependencies {
  unsigned width = 0;
  // sources[o]: input bits output bit o depends on. sinks[i]: the transpose.
  // Both sorted.
  std::vector<std::vector<std::uint32_t>> sources;
  std::vector<std::vector<std::uint32_t>> sinks;

  std::size_t min_sources() const;
  std::size_t max_sources() const;
  std::size_t min_sinks() const;
  std::size_t max_sinks() const;
};

// Symbolic expansion of one round: every bit carries the set of input bits
// it is built from, propagated through theta (column parities), the rho/pi
// wiring and chi's three-input terms. iota adds constants only.
RoundDependencies round_dependency_sets(unsigned w);

}  // namespace repqc

#endif  // REPQC_KECCAK_HPP_
