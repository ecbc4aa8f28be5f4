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

#include "repqc/keccak.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace repqc {
namespace {

// kRho[x][y].
constexpr unsigned kRho[5][5] = {
    {0, 36, 3, 41, 18},
    {1, 44, 10, 45, 2},
    {62, 6, 43, 15, 61},
    {28, 55, 25, 21, 56},
    {27, 20, 39, 8, 14},
};

constexpr std::uint64_t kRoundConstants[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808AULL,
    0x8000000080008000ULL, 0x000000000000808BULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008AULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000AULL,
    0x000000008000808BULL, 0x800000000000008BULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800AULL, 0x800000008000000AULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

std::uint64_t rotl(std::uint64_t v, unsigned r, unsigned w, std::uint64_t mask) {
  r %= w;
  if (r == 0) return v;
  return ((v << r) | (v >> (w - r))) & mask;
}

void sort_unique(std::vector<std::uint32_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

void check_lane_width(unsigned w) {
  if (w == 0 || w > 64 || !std::has_single_bit(w)) {
    throw std::invalid_argument("unsupported lane width " + std::to_string(w));
  }
}

unsigned lane_log2(unsigned w) {
  check_lane_width(w);
  return static_cast<unsigned>(std::countr_zero(w));
}

unsigned round_count(unsigned w) { return 12 + 2 * lane_log2(w); }

unsigned rho_offset(unsigned x, unsigned y) { return kRho[x][y]; }

std::uint64_t round_constant(unsigned round) {
  return kRoundConstants[round % 24];
}

KeccakState::KeccakState(unsigned w) : width_(w) { check_lane_width(w); }

std::uint64_t KeccakState::mask() const {
  return width_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width_) - 1;
}

void KeccakState::set_lane(unsigned x, unsigned y, std::uint64_t value) {
  lanes_[x + 5 * y] = value & mask();
}

bool KeccakState::get(unsigned x, unsigned y, unsigned z) const {
  return (lanes_[x + 5 * y] >> z) & 1U;
}

void KeccakState::set(unsigned x, unsigned y, unsigned z, bool value) {
  auto& lane = lanes_[x + 5 * y];
  lane = (lane & ~(std::uint64_t{1} << z)) |
         (std::uint64_t{value ? 1U : 0U} << z);
}

KeccakState keccak_round(const KeccakState& state, unsigned round) {
  const unsigned w = state.width();
  const std::uint64_t mask = state.mask();
  std::uint64_t a[5][5];
  for (unsigned x = 0; x < 5; ++x) {
    for (unsigned y = 0; y < 5; ++y) a[x][y] = state.lane(x, y);
  }
  std::uint64_t c[5], d[5];
  for (unsigned x = 0; x < 5; ++x) {
    c[x] = a[x][0] ^ a[x][1] ^ a[x][2] ^ a[x][3] ^ a[x][4];
  }
  for (unsigned x = 0; x < 5; ++x) {
    d[x] = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1, w, mask);
  }
  std::uint64_t b[5][5];
  for (unsigned x = 0; x < 5; ++x) {
    for (unsigned y = 0; y < 5; ++y) {
      b[y][(2 * x + 3 * y) % 5] = rotl(a[x][y] ^ d[x], kRho[x][y], w, mask);
    }
  }
  KeccakState out(w);
  for (unsigned x = 0; x < 5; ++x) {
    for (unsigned y = 0; y < 5; ++y) {
      out.set_lane(x, y, b[x][y] ^ (~b[(x + 1) % 5][y] & b[(x + 2) % 5][y]));
    }
  }
  out.set_lane(0, 0, out.lane(0, 0) ^ (round_constant(round) & mask));
  return out;
}

KeccakState keccak_f(const KeccakState& state) {
  KeccakState s = state;
  const unsigned rounds = round_count(state.width());
  for (unsigned r = 0; r < rounds; ++r) s = keccak_round(s, r);
  return s;
}

std::size_t RoundDependencies::min_sources() const {
  std::size_t m = sources.empty() ? 0 : sources.front().size();
  for (const auto& s : sources) m = std::min(m, s.size());
  return m;
}

std::size_t RoundDependencies::max_sources() const {
  std::size_t m = 0;
  for (const auto& s : sources) m = std::max(m, s.size());
  return m;
}

std::size_t RoundDependencies::min_sinks() const {
  std::size_t m = sinks.empty() ? 0 : sinks.front().size();
  for (const auto& s : sinks) m = std::min(m, s.size());
  return m;
}

std::size_t RoundDependencies::max_sinks() const {
  std::size_t m = 0;
  for (const auto& s : sinks) m = std::max(m, s.size());
  return m;
}

RoundDependencies round_dependency_sets(unsigned w) {
  check_lane_width(w);
  const std::size_t n = 25 * std::size_t{w};
  using BitSet = std::vector<std::uint32_t>;
  auto at = [w](unsigned x, unsigned y, unsigned z) {
    return state_bit(x, y, z, w);
  };

  // theta: column parities, then each bit absorbs two of them.
  std::vector<BitSet> parity(5 * std::size_t{w});
  for (unsigned x = 0; x < 5; ++x) {
    for (unsigned z = 0; z < w; ++z) {
      auto& p = parity[x * w + z];
      for (unsigned y = 0; y < 5; ++y) {
        p.push_back(static_cast<std::uint32_t>(at(x, y, z)));
      }
    }
  }
  std::vector<BitSet> theta(n);
  for (unsigned x = 0; x < 5; ++x) {
    for (unsigned y = 0; y < 5; ++y) {
      for (unsigned z = 0; z < w; ++z) {
        BitSet s{static_cast<std::uint32_t>(at(x, y, z))};
        const auto& left = parity[((x + 4) % 5) * w + z];
        const auto& right = parity[((x + 1) % 5) * w + (z + w - 1) % w];
        s.insert(s.end(), left.begin(), left.end());
        s.insert(s.end(), right.begin(), right.end());
        sort_unique(s);
        theta[at(x, y, z)] = std::move(s);
      }
    }
  }
  // rho and pi only move bits.
  std::vector<BitSet> moved(n);
  for (unsigned x = 0; x < 5; ++x) {
    for (unsigned y = 0; y < 5; ++y) {
      const unsigned r = kRho[x][y] % w;
      for (unsigned z = 0; z < w; ++z) {
        moved[at(y, (2 * x + 3 * y) % 5, (z + r) % w)] = theta[at(x, y, z)];
      }
    }
  }
  RoundDependencies deps;
  deps.width = w;
  deps.sources.resize(n);
  deps.sinks.resize(n);
  for (unsigned x = 0; x < 5; ++x) {
    for (unsigned y = 0; y < 5; ++y) {
      for (unsigned z = 0; z < w; ++z) {
        BitSet s = moved[at(x, y, z)];
        const auto& b1 = moved[at((x + 1) % 5, y, z)];
        const auto& b2 = moved[at((x + 2) % 5, y, z)];
        s.insert(s.end(), b1.begin(), b1.end());
        s.insert(s.end(), b2.begin(), b2.end());
        sort_unique(s);
        deps.sources[at(x, y, z)] = std::move(s);
      }
    }
  }
  for (std::uint32_t o = 0; o < n; ++o) {
    for (std::uint32_t i : deps.sources[o]) deps.sinks[i].push_back(o);
  }
  return deps;
}

}  // namespace repqc
