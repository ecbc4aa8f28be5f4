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

// Seeded helpers whose output depends only on the mt19937_64 stream, which
// the standard fixes exactly. std::shuffle and the std distributions are
// implementation-defined, so generated artifacts avoid them.

#ifndef REPQC_RANDOM_HPP_
#define REPQC_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace repqc {

// Uniform in [0, bound) by rejection; bound > 0.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

// Uniform in [lo, hi].
inline std::uint64_t uniform_between(std::mt19937_64& rng, std::uint64_t lo,
                                     std::uint64_t hi) {
  return lo + uniform_below(rng, hi - lo + 1);
}

template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = uniform_below(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace repqc

#endif  // REPQC_RANDOM_HPP_
