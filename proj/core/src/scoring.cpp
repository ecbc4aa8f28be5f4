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

#include "repqc/scoring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace repqc {

Recipe parse_recipe(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "fanout") return Recipe::kFanout;
  throw std::invalid_argument("unknown scoring recipe '" + std::string(name) +
                              "'");
}

std::string_view to_string(Recipe recipe) {
  switch (recipe) {
    case Recipe::kFanout:
      return "fanout";
  }
  return "unknown";
}

ScoreTable compute_zscores(const DependencyGraph& graph, Recipe recipe) {
  if (graph.empty()) {
    throw std::invalid_argument("compute_zscores: empty dependency graph");
  }
  const std::size_t n = graph.size();
  std::vector<std::uint32_t> feature(n);
  for (FfIndex f = 0; f < n; ++f) feature[f] = graph.fanout(f);

  std::unordered_map<std::uint32_t, std::size_t> count_of;
  for (auto v : feature) ++count_of[v];

  std::vector<double> count(n);
  for (FfIndex f = 0; f < n; ++f) {
    count[f] = static_cast<double>(count_of[feature[f]]);
  }
  const double mean =
      std::accumulate(count.begin(), count.end(), 0.0) / static_cast<double>(n);
  double var = 0.0;
  for (double c : count) var += (c - mean) * (c - mean);
  const double sigma = std::sqrt(var / static_cast<double>(n));

  ScoreTable table;
  table.recipe = recipe;
  table.ffs = graph.ffs();
  table.z.assign(n, 0.0);
  if (sigma > 0.0) {
    for (FfIndex f = 0; f < n; ++f) {
      table.z[f] = std::max(0.0, (mean - count[f]) / sigma);
    }
  }
  return table;
}

std::string dump_scores(const ScoreTable& table) {
  std::vector<std::size_t> order(table.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return table.ffs[a] < table.ffs[b];
  });
  std::ostringstream out;
  out.precision(17);
  out << "ff,z\n";
  for (std::size_t i : order) out << table.ffs[i] << ',' << table.z[i] << '\n';
  return out.str();
}

}  // namespace repqc
