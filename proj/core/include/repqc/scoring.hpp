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

// Control/datapath scoring of flip-flops.
//
// Each flip-flop gets a feature value (its sequential fanout under the only
// supported recipe). Let c(f) be the number of flip-flops sharing f's
// feature value, and mu, sigma the population mean and standard deviation
// of c over all flip-flops. Then
//
//   z(f) = max(0, (mu - c(f)) / sigma),   z = 0 everywhere when sigma = 0.
//
// Members of wide identical registers have large c and score near 0; unique
// control flip-flops have c = 1 and score high.

#ifndef REPQC_SCORING_HPP_
#define REPQC_SCORING_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "repqc/depgraph.hpp"

namespace repqc {

enum class Recipe { kFanout };

// Accepts "fanout" (case-insensitive). Throws std::invalid_argument otherwise.
Recipe parse_recipe(std::string_view name);
std::string_view to_string(Recipe recipe);

struct ScoreTable {
  Recipe recipe = Recipe::kFanout;
  std::vector<std::string> ffs;
  std::vector<double> z;  // parallel to ffs, graph order

  std::size_t size() const { return z.size(); }
};

// Throws std::invalid_argument on an empty graph.
ScoreTable compute_zscores(const DependencyGraph& graph,
                           Recipe recipe = Recipe::kFanout);

// "ff,z" CSV, rows sorted by flip-flop id.
std::string dump_scores(const ScoreTable& table);

}  // namespace repqc

#endif  // REPQC_SCORING_HPP_
