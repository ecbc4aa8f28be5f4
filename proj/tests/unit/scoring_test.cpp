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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "repqc/generator.hpp"
#include "repqc/scoring.hpp"

namespace repqc {
namespace {

constexpr double kTol = 1e-12;

// Graph over n flip-flops where flip-flop i drives the first fanout[i]
// sinks of a pool of sink flip-flops.
DependencyGraph star_graph(const std::vector<std::uint32_t>& fanout) {
  std::vector<std::string> names;
  std::vector<std::pair<FfIndex, FfIndex>> edges;
  const std::uint32_t sinks = *std::max_element(fanout.begin(), fanout.end());
  for (std::size_t i = 0; i < fanout.size(); ++i) {
    names.push_back("f" + std::to_string(i));
  }
  for (std::uint32_t s = 0; s < sinks; ++s) names.push_back("s" + std::to_string(s));
  for (std::size_t i = 0; i < fanout.size(); ++i) {
    for (std::uint32_t s = 0; s < fanout[i]; ++s) {
      edges.emplace_back(static_cast<FfIndex>(i),
                         static_cast<FfIndex>(fanout.size() + s));
    }
  }
  return DependencyGraph(names, edges);
}

TEST(Scoring, StarGraphMatchesFormula) {
  const DependencyGraph g = star_graph({5, 5, 5, 9});
  const ScoreTable t = compute_zscores(g);
  // Population: three with fanout 5, one with 9, nine sinks with fanout 0.
  // Counts: 3,3,3,1 and 9 x 9.
  const double n = 13.0;
  const double mean = (3 * 3 + 1 * 1 + 9 * 9) / n;
  double var = 3 * (3 - mean) * (3 - mean) + (1 - mean) * (1 - mean) +
               9 * (9 - mean) * (9 - mean);
  const double sigma = std::sqrt(var / n);
  EXPECT_NEAR(t.z[0], (mean - 3) / sigma, kTol);
  EXPECT_NEAR(t.z[3], (mean - 1) / sigma, kTol);
  EXPECT_NEAR(t.z[4], 0.0, kTol);
}

TEST(Scoring, FourFlipFlopExample) {
  std::vector<std::string> names{"a", "b", "c", "d"};
  // Fanouts 1,1,1,3: counts 3,3,3,1, mean 2.5, sigma sqrt(0.75).
  std::vector<std::pair<FfIndex, FfIndex>> edges{
      {0, 1}, {1, 2}, {2, 3}, {3, 0}, {3, 1}, {3, 2}};
  const DependencyGraph g(names, edges);
  const ScoreTable t = compute_zscores(g);
  EXPECT_NEAR(t.z[0], 0.0, kTol);
  EXPECT_NEAR(t.z[1], 0.0, kTol);
  EXPECT_NEAR(t.z[2], 0.0, kTol);
  EXPECT_NEAR(t.z[3], 1.7320508075688772, 1e-9);
}

TEST(Scoring, UniformFanoutGivesZero) {
  std::vector<std::pair<FfIndex, FfIndex>> ring{{0, 1}, {1, 2}, {2, 0}};
  const DependencyGraph g({"a", "b", "c"}, ring);
  const ScoreTable t = compute_zscores(g);
  for (double z : t.z) EXPECT_EQ(z, 0.0);
}

TEST(Scoring, EmptyGraphThrows) {
  EXPECT_THROW(compute_zscores(DependencyGraph()), std::invalid_argument);
}

TEST(Scoring, RecipeNames) {
  EXPECT_EQ(parse_recipe("fanout"), Recipe::kFanout);
  EXPECT_EQ(parse_recipe("FANOUT"), Recipe::kFanout);
  EXPECT_THROW(parse_recipe("fanin"), std::invalid_argument);
  EXPECT_EQ(to_string(Recipe::kFanout), "fanout");
}

TEST(Scoring, MonotoneInCount) {
  std::mt19937_64 rng(31);
  const Netlist n = fixtures::random_netlist(rng, 6, 80, 400, 8);
  const DependencyGraph g = extract_dependencies(n);
  const ScoreTable t = compute_zscores(g);
  std::map<std::uint32_t, std::size_t> count;
  for (FfIndex f = 0; f < g.size(); ++f) ++count[g.fanout(f)];
  for (FfIndex a = 0; a < g.size(); ++a) {
    for (FfIndex b = 0; b < g.size(); ++b) {
      if (count[g.fanout(a)] < count[g.fanout(b)]) {
        EXPECT_GE(t.z[a], t.z[b]);
      }
      EXPECT_GE(t.z[a], 0.0);
    }
  }
}

TEST(Scoring, DumpIsSortedAndComplete) {
  std::vector<std::pair<FfIndex, FfIndex>> edges{{1, 0}, {0, 0}};
  const DependencyGraph g({"zeta", "alpha"}, edges);
  const std::string text = dump_scores(compute_zscores(g));
  EXPECT_EQ(text.rfind("ff,z\n", 0), 0u);
  EXPECT_LT(text.find("alpha"), text.find("zeta"));
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}

TEST(Scoring, OracleInputsScoreBelowControl) {
  GenConfig cfg;
  cfg.decoy_ffs = 2000;
  cfg.seed = 5;
  const Accelerator acc = generate_accelerator(cfg);
  const DependencyGraph g = extract_dependencies(acc.netlist);
  const ScoreTable t = compute_zscores(g);
  auto mean_z = [&](const std::vector<std::string>& ids) {
    double s = 0;
    for (const auto& id : ids) s += t.z[*g.find(id)];
    return s / static_cast<double>(ids.size());
  };
  EXPECT_LT(mean_z(acc.truth.input_ffs[0]), mean_z(acc.truth.control_ffs));
  // One unmasked instance: every state flip-flop gets the same score.
  const double z0 = t.z[*g.find(acc.truth.state_ffs[0][0])];
  for (const auto& id : acc.truth.state_ffs[0]) EXPECT_EQ(t.z[*g.find(id)], z0);
}

}  // namespace
}  // namespace repqc
