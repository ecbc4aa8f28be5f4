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

// Keccak state and input-register localization in blind netlists.
//
// The Keccak state is found first: its flip-flops have sequential fanin and
// fanout inside a window fixed by the permutation structure. The input
// register is then the register whose members feed those candidates. Every
// candidate that depends on a group member "hits" the member and its
// register. Registers with fewer than w hits, or fewer than w hit members,
// cannot be the w-bit input. Among the rest the register with the lowest
// mean Z-score wins and its w lowest-scoring members are returned.

#ifndef REPQC_REPQC_HPP_
#define REPQC_REPQC_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "repqc/depgraph.hpp"
#include "repqc/ground_truth.hpp"
#include "repqc/grouping.hpp"
#include "repqc/netlist.hpp"
#include "repqc/scoring.hpp"

namespace repqc {

inline constexpr std::uint32_t kUnbounded =
    std::numeric_limits<std::uint32_t>::max();

struct SearchBounds {
  std::uint32_t fif = 0;           // fanin floor
  std::uint32_t fic = kUnbounded;  // fanin ceiling
  std::uint32_t fof = 0;           // fanout floor
  std::uint32_t foc = kUnbounded;  // fanout ceiling

  bool contains(std::uint32_t fanin, std::uint32_t fanout) const {
    return fanin >= fif && fanin <= fic && fanout >= fof && fanout <= foc;
  }
  // Throws std::invalid_argument when a floor exceeds its ceiling.
  void check() const;
  // "[fif,fic],[fof,foc]" with "inf" for unbounded ceilings.
  std::string to_string() const;

  friend bool operator==(const SearchBounds&, const SearchBounds&) = default;
};

// Sorted flip-flop indices f with fanin(f) in [fif, fic] and fanout(f) in
// [fof, foc].
std::vector<FfIndex> filter_state_candidates(const DependencyGraph& graph,
                                             const SearchBounds& bounds);

struct DerivedBounds {
  std::uint32_t min_fanin = 0;
  std::uint32_t min_fanout = 0;
  // Minimum one-round sink count before the readout sink is added.
  std::uint32_t round_min_sinks = 0;
};

// Floors from the one-round structural expansion at lane width w. The fanin
// floor is the smallest source set. The fanout floor is the smallest sink
// set plus one: every state bit also has to reach the readout logic.
DerivedBounds derive_bounds(unsigned w);

// [33, inf], [34, inf] at w = 64; derive_bounds floors for smaller lanes.
SearchBounds naive_bounds(unsigned w);

class KeccakNotPresent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchOutcome {
  SearchBounds bounds;
  std::vector<FfIndex> candidates;
  std::size_t iterations = 0;
};

inline std::size_t expected_state_count(unsigned w, unsigned instances,
                                        unsigned shares) {
  return 25 * std::size_t{w} * instances * shares;
}

// Starts at fif = naive fif + 1, fic = inf, fof = naive fof, foc = fof and
// raises foc until at least 25 * w * instances * shares candidates pass.
// Throws KeccakNotPresent once foc passes the largest observed fanout.
SearchOutcome clever_search(const DependencyGraph& graph, unsigned w,
                            unsigned instances = 1, unsigned shares = 1);

enum class Variant { kGrouped, kIndividual };
std::string_view to_string(Variant variant);

struct RepqcResult {
  Variant variant = Variant::kGrouped;
  unsigned lane_width = 0;
  std::size_t expected_state_count = 0;
  std::vector<FfIndex> state_candidates;  // sorted
  // Located register, ascending Z-score then id. Empty when not found.
  std::vector<FfIndex> input_candidates;
  std::optional<std::size_t> winning_group;

  bool found() const { return !input_candidates.empty(); }
};

// Grouped variant. Members that are themselves state candidates never
// collect hits.
RepqcResult locate_inputs_grouped(const ScoreTable& scores,
                                  const GroupTable& groups,
                                  const DependencyGraph& graph,
                                  const std::vector<FfIndex>& ckff,
                                  unsigned w);

// Every flip-flop is its own group and the hit-count filter is skipped.
RepqcResult locate_inputs_individual(const ScoreTable& scores,
                                     const DependencyGraph& graph,
                                     const std::vector<FfIndex>& ckff,
                                     unsigned w);

struct PipelineConfig {
  unsigned lane_width = 64;
  unsigned instances = 1;
  unsigned shares = 1;
  Recipe recipe = Recipe::kFanout;
  // Replaces the clever search with a single filter pass.
  std::optional<SearchBounds> bounds;
  bool allow_individual = true;
};

struct StageTiming {
  std::string stage;
  double milliseconds = 0.0;
};

class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct PipelineRun {
  DependencyGraph graph;
  ScoreTable scores;
  LevelTable levels;
  GroupTable groups;
  SearchBounds naive;
  std::size_t naive_candidates = 0;
  SearchBounds bounds;
  RepqcResult result;
  // Grouped attempt only; set when the individual fallback ran.
  bool grouped_failed = false;
  std::vector<StageTiming> timings;

  double total_milliseconds() const;
  std::vector<std::string> input_names() const;
  std::vector<std::string> state_names() const;
};

// dependencies -> scores -> levels/groups -> state search -> grouped
// localization, falling back to the individual variant on an empty result.
// Stage failures surface as PipelineError naming the stage; a missing
// Keccak core surfaces as KeccakNotPresent.
PipelineRun run_pipeline(const Netlist& netlist, const PipelineConfig& config);

struct TruthComparison {
  std::size_t ckff = 0;
  std::size_t kff = 0;
  std::size_t kff_found = 0;  // labeled state flip-flops inside CKFF
  double state_recall = 0.0;
  double input_precision = 0.0;
  double input_recall = 0.0;
};

TruthComparison compare_with_truth(const PipelineRun& run,
                                   const GroundTruth& truth);

// JSON report: bounds, candidates, located inputs, variant, stage timings
// and, when `truth` is given, the CKFF/KFF line and precision/recall.
// Without timings the report depends only on the netlist and config.
std::string pipeline_report_json(const PipelineRun& run,
                                 const PipelineConfig& config,
                                 const GroundTruth* truth = nullptr,
                                 bool include_timings = true);

// {"timings_ms": {stage: ms}, "total_ms": ms}
std::string pipeline_timings_json(const PipelineRun& run);

}  // namespace repqc

#endif  // REPQC_REPQC_HPP_
