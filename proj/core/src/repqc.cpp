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

#include "repqc/repqc.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "json.hpp"
#include "repqc/keccak.hpp"

namespace repqc {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since)
      .count();
}

// Orders by ascending z, then by id.
void sort_by_score(std::vector<FfIndex>& ffs, const ScoreTable& scores) {
  std::sort(ffs.begin(), ffs.end(), [&](FfIndex a, FfIndex b) {
    if (scores.z[a] != scores.z[b]) return scores.z[a] < scores.z[b];
    return scores.ffs[a] < scores.ffs[b];
  });
}

std::vector<char> membership(std::size_t n, const std::vector<FfIndex>& set) {
  std::vector<char> in(n, 0);
  for (FfIndex f : set) in[f] = 1;
  return in;
}

}  // namespace

void SearchBounds::check() const {
  if (fif > fic || fof > foc) {
    throw std::invalid_argument("search bounds: floor above ceiling in " +
                                to_string());
  }
}

std::string SearchBounds::to_string() const {
  auto v = [](std::uint32_t x) {
    return x == kUnbounded ? std::string("inf") : std::to_string(x);
  };
  return "[" + v(fif) + "," + v(fic) + "],[" + v(fof) + "," + v(foc) + "]";
}

std::vector<FfIndex> filter_state_candidates(const DependencyGraph& graph,
                                             const SearchBounds& bounds) {
  std::vector<FfIndex> out;
  for (FfIndex f = 0; f < graph.size(); ++f) {
    if (bounds.contains(graph.fanin(f), graph.fanout(f))) out.push_back(f);
  }
  return out;
}

DerivedBounds derive_bounds(unsigned w) {
  static std::mutex mu;
  static std::map<unsigned, DerivedBounds> cache;
  check_lane_width(w);
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(w); it != cache.end()) return it->second;
  const RoundDependencies deps = round_dependency_sets(w);
  DerivedBounds b;
  b.min_fanin = static_cast<std::uint32_t>(deps.min_sources());
  b.round_min_sinks = static_cast<std::uint32_t>(deps.min_sinks());
  b.min_fanout = b.round_min_sinks + 1;
  cache.emplace(w, b);
  return b;
}

SearchBounds naive_bounds(unsigned w) {
  const DerivedBounds d = derive_bounds(w);
  return {d.min_fanin, kUnbounded, d.min_fanout, kUnbounded};
}

SearchOutcome clever_search(const DependencyGraph& graph, unsigned w,
                            unsigned instances, unsigned shares) {
  const std::size_t expected = expected_state_count(w, instances, shares);
  if (instances == 0 || shares == 0) {
    throw std::invalid_argument("clever_search: expected state count < 25");
  }
  const SearchBounds naive = naive_bounds(w);
  SearchOutcome out;
  out.bounds = {naive.fif + 1, kUnbounded, naive.fof, naive.fof};

  std::uint32_t max_fanout = 0;
  std::vector<std::uint32_t> fanouts;  // of flip-flops passing the fanin test
  for (FfIndex f = 0; f < graph.size(); ++f) {
    max_fanout = std::max(max_fanout, graph.fanout(f));
    if (graph.fanin(f) >= out.bounds.fif && graph.fanout(f) >= naive.fof) {
      fanouts.push_back(graph.fanout(f));
    }
  }
  std::sort(fanouts.begin(), fanouts.end());
  for (;;) {
    ++out.iterations;
    const auto passing = static_cast<std::size_t>(
        std::upper_bound(fanouts.begin(), fanouts.end(), out.bounds.foc) -
        fanouts.begin());
    if (passing >= expected) break;
    if (out.bounds.foc >= max_fanout) {
      throw KeccakNotPresent("Keccak not present: " +
                             std::to_string(passing) + " of " +
                             std::to_string(expected) +
                             " expected state candidates at " +
                             out.bounds.to_string());
    }
    ++out.bounds.foc;
  }
  out.candidates = filter_state_candidates(graph, out.bounds);
  return out;
}

std::string_view to_string(Variant variant) {
  return variant == Variant::kGrouped ? "grouped" : "individual";
}

RepqcResult locate_inputs_grouped(const ScoreTable& scores,
                                  const GroupTable& groups,
                                  const DependencyGraph& graph,
                                  const std::vector<FfIndex>& ckff,
                                  unsigned w) {
  RepqcResult result;
  result.variant = Variant::kGrouped;
  result.lane_width = w;
  result.state_candidates = ckff;
  const std::vector<char> is_candidate = membership(graph.size(), ckff);

  std::vector<char> hit(graph.size(), 0);
  std::vector<std::size_t> hits(groups.groups.size(), 0);
  for (FfIndex f : ckff) {
    for (FfIndex member : graph.sources(f)) {
      if (is_candidate[member]) continue;
      const std::size_t g = groups.group_of[member];
      if (groups.groups[g].residual) continue;
      hit[member] = 1;
      ++hits[g];
    }
  }

  struct Survivor {
    std::size_t group;
    double mean_z;
    std::vector<FfIndex> members;
  };
  std::vector<Survivor> survivors;
  for (const Group& g : groups.groups) {
    if (g.residual || hits[g.id] < w) continue;
    Survivor s{g.id, 0.0, {}};
    for (FfIndex m : g.members) {
      if (hit[m]) s.members.push_back(m);
    }
    if (s.members.size() < w) continue;
    for (FfIndex m : s.members) s.mean_z += scores.z[m];
    s.mean_z /= static_cast<double>(s.members.size());
    survivors.push_back(std::move(s));
  }
  if (survivors.empty()) return result;
  std::sort(survivors.begin(), survivors.end(),
            [](const Survivor& a, const Survivor& b) {
              if (a.mean_z != b.mean_z) return a.mean_z < b.mean_z;
              return a.group < b.group;
            });
  Survivor& best = survivors.front();
  sort_by_score(best.members, scores);
  best.members.resize(w);
  result.input_candidates = std::move(best.members);
  result.winning_group = best.group;
  return result;
}

RepqcResult locate_inputs_individual(const ScoreTable& scores,
                                     const DependencyGraph& graph,
                                     const std::vector<FfIndex>& ckff,
                                     unsigned w) {
  RepqcResult result;
  result.variant = Variant::kIndividual;
  result.lane_width = w;
  result.state_candidates = ckff;
  const std::vector<char> is_candidate = membership(graph.size(), ckff);

  std::vector<char> hit(graph.size(), 0);
  for (FfIndex f : ckff) {
    for (FfIndex member : graph.sources(f)) {
      if (!is_candidate[member]) hit[member] = 1;
    }
  }
  std::vector<FfIndex> hit_ffs;
  for (FfIndex f = 0; f < graph.size(); ++f) {
    if (hit[f]) hit_ffs.push_back(f);
  }
  if (hit_ffs.size() < w) return result;
  sort_by_score(hit_ffs, scores);
  hit_ffs.resize(w);
  result.input_candidates = std::move(hit_ffs);
  return result;
}

double PipelineRun::total_milliseconds() const {
  double total = 0.0;
  for (const auto& t : timings) total += t.milliseconds;
  return total;
}

std::vector<std::string> PipelineRun::input_names() const {
  std::vector<std::string> names;
  for (FfIndex f : result.input_candidates) names.push_back(graph.name(f));
  return names;
}

std::vector<std::string> PipelineRun::state_names() const {
  std::vector<std::string> names;
  for (FfIndex f : result.state_candidates) names.push_back(graph.name(f));
  return names;
}

PipelineRun run_pipeline(const Netlist& netlist, const PipelineConfig& config) {
  PipelineRun run;
  auto stage = [&](const char* name, auto&& body) {
    const auto start = Clock::now();
    try {
      body();
    } catch (const KeccakNotPresent&) {
      throw;
    } catch (const PipelineError&) {
      throw;
    } catch (const std::exception& e) {
      throw PipelineError(name, e.what());
    }
    run.timings.push_back({name, elapsed_ms(start)});
  };

  stage("dependencies", [&] { run.graph = extract_dependencies(netlist); });
  stage("scoring", [&] { run.scores = compute_zscores(run.graph, config.recipe); });
  stage("grouping", [&] {
    run.levels = compute_levels(run.graph);
    run.groups = group_by_levels(run.levels);
  });

  std::vector<FfIndex> ckff;
  stage("state_search", [&] {
    run.naive = naive_bounds(config.lane_width);
    run.naive_candidates = filter_state_candidates(run.graph, run.naive).size();
    if (config.bounds) {
      config.bounds->check();
      run.bounds = *config.bounds;
      ckff = filter_state_candidates(run.graph, run.bounds);
      if (ckff.empty()) {
        throw KeccakNotPresent("Keccak not present: no candidates inside " +
                               run.bounds.to_string());
      }
    } else {
      SearchOutcome outcome = clever_search(run.graph, config.lane_width,
                                            config.instances, config.shares);
      run.bounds = outcome.bounds;
      ckff = std::move(outcome.candidates);
    }
  });

  const std::size_t expected = expected_state_count(
      config.lane_width, config.instances, config.shares);
  stage("locate_grouped", [&] {
    run.result = locate_inputs_grouped(run.scores, run.groups, run.graph, ckff,
                                       config.lane_width);
  });
  if (!run.result.found() && config.allow_individual) {
    run.grouped_failed = true;
    stage("locate_individual", [&] {
      run.result = locate_inputs_individual(run.scores, run.graph, ckff,
                                            config.lane_width);
    });
  }
  run.result.expected_state_count = expected;
  return run;
}

TruthComparison compare_with_truth(const PipelineRun& run,
                                   const GroundTruth& truth) {
  TruthComparison cmp;
  const std::vector<std::string> ckff = run.state_names();
  const std::set<std::string> ckff_set(ckff.begin(), ckff.end());
  cmp.ckff = ckff.size();
  cmp.kff = truth.total_state_ffs();
  for (const auto& id : truth.all_state_ffs()) cmp.kff_found += ckff_set.count(id);
  cmp.state_recall =
      cmp.kff == 0 ? 0.0 : static_cast<double>(cmp.kff_found) / cmp.kff;

  const std::vector<std::string> located = run.input_names();
  const std::set<std::string> located_set(located.begin(), located.end());
  std::set<std::string> labeled;
  for (const auto& list : truth.input_ffs) labeled.insert(list.begin(), list.end());
  std::size_t correct = 0;
  for (const auto& id : located) correct += labeled.count(id);
  cmp.input_precision =
      located.empty() ? 0.0 : static_cast<double>(correct) / located.size();
  std::size_t best = 0;
  for (const auto& list : truth.input_ffs) {
    std::size_t n = 0;
    for (const auto& id : list) n += located_set.count(id);
    best = std::max(best, n);
  }
  cmp.input_recall = truth.lane_width == 0
                         ? 0.0
                         : static_cast<double>(best) / truth.lane_width;
  return cmp;
}

namespace {

nlohmann::json bounds_json(const SearchBounds& b) {
  auto v = [](std::uint32_t x) -> nlohmann::json {
    if (x == kUnbounded) return nullptr;
    return x;
  };
  return {{"fif", v(b.fif)}, {"fic", v(b.fic)},
          {"fof", v(b.fof)}, {"foc", v(b.foc)},
          {"text", b.to_string()}};
}

nlohmann::json timings_json(const PipelineRun& run) {
  nlohmann::json timings = nlohmann::json::object();
  for (const auto& t : run.timings) timings[t.stage] = t.milliseconds;
  return timings;
}

}  // namespace

std::string pipeline_timings_json(const PipelineRun& run) {
  const nlohmann::json j{{"timings_ms", timings_json(run)},
                         {"total_ms", run.total_milliseconds()}};
  return j.dump(1) + "\n";
}

std::string pipeline_report_json(const PipelineRun& run,
                                 const PipelineConfig& config,
                                 const GroundTruth* truth,
                                 bool include_timings) {
  using nlohmann::json;
  json j;
  j["lane_width"] = config.lane_width;
  j["instances"] = config.instances;
  j["shares"] = config.shares;
  j["recipe"] = std::string(to_string(config.recipe));
  j["flip_flops"] = run.graph.size();
  j["naive"] = {{"bounds", bounds_json(run.naive)},
                {"candidates", run.naive_candidates}};
  j["bounds"] = bounds_json(run.bounds);
  j["bounds_source"] = config.bounds ? "override" : "clever";
  j["expected_state_count"] = run.result.expected_state_count;
  j["found"] = run.result.found();
  j["variant"] = run.result.found()
                     ? json(std::string(to_string(run.result.variant)))
                     : json(nullptr);
  j["grouped_failed"] = run.grouped_failed;
  if (run.result.winning_group) {
    const Group& g = run.groups.groups[*run.result.winning_group];
    j["winning_group"] = {{"id", g.id},
                          {"input_level", g.input_level},
                          {"output_level", g.output_level},
                          {"size", g.members.size()}};
  } else {
    j["winning_group"] = nullptr;
  }
  std::vector<std::string> ckff = run.state_names();
  std::sort(ckff.begin(), ckff.end());
  j["ckff_count"] = ckff.size();
  j["ckff"] = ckff;
  j["inputs"] = run.input_names();
  if (include_timings) {
    j["timings_ms"] = timings_json(run);
    j["total_ms"] = run.total_milliseconds();
  }
  if (truth) {
    const TruthComparison cmp = compare_with_truth(run, *truth);
    j["truth"] = {{"ckff", cmp.ckff},
                  {"kff", cmp.kff},
                  {"kff_found", cmp.kff_found},
                  {"summary", std::to_string(cmp.ckff) + "/" +
                                  std::to_string(cmp.kff)},
                  {"state_recall", cmp.state_recall},
                  {"input_precision", cmp.input_precision},
                  {"input_recall", cmp.input_recall}};
  }
  return j.dump(1) + "\n";
}

}  // namespace repqc
