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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "keccak_reference.hpp"
#include "repqc/anonymize.hpp"
#include "repqc/generator.hpp"
#include "repqc/hth.hpp"
#include "repqc/keccak.hpp"
#include "repqc/repqc.hpp"
#include "repqc/simulator.hpp"
#include "repqc/validate.hpp"

namespace {

using namespace repqc;

// Pinned limits.
constexpr double kCkffSlackSingle = 1.05;  // clever |CKFF| / 1600
constexpr double kCkffSlackMulti = 1.02;   // clever |CKFF| / 4800
constexpr double kBudgetPercent = 1.0;     // HTH cell-count overhead
constexpr std::size_t kMinBigDesignCells = 50000;
constexpr std::size_t kPerfTargetFfs = 12000;
constexpr double kLimitSeconds[] = {0, 60, 300, 600, 300, 600, 300, 600, 60, 300, 60};

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::uint64_t rand_word(std::mt19937_64& rng, unsigned bits) {
  return bits == 64 ? rng() : rng() & ((std::uint64_t{1} << bits) - 1);
}

std::set<std::string> as_set(const std::vector<std::string>& v) {
  return {v.begin(), v.end()};
}

Accelerator make(unsigned w, std::size_t decoys, std::uint64_t seed,
                 unsigned instances = 1, unsigned shares = 1,
                 bool split = false, bool blind = true) {
  GenConfig cfg;
  cfg.lane_width = w;
  cfg.decoy_ffs = decoys;
  cfg.seed = seed;
  cfg.instances = instances;
  cfg.shares = shares;
  cfg.split_loader = split;
  cfg.blind = blind;
  return generate_accelerator(cfg);
}

PipelineConfig pipeline_config(unsigned w, unsigned instances = 1,
                               unsigned shares = 1) {
  PipelineConfig pc;
  pc.lane_width = w;
  pc.instances = instances;
  pc.shares = shares;
  return pc;
}

Outcome structural_floors() {
  Outcome o;
  const Accelerator acc = make(64, 0, 1);
  const DependencyGraph g = extract_dependencies(acc.netlist);
  const std::set<std::string> state = as_set(acc.truth.state_ffs[0]);
  std::size_t exact = 0;
  for (const auto& id : state) {
    const FfIndex f = *g.find(id);
    std::size_t from_round = 0;
    for (FfIndex s : g.sources(f)) from_round += state.count(g.name(s));
    exact += from_round == 33;
  }
  const RoundDependencies d = round_dependency_sets(64);
  const DerivedBounds b = derive_bounds(64);
  std::ostringstream msg;
  msg << exact << "/1600 state FFs with round fanin 33; round_dependency_sets(64)"
      << " minima (" << d.min_sources() << ", " << d.min_sinks()
      << "), expected (33, 34); derive_bounds(64) = (" << b.min_fanin << ", "
      << b.min_fanout << ")";
  o.pass = exact == 1600 && d.min_sources() == 33 && d.min_sinks() == 34;
  o.detail = msg.str();
  return o;
}

Outcome functional_oracle() {
  Outcome o;
  std::ostringstream msg;
  for (unsigned w : {8u, 64u}) {
    const Accelerator acc = make(w, 0, 100 + w, 1, 1, false, false);
    std::mt19937_64 rng(w);
    std::size_t good = 0, ref_good = 0, total = 0;
    for (unsigned batch = 0; batch < 2; ++batch) {
      fixtures::AcceleratorSim sim(acc);
      const unsigned lanes = batch == 0 ? 64 : 36;
      std::vector<KeccakState> in;
      for (unsigned l = 0; l < lanes; ++l) {
        in.push_back(fixtures::random_state(rng, w));
        sim.load_state(0, 0, in.back(), l);
      }
      for (unsigned r = 0; r < round_count(w); ++r) sim.step();
      for (unsigned l = 0; l < lanes; ++l) {
        const KeccakState expect = keccak_f(in[l]);
        refkeccak::State ref(w);
        for (unsigned y = 0; y < 5; ++y)
          for (unsigned x = 0; x < 5; ++x) refkeccak::set_lane(ref, x, y, in[l].lane(x, y));
        ref = refkeccak::permute(ref);
        bool same = true;
        for (unsigned y = 0; y < 5; ++y)
          for (unsigned x = 0; x < 5; ++x) same &= refkeccak::lane(ref, x, y) == expect.lane(x, y);
        ref_good += same;
        good += sim.read_state(0, 0, l) == expect;
        ++total;
      }
    }
    if (w != 8) msg << "; ";
    msg << "w=" << w << ": " << good << "/" << total << " simulated, " << ref_good
        << "/" << total << " reference agreement";
    o.pass &= good == 100 && ref_good == 100;
  }
  o.detail = msg.str();
  return o;
}

Outcome superset() {
  Outcome o;
  std::size_t worst = 0;
  double naive_recall = 1.0, clever_recall = 1.0;
  for (unsigned i = 0; i < 20; ++i) {
    const std::size_t decoys = 5000 + i * 15000 / 19;
    const Accelerator acc = make(64, decoys, 1000 + i);
    const DependencyGraph g = extract_dependencies(acc.netlist);
    auto recall = [&](const std::vector<FfIndex>& ckff) {
      std::set<std::string> names;
      for (FfIndex f : ckff) names.insert(g.name(f));
      std::size_t found = 0;
      for (const auto& id : acc.truth.state_ffs[0]) found += names.count(id);
      return static_cast<double>(found) / 1600.0;
    };
    const auto naive = filter_state_candidates(g, naive_bounds(64));
    const SearchOutcome clever = clever_search(g, 64);
    naive_recall = std::min(naive_recall, recall(naive));
    clever_recall = std::min(clever_recall, recall(clever.candidates));
    worst = std::max(worst, clever.candidates.size());
  }
  o.pass = naive_recall == 1.0 && clever_recall == 1.0 &&
           static_cast<double>(worst) <= kCkffSlackSingle * 1600;
  std::ostringstream msg;
  msg << "20 designs, min recall naive " << naive_recall << " clever "
      << clever_recall << ", max clever |CKFF| " << worst << " (limit "
      << kCkffSlackSingle * 1600 << ")";
  o.detail = msg.str();
  return o;
}

Outcome localization() {
  Outcome o;
  std::ostringstream msg;
  std::size_t exact = 0;
  for (unsigned i = 0; i < 5; ++i) {
    const Accelerator acc = make(64, 5000, 2000 + i);
    const PipelineRun run = run_pipeline(acc.netlist, pipeline_config(64));
    const TruthComparison cmp = compare_with_truth(run, acc.truth);
    exact += run.result.variant == Variant::kGrouped && !run.grouped_failed &&
             cmp.input_precision == 1.0 && cmp.input_recall == 1.0 &&
             run.result.input_candidates.size() == 64;
  }
  msg << "grouped exact on " << exact << "/5 clean designs; ";
  o.pass = exact == 5;

  const Accelerator split = make(64, 5000, 2100, 1, 1, true);
  PipelineConfig grouped_only = pipeline_config(64);
  grouped_only.allow_individual = false;
  const PipelineRun g = run_pipeline(split.netlist, grouped_only);
  const PipelineRun full = run_pipeline(split.netlist, pipeline_config(64));
  const TruthComparison cmp = compare_with_truth(full, split.truth);
  const bool split_ok = !g.result.found() && full.result.variant == Variant::kIndividual &&
                        cmp.input_precision == 1.0 && cmp.input_recall == 1.0;
  msg << "split fixture: grouped returns " << g.result.input_candidates.size()
      << ", individual precision " << cmp.input_precision << " recall "
      << cmp.input_recall;
  o.pass &= split_ok;
  o.detail = msg.str();
  return o;
}

Outcome masked_multi() {
  Outcome o;
  std::ostringstream msg;
  {
    const Accelerator acc = make(64, 5000, 3000, 1, 2);
    const PipelineRun run = run_pipeline(acc.netlist, pipeline_config(64, 1, 2));
    const TruthComparison cmp = compare_with_truth(run, acc.truth);
    msg << "shares=2 " << cmp.kff_found << "/" << cmp.kff << "; ";
    o.pass &= cmp.kff == 3200 && cmp.kff_found == 3200;
  }
  {
    const Accelerator acc = make(64, 5000, 3001, 3, 1);
    const PipelineRun run = run_pipeline(acc.netlist, pipeline_config(64, 3, 1));
    const TruthComparison cmp = compare_with_truth(run, acc.truth);
    msg << "instances=3 " << cmp.kff_found << "/" << cmp.kff << ", |CKFF| "
        << cmp.ckff << " (limit " << kCkffSlackMulti * 4800 << ")";
    o.pass &= cmp.kff == 4800 && cmp.kff_found == 4800 &&
              static_cast<double>(cmp.ckff) <= kCkffSlackMulti * 4800;
  }
  o.detail = msg.str();
  return o;
}

// Maps a word over the located order to input-port assignments.
class PortMap {
 public:
  PortMap(const GroundTruth& truth, const std::vector<std::string>& located) {
    std::map<std::string, std::string> port_of;
    for (std::size_t i = 0; i < truth.input_ffs.size(); ++i)
      for (std::size_t z = 0; z < truth.input_ffs[i].size(); ++z)
        port_of[truth.input_ffs[i][z]] = truth.input_ports[i][z];
    for (const auto& ff : located) ports_.push_back(port_of.at(ff));
  }
  void put(std::vector<std::pair<std::string, bool>>& cycle, std::uint64_t word) const {
    for (std::size_t i = 0; i < ports_.size(); ++i) cycle.emplace_back(ports_[i], (word >> i) & 1U);
  }
  const std::string& port(std::size_t i) const { return ports_[i]; }

 private:
  std::vector<std::string> ports_;
};

Outcome end_to_end() {
  Outcome o;
  const Accelerator acc = make(64, 5000, 4000);
  const PipelineRun run = run_pipeline(acc.netlist, pipeline_config(64));
  const std::vector<std::string> located = run.input_names();
  std::mt19937_64 rng(4000);
  const std::uint64_t m = rng(), k = rng();
  HthSpec spec;
  for (unsigned i = 0; i < 64; ++i) spec.trigger.push_back((m >> i) & 1U);
  const Insertion ins = insert_hth(acc.netlist, build_hth(spec), located, spec);
  const PortMap ports(acc.truth, located);

  const std::size_t cycles = 48;
  Stimulus s;
  s.cycles.resize(cycles);
  ports.put(s.cycles[1], m);
  s.cycles[1].emplace_back("k0_load", true);
  ports.put(s.cycles[2], k);
  s.cycles[3].emplace_back("k0_load", false);
  s.cycles[4].emplace_back("k0_start", true);
  s.cycles[5].emplace_back("k0_start", false);
  const SimTrace t = simulate(ins.netlist, s, cycles);
  const std::vector<bool> stream = leak_stream(t);
  std::size_t enabled = 0;
  for (const auto& row : t.islands) enabled += row[0].enable;
  bool key_ok = stream.size() == 64;
  if (key_ok) {
    const std::vector<bool> key = key_from_leak(stream, 64);
    for (unsigned j = 0; j < 64; ++j) key_ok &= key[j] == (((k >> j) & 1U) != 0);
  }

  // Dormant traffic: random loads, starts and lane selects, never M.
  const std::size_t dormant_cycles = 300;
  Stimulus d;
  for (std::size_t c = 0; c < dormant_cycles; ++c) {
    auto& cyc = d.cycles.emplace_back();
    std::uint64_t word = rng();
    if (word == m) word ^= 1;
    ports.put(cyc, word);
    cyc.emplace_back("k0_load", rng() % 3 == 0);
    cyc.emplace_back("k0_start", rng() % 40 == 0);
    cyc.emplace_back("k0_clear", rng() % 97 == 0);
    for (unsigned i = 0; i < 5; ++i) {
      cyc.emplace_back("k0_lane_sel[" + std::to_string(i) + "]", rng() & 1U);
    }
  }
  const Equivalence eq = equivalence_check(acc.netlist, ins.netlist, d, dormant_cycles);
  const bool dormant_silent = leak_stream(simulate(ins.netlist, d, dormant_cycles)).empty();

  std::ostringstream msg;
  msg << "leak over " << enabled << " enabled cycles, " << stream.size()
      << " bits, K " << (key_ok ? "reconstructed" : "NOT reconstructed")
      << "; dormant " << dormant_cycles << " cycles "
      << (eq.equal ? "equivalent" : "DIFFER") << (dormant_silent ? "" : ", leaked");
  o.pass = key_ok && enabled == 32 && eq.equal && dormant_silent;
  o.detail = msg.str();
  return o;
}

Outcome trigger_brute_force() {
  Outcome o;
  const Accelerator acc = make(16, 200, 5000);
  const PipelineRun run = run_pipeline(acc.netlist, pipeline_config(16));
  const std::vector<std::string> located = run.input_names();
  std::mt19937_64 rng(5000);
  const std::uint64_t m = rand_word(rng, 16);
  HthSpec spec;
  spec.trigger_width = 16;
  spec.key_width = 16;
  for (unsigned i = 0; i < 16; ++i) spec.trigger.push_back((m >> i) & 1U);
  const Insertion ins = insert_hth(acc.netlist, build_hth(spec), located, spec);
  const Netlist& n = ins.netlist;
  const PortMap ports(acc.truth, located);
  std::vector<NetId> word_ports;
  for (unsigned i = 0; i < 16; ++i) word_ports.push_back(*n.find_net(ports.port(i)));
  const NetId load = *n.find_net("k0_load");

  Simulator sim(n);
  const NetId enable = sim.islands().at(0).enable;
  std::size_t fired = 0;
  std::uint64_t which = 0;
  for (std::uint64_t base = 0; base < (1U << 16); base += 64) {
    sim.reset();
    for (unsigned i = 0; i < 16; ++i) {
      std::uint64_t lanes = 0;
      for (unsigned l = 0; l < 64; ++l) lanes |= (((base + l) >> i) & 1U) << l;
      sim.set_input(word_ports[i], lanes);
    }
    // Each word stays in the register for exactly one cycle, then its
    // complement replaces it and is held.
    sim.set_input(load, ~std::uint64_t{0});
    sim.step();
    for (NetId p : word_ports) sim.set_input(p, ~sim.value(p));
    sim.step();
    sim.set_input(load, 0);
    std::uint64_t active = 0;
    for (int c = 0; c < 6; ++c) {
      sim.evaluate();
      active |= sim.value(enable);
      sim.clock();
    }
    for (unsigned l = 0; l < 64; ++l) {
      if ((active >> l) & 1U) {
        ++fired;
        which = base + l;
      }
    }
  }
  std::ostringstream msg;
  msg << fired << " of 65536 words start the leak phase";
  if (fired == 1) msg << (which == m ? " (the trigger)" : " (NOT the trigger)");
  o.pass = fired == 1 && which == m;
  o.detail = msg.str();
  return o;
}

Outcome eco_overhead() {
  Outcome o;
  const Accelerator acc = make(64, 20000, 6000);
  const PipelineRun run = run_pipeline(acc.netlist, pipeline_config(64));
  HthSpec spec;
  spec.trigger = parse_trigger_hex("0123456789abcdef", 64);
  const Insertion ins = insert_hth(acc.netlist, build_hth(spec), run.input_names(), spec);
  bool additive = true;
  for (CellId c = 0; c < acc.netlist.num_cells(); ++c) {
    additive &= ins.netlist.cell(c) == acc.netlist.cell(c);
  }
  const OverheadReport r = overhead_report(acc.netlist, ins.netlist, kBudgetPercent);
  const bool valid = validate(ins.netlist).empty();
  std::ostringstream msg;
  msg << "baseline " << r.baseline_cells << " cells, +" << r.delta_cells << " ("
      << r.delta_percent << "%, budget " << kBudgetPercent << "%), removed "
      << ins.edit.removed_cells.size() << " cells / " << ins.edit.removed_nets.size()
      << " nets" << (additive ? "" : ", original cells changed")
      << (valid ? "" : ", validation errors");
  o.pass = r.baseline_cells >= kMinBigDesignCells && r.fits && additive && valid &&
           ins.edit.removed_cells.empty() && ins.edit.removed_nets.empty();
  o.detail = msg.str();
  return o;
}

Outcome anonymization_invariance() {
  Outcome o;
  const Accelerator acc = make(64, 5000, 7000, 1, 1, false, false);
  const PipelineConfig pc = pipeline_config(64);
  const PipelineRun base = run_pipeline(acc.netlist, pc);
  std::size_t equal = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Anonymized a = anonymize(acc.netlist, seed);
    const PipelineRun run = run_pipeline(a.netlist, pc);
    std::set<std::string> in, st;
    for (const auto& id : base.input_names()) in.insert(a.cells.at(id));
    for (const auto& id : base.state_names()) st.insert(a.cells.at(id));
    equal += as_set(run.input_names()) == in && as_set(run.state_names()) == st &&
             run.bounds == base.bounds && run.result.variant == base.result.variant;
  }
  o.pass = equal == 5;
  o.detail = std::to_string(equal) + "/5 seeds give the same inputs, state candidates and bounds";
  return o;
}

Outcome performance() {
  Outcome o;
  const std::size_t overhead = 1600 + 64 + 16;
  const Accelerator acc = make(64, kPerfTargetFfs - overhead, 8000);
  const auto start = std::chrono::steady_clock::now();
  const PipelineRun run = run_pipeline(acc.netlist, pipeline_config(64));
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream msg;
  msg << acc.netlist.num_flip_flops() << " FFs, " << acc.netlist.num_cells()
      << " cells, pipeline " << s << " s (limit 60 s), found " << run.result.found();
  o.pass = s < 60.0 && run.result.found();
  o.detail = msg.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"keccak structural floors", structural_floors},
      {"functional oracle", functional_oracle},
      {"superset guarantee", superset},
      {"input localization", localization},
      {"masked and multi-instance", masked_multi},
      {"end-to-end attack", end_to_end},
      {"trigger brute force T=16", trigger_brute_force},
      {"ECO additivity and overhead", eco_overhead},
      {"anonymization invariance", anonymization_invariance},
      {"performance sanity", performance},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double limit = kLimitSeconds[i + 1];
    if (s >= limit) {
      o.pass = false;
      o.detail += "; time limit exceeded";
    }
    std::printf("%s %2zu %s: %s [%.2f s, limit %.0f s]\n", o.pass ? "PASS" : "FAIL",
                i + 1, criteria[i].first.c_str(), o.detail.c_str(), s, limit);
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
