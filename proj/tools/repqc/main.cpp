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

// repqc command-line front end.
//
//   repqc gen       generate a labeled accelerator netlist
//   repqc analyze   locate the Keccak state and input register
//   repqc inject    insert the trojan at the located register
//   repqc simulate  run a stimulus, check leak and stealth verdicts
//   repqc validate  structural checks only
//   repqc anonymize rename cells and internal nets
//
// Exit codes: 0 success, 2 usage, 3 not found / does not fit,
// 4 input fails to parse or validate, 1 anything else.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "repqc/anonymize.hpp"
#include "repqc/depgraph.hpp"
#include "repqc/generator.hpp"
#include "repqc/ground_truth.hpp"
#include "repqc/hth.hpp"
#include "repqc/keccak.hpp"
#include "repqc/netlist.hpp"
#include "repqc/repqc.hpp"
#include "repqc/simulator.hpp"
#include "repqc/validate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace repqc;

namespace {

enum ExitCode { kOk = 0, kError = 1, kUsage = 2, kNotFound = 3, kInvalid = 4 };

struct Failure : std::runtime_error {
  Failure(ExitCode c, const std::string& what) : std::runtime_error(what), code(c) {}
  ExitCode code;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(kUsage, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure(kError, "cannot write " + path.string());
  out << text;
  if (!out) throw Failure(kError, "write failed: " + path.string());
}

fs::path out_path(const std::string& dir, const std::string& file) {
  fs::create_directories(dir);
  return fs::path(dir) / file;
}

Netlist load_netlist(const std::string& path) {
  Netlist n;
  try {
    n = parse_netlist(read_file(path));
  } catch (const ParseError& e) {
    throw Failure(kInvalid, path + ":" + e.what());
  }
  const auto violations = validate(n);
  if (!violations.empty()) {
    std::string msg = path + ": " + std::to_string(violations.size()) + " violation(s)";
    for (std::size_t i = 0; i < violations.size() && i < 5; ++i) {
      msg += "\n  " + violations[i].message();
    }
    throw Failure(kInvalid, msg);
  }
  return n;
}

GroundTruth load_truth(const std::string& path) {
  try {
    GroundTruth t = ground_truth_from_json(read_file(path));
    check_ground_truth(t);
    return t;
  } catch (const std::invalid_argument& e) {
    throw Failure(kInvalid, path + ": " + e.what());
  }
}

// ---- gen

struct GenOptions {
  GenConfig cfg;
  std::optional<std::uint64_t> seed;
  bool open = false;
  std::string name = "design";
  std::string out_dir = ".";
};

int cmd_gen(GenOptions o) {
  if (!o.seed) throw Failure(kUsage, "gen: --seed is required");
  o.cfg.seed = *o.seed;
  o.cfg.blind = !o.open;
  try {
    o.cfg.check();
  } catch (const std::invalid_argument& e) {
    throw Failure(kUsage, std::string("gen: ") + e.what());
  }
  const Accelerator acc = generate_accelerator(o.cfg);
  const auto violations = validate(acc.netlist);
  if (!violations.empty()) {
    throw Failure(kInvalid, "gen: generated netlist fails validation: " +
                                violations.front().message());
  }
  write_file(out_path(o.out_dir, o.name + ".net"), write_netlist(acc.netlist));
  write_file(out_path(o.out_dir, o.name + ".truth.json"), ground_truth_to_json(acc.truth));
  write_file(out_path(o.out_dir, o.name + ".config.json"), gen_config_to_json(o.cfg));
  std::cout << o.name << ".net: " << acc.netlist.num_cells() << " cells, "
            << acc.netlist.num_flip_flops() << " flip-flops, "
            << acc.truth.total_state_ffs() << " labeled state flip-flops\n";
  return kOk;
}

// ---- analyze

struct AnalysisOptions {
  unsigned w = 64;
  unsigned instances = 1;
  unsigned shares = 1;
  std::optional<std::uint32_t> fif, fic, fof, foc;
  bool grouped_only = false;

  PipelineConfig config() const {
    PipelineConfig pc;
    pc.lane_width = w;
    pc.instances = instances;
    pc.shares = shares;
    pc.allow_individual = !grouped_only;
    if (fif || fic || fof || foc) {
      SearchBounds b = naive_bounds(w);
      if (fif) b.fif = *fif;
      if (fic) b.fic = *fic;
      if (fof) b.fof = *fof;
      if (foc) b.foc = *foc;
      try {
        b.check();
      } catch (const std::invalid_argument& e) {
        throw Failure(kUsage, e.what());
      }
      pc.bounds = b;
    }
    return pc;
  }
};

PipelineRun analyze(const Netlist& n, const PipelineConfig& pc) {
  try {
    check_lane_width(pc.lane_width);
  } catch (const std::invalid_argument& e) {
    throw Failure(kUsage, e.what());
  }
  try {
    return run_pipeline(n, pc);
  } catch (const KeccakNotPresent& e) {
    throw Failure(kNotFound, e.what());
  } catch (const PipelineError& e) {
    throw Failure(kInvalid, "stage " + e.stage() + " failed: " + e.what());
  }
}

struct AnalyzeOptions {
  std::string netlist;
  std::optional<std::string> truth;
  AnalysisOptions analysis;
  std::string out_dir = ".";
};

int cmd_analyze(const AnalyzeOptions& o) {
  const Netlist n = load_netlist(o.netlist);
  std::optional<GroundTruth> truth;
  if (o.truth) truth = load_truth(*o.truth);
  const PipelineConfig pc = o.analysis.config();
  const PipelineRun run = analyze(n, pc);

  write_file(out_path(o.out_dir, "report.json"),
             pipeline_report_json(run, pc, truth ? &*truth : nullptr, false));
  write_file(out_path(o.out_dir, "timings.json"), pipeline_timings_json(run));
  write_file(out_path(o.out_dir, "scores.csv"), dump_scores(run.scores));
  write_file(out_path(o.out_dir, "degrees.csv"), dump_degrees(run.graph));
  write_file(out_path(o.out_dir, "histogram.csv"),
             dump_histogram(degree_histogram(run.graph)));
  write_file(out_path(o.out_dir, "groups.csv"), dump_groups(run.groups, run.graph));

  std::cout << "bounds " << run.bounds.to_string() << ", "
            << run.result.state_candidates.size() << " state candidates";
  if (truth) {
    const TruthComparison cmp = compare_with_truth(run, *truth);
    std::cout << " (" << cmp.kff_found << "/" << cmp.kff << " labeled)";
  }
  std::cout << "\n";
  if (!run.result.found()) {
    std::cout << "input register not found\n";
    return kNotFound;
  }
  std::cout << "input register: " << run.result.input_candidates.size()
            << " flip-flops via the " << to_string(run.result.variant)
            << " variant\n";
  return kOk;
}

// ---- inject

struct InjectOptions {
  std::string netlist;
  std::optional<std::string> report;
  std::optional<std::string> truth;
  AnalysisOptions analysis;
  unsigned t = 64;
  unsigned l = 64;
  std::string trigger_hex;
  unsigned capture_delay = 1;
  unsigned key_offset = 0;
  double budget_pct = 1.0;
  std::optional<std::string> rst_net;
  std::optional<std::string> key_hex;
  std::optional<std::uint64_t> seed;
  std::size_t dormant_cycles = 200;
  std::string out_dir = ".";
};

// Port of each located flip-flop, from the sidecar labels.
struct LocatedPorts {
  std::vector<std::string> word;
  std::string prefix;  // accelerator instance, e.g. "k0"
};

LocatedPorts located_ports(const GroundTruth& truth,
                           const std::vector<std::string>& located) {
  std::map<std::string, std::string> port_of;
  for (std::size_t i = 0; i < truth.input_ffs.size(); ++i) {
    for (std::size_t z = 0; z < truth.input_ffs[i].size(); ++z) {
      if (i < truth.input_ports.size() && z < truth.input_ports[i].size()) {
        port_of[truth.input_ffs[i][z]] = truth.input_ports[i][z];
      }
    }
  }
  LocatedPorts out;
  for (const auto& ff : located) {
    auto it = port_of.find(ff);
    if (it == port_of.end()) {
      throw Failure(kNotFound, "located flip-flop " + ff +
                                   " is not a labeled input register bit");
    }
    out.word.push_back(it->second);
  }
  const std::string& first = out.word.front();
  out.prefix = first.substr(0, first.find("_din"));
  return out;
}

void put_word(std::vector<std::pair<std::string, bool>>& cycle,
              const std::vector<std::string>& ports, const std::vector<bool>& bits) {
  for (std::size_t i = 0; i < ports.size(); ++i) {
    cycle.emplace_back(ports[i], i < bits.size() && bits[i]);
  }
}

int cmd_inject(const InjectOptions& o) {
  HthSpec spec;
  try {
    spec.trigger_width = o.t;
    spec.key_width = o.l;
    spec.capture_delay = o.capture_delay;
    spec.key_offset = o.key_offset;
    if (o.trigger_hex.empty()) throw std::invalid_argument("--trigger-hex is required");
    spec.trigger_width = o.t;
    if (o.t == 16 || o.t == 32 || o.t == 64) {
      spec.trigger = parse_trigger_hex(o.trigger_hex, o.t);
    }
    spec.check();
  } catch (const std::invalid_argument& e) {
    throw Failure(kUsage, std::string("invalid trojan spec: ") + e.what());
  }

  const Netlist victim = load_netlist(o.netlist);
  std::vector<std::string> located;
  unsigned lane_width = o.analysis.w;
  if (o.report) {
    try {
      const json r = json::parse(read_file(*o.report));
      r.at("inputs").get_to(located);
      lane_width = r.at("lane_width").get<unsigned>();
    } catch (const json::exception& e) {
      throw Failure(kInvalid, *o.report + ": " + e.what());
    }
  } else {
    located = analyze(victim, o.analysis.config()).input_names();
  }
  if (located.empty()) throw Failure(kNotFound, "no located input register");
  if (spec.trigger_width > lane_width) {
    throw Failure(kUsage, "trigger width exceeds the lane width " +
                              std::to_string(lane_width));
  }

  InsertOptions io;
  io.rst_global_net = o.rst_net;
  Insertion ins;
  try {
    ins = insert_hth(victim, build_hth(spec), located, spec, io);
  } catch (const std::invalid_argument& e) {
    throw Failure(kNotFound, e.what());
  }
  const OverheadReport overhead = overhead_report(victim, ins.netlist, o.budget_pct);
  write_file(out_path(o.out_dir, "trojaned.net"), write_netlist(ins.netlist));
  write_file(out_path(o.out_dir, "eco.json"), ins.edit.to_json());
  write_file(out_path(o.out_dir, "overhead.json"), overhead.to_json());
  write_file(out_path(o.out_dir, "hth.json"), hth_spec_to_json(spec));

  if (o.truth) {
    if (!o.seed) throw Failure(kUsage, "inject: stimulus generation needs --seed");
    const GroundTruth truth = load_truth(*o.truth);
    const LocatedPorts ports = located_ports(truth, located);
    std::mt19937_64 rng(*o.seed);
    std::vector<bool> key(spec.key_width);
    if (o.key_hex) {
      try {
        key = parse_trigger_hex(*o.key_hex, spec.key_width);
      } catch (const std::invalid_argument& e) {
        throw Failure(kUsage, std::string("--key-hex: ") + e.what());
      }
    } else {
      for (auto&& b : key) b = rng() & 1U;
    }
    // Word over the located order carrying K at key_offset.
    std::vector<bool> k_word(located.size(), false);
    for (unsigned j = 0; j < spec.key_width; ++j) k_word[spec.key_offset + j] = key[j];
    std::vector<bool> m_word(located.size(), false);
    for (unsigned i = 0; i < spec.trigger_width; ++i) m_word[i] = spec.trigger[i];

    const std::string load = ports.prefix + "_load";
    const std::string start = ports.prefix + "_start";
    const unsigned d = spec.capture_delay;
    const std::size_t trigger_cycles = 8 + d + spec.leak_cycles();
    Stimulus trig;
    trig.cycles.resize(trigger_cycles);
    put_word(trig.cycles[1], ports.word, m_word);
    trig.cycles[1].emplace_back(load, true);
    for (unsigned c = 2; c < 1 + d; ++c) put_word(trig.cycles[c], ports.word, {});
    put_word(trig.cycles[1 + d], ports.word, k_word);
    trig.cycles[2 + d].emplace_back(load, false);
    trig.cycles[3 + d].emplace_back(start, true);
    trig.cycles[4 + d].emplace_back(start, false);

    Stimulus dormant;
    for (std::size_t c = 0; c < o.dormant_cycles; ++c) {
      auto& cyc = dormant.cycles.emplace_back();
      std::vector<bool> word(located.size());
      for (auto&& b : word) b = rng() & 1U;
      if (std::equal(m_word.begin(), m_word.begin() + spec.trigger_width, word.begin())) {
        word[0] = !word[0];
      }
      put_word(cyc, ports.word, word);
      cyc.emplace_back(load, rng() % 3 == 0);
      cyc.emplace_back(start, rng() % 40 == 0);
    }
    write_file(out_path(o.out_dir, "trigger.stim"), write_stimulus(trig));
    write_file(out_path(o.out_dir, "dormant.stim"), write_stimulus(dormant));
    const json expected{{"key_hex", bits_to_hex(key)},
                        {"key_width", spec.key_width},
                        {"trigger_hex", bits_to_hex(spec.trigger)},
                        {"trigger_cycles", trigger_cycles},
                        {"dormant_cycles", o.dormant_cycles},
                        {"leak_cycles", spec.leak_cycles()}};
    write_file(out_path(o.out_dir, "expected.json"), expected.dump(1) + "\n");
  }

  std::cout << "+" << overhead.delta_cells << " cells (" << overhead.delta_percent
            << "% of " << overhead.baseline_cells << ", budget " << o.budget_pct
            << "%): " << (overhead.fits ? "fits" : "does not fit") << "\n";
  return overhead.fits ? kOk : kNotFound;
}

// ---- simulate

struct SimulateOptions {
  std::string netlist;
  std::string stimulus;
  std::optional<std::size_t> cycles;
  std::optional<std::string> baseline;
  std::optional<std::string> expect;
  std::vector<std::string> watch;
  std::string out_dir = ".";
};

int cmd_simulate(const SimulateOptions& o) {
  const Netlist n = load_netlist(o.netlist);
  Stimulus stim;
  try {
    stim = parse_stimulus(read_file(o.stimulus));
  } catch (const std::invalid_argument& e) {
    throw Failure(kInvalid, o.stimulus + ": " + e.what());
  }
  const std::size_t cycles = o.cycles.value_or(stim.size());
  SimOptions so;
  so.watch = o.watch;
  SimTrace trace;
  try {
    trace = simulate(n, stim, cycles, so);
  } catch (const std::invalid_argument& e) {
    throw Failure(kInvalid, e.what());
  }
  write_file(out_path(o.out_dir, "trace.csv"), trace_to_csv(trace));

  json verdict;
  verdict["cycles"] = cycles;
  verdict["islands"] = trace.islands.empty() ? 0 : trace.islands.front().size();
  std::vector<bool> stream;
  std::size_t enabled = 0;
  if (!trace.islands.empty() && !trace.islands.front().empty()) {
    stream = leak_stream(trace);
    for (const auto& row : trace.islands) enabled += row[0].enable;
  }
  verdict["enabled_cycles"] = enabled;
  verdict["leak_bits"] = stream.size();
  // MSB-first stream read as one number.
  std::vector<bool> msb_last(stream.rbegin(), stream.rend());
  verdict["leak_hex"] = stream.empty() ? "" : bits_to_hex(msb_last);
  verdict["k_recovered"] = nullptr;
  if (o.expect) {
    try {
      const json e = json::parse(read_file(*o.expect));
      const unsigned width = e.at("key_width").get<unsigned>();
      const std::vector<bool> want = parse_trigger_hex(e.at("key_hex").get<std::string>(), width);
      verdict["k_recovered"] = stream.size() == width && key_from_leak(stream, width) == want;
    } catch (const json::exception& e) {
      throw Failure(kInvalid, *o.expect + ": " + e.what());
    }
  }
  verdict["stealth_equal"] = nullptr;
  verdict["first_mismatch_cycle"] = nullptr;
  if (o.baseline) {
    const Netlist base = load_netlist(*o.baseline);
    Equivalence eq;
    try {
      eq = equivalence_check(base, n, stim, cycles);
    } catch (const std::invalid_argument& e) {
      throw Failure(kInvalid, e.what());
    }
    verdict["stealth_equal"] = eq.equal;
    if (eq.first_mismatch_cycle) {
      verdict["first_mismatch_cycle"] = *eq.first_mismatch_cycle;
      verdict["mismatched_output"] = eq.mismatched_output;
    }
  }
  write_file(out_path(o.out_dir, "verdict.json"), verdict.dump(1) + "\n");
  std::cout << verdict.dump() << "\n";
  return kOk;
}

// ---- validate, anonymize

int cmd_validate(const std::string& path) {
  Netlist n;
  try {
    n = parse_netlist(read_file(path));
  } catch (const ParseError& e) {
    std::cerr << path << ":" << e.what() << "\n";
    return kInvalid;
  }
  const auto violations = validate(n);
  for (const auto& v : violations) std::cout << to_string(v.kind) << ": " << v.message() << "\n";
  std::cout << n.num_cells() << " cells, " << n.num_flip_flops() << " flip-flops, "
            << violations.size() << " violation(s)\n";
  return violations.empty() ? kOk : kInvalid;
}

int cmd_anonymize(const std::string& path, std::optional<std::uint64_t> seed,
                  const std::string& out_dir) {
  if (!seed) throw Failure(kUsage, "anonymize: --seed is required");
  const Netlist n = load_netlist(path);
  const Anonymized a = anonymize(n, *seed);
  write_file(out_path(out_dir, "anonymized.net"), write_netlist(a.netlist));
  write_file(out_path(out_dir, "rename.map"), write_rename_map(a));
  return kOk;
}

// ---- config files

// `--config FILE` holds a JSON object of flag names (without dashes, '_' or
// '-' separators) to values. Its entries are appended after the command
// line, so they override flags given there.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::vector<std::string> out;
  std::vector<std::string> extra;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
      continue;
    }
    json j;
    try {
      j = json::parse(read_file(path));
    } catch (const json::exception& e) {
      throw Failure(kUsage, path + ": " + e.what());
    }
    if (!j.is_object()) throw Failure(kUsage, path + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
      std::string flag = "--" + key;
      for (auto& c : flag) {
        if (c == '_') c = '-';
      }
      std::string text;
      if (value.is_string()) {
        text = value.get<std::string>();
      } else if (value.is_array()) {
        for (const auto& v : value) {
          text += (text.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
        }
      } else {
        text = value.dump();
      }
      extra.push_back(flag + "=" + text);
    }
  }
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

void add_analysis_flags(CLI::App* cmd, AnalysisOptions& a) {
  cmd->add_option("--w,--lane-width", a.w, "Lane width of the target (1..64)");
  cmd->add_option("--instances", a.instances, "Expected Keccak instances");
  cmd->add_option("--shares", a.shares, "Expected shares per instance");
  cmd->add_option("--fif", a.fif, "Fanin floor override");
  cmd->add_option("--fic", a.fic, "Fanin ceiling override");
  cmd->add_option("--fof", a.fof, "Fanout floor override");
  cmd->add_option("--foc", a.foc, "Fanout ceiling override");
  cmd->add_flag("--grouped-only", a.grouped_only, "Skip the individual fallback");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keccak register localization and trojan insertion on gate-level netlists"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_unused;
  auto config_flag = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_unused, "JSON file whose entries override flags");
  };

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate an accelerator netlist and its labels");
  gen_cmd->add_option("--w,--lane-width", gen.cfg.lane_width, "Lane width (1..64)");
  gen_cmd->add_option("--instances", gen.cfg.instances, "Keccak instances");
  gen_cmd->add_option("--shares", gen.cfg.shares, "1 plain, 2 masked");
  gen_cmd->add_option("--decoys", gen.cfg.decoy_ffs, "Decoy flip-flops");
  gen_cmd->add_option("--seed", gen.seed, "Generation and anonymization seed");
  gen_cmd->add_flag("--split-loader", gen.cfg.split_loader, "Stage half the input register");
  gen_cmd->add_flag("--open", gen.open, "Keep readable names");
  gen_cmd->add_option("--name", gen.name, "Output file stem");
  gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory");
  config_flag(gen_cmd);

  AnalyzeOptions an;
  CLI::App* an_cmd = app.add_subcommand("analyze", "Locate the Keccak state and input register");
  an_cmd->add_option("netlist", an.netlist, "Netlist file")->required()->check(CLI::ExistingFile);
  an_cmd->add_option("--truth", an.truth, "Sidecar labels for precision/recall")->check(CLI::ExistingFile);
  add_analysis_flags(an_cmd, an.analysis);
  an_cmd->add_option("--out-dir", an.out_dir, "Output directory");
  config_flag(an_cmd);

  InjectOptions inj;
  CLI::App* inj_cmd = app.add_subcommand("inject", "Insert the trojan at the located register");
  inj_cmd->add_option("netlist", inj.netlist, "Victim netlist")->required()->check(CLI::ExistingFile);
  inj_cmd->add_option("--report", inj.report, "analyze report; analysis runs inline otherwise")
      ->check(CLI::ExistingFile);
  inj_cmd->add_option("--truth", inj.truth, "Sidecar labels; enables stimulus files")
      ->check(CLI::ExistingFile);
  add_analysis_flags(inj_cmd, inj.analysis);
  inj_cmd->add_option("--t", inj.t, "Trigger width T (16, 32, 64)");
  inj_cmd->add_option("--l", inj.l, "Key width L (16, 32, 64)");
  inj_cmd->add_option("--trigger-hex", inj.trigger_hex, "Trigger value M");
  inj_cmd->add_option("--capture-delay", inj.capture_delay, "Cycles from M to K");
  inj_cmd->add_option("--key-offset", inj.key_offset, "Register bit where K starts");
  inj_cmd->add_option("--budget-pct", inj.budget_pct, "Cell-count budget in percent");
  inj_cmd->add_option("--rst-net", inj.rst_net, "Victim net driving the trojan reset");
  inj_cmd->add_option("--key-hex", inj.key_hex, "K for the trigger stimulus");
  inj_cmd->add_option("--seed", inj.seed, "Seed for K and dormant traffic");
  inj_cmd->add_option("--dormant-cycles", inj.dormant_cycles, "Length of the dormant stimulus");
  inj_cmd->add_option("--out-dir", inj.out_dir, "Output directory");
  config_flag(inj_cmd);

  SimulateOptions sim;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Simulate a stimulus and report verdicts");
  sim_cmd->add_option("netlist", sim.netlist, "Netlist file")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--stimulus", sim.stimulus, "Stimulus file")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--cycles", sim.cycles, "Cycles to run; the stimulus length by default");
  sim_cmd->add_option("--baseline", sim.baseline, "Netlist for the stealth check")->check(CLI::ExistingFile);
  sim_cmd->add_option("--expect", sim.expect, "expected.json from inject")->check(CLI::ExistingFile);
  sim_cmd->add_option("--watch", sim.watch, "Nets to trace")->delimiter(',');
  sim_cmd->add_option("--out-dir", sim.out_dir, "Output directory");
  config_flag(sim_cmd);

  std::string val_path;
  CLI::App* val_cmd = app.add_subcommand("validate", "Check netlist structure");
  val_cmd->add_option("netlist", val_path, "Netlist file")->required()->check(CLI::ExistingFile);

  std::string anon_path, anon_out = ".";
  std::optional<std::uint64_t> anon_seed;
  CLI::App* anon_cmd = app.add_subcommand("anonymize", "Rename cells and internal nets");
  anon_cmd->add_option("netlist", anon_path, "Netlist file")->required()->check(CLI::ExistingFile);
  anon_cmd->add_option("--seed", anon_seed, "Renaming seed");
  anon_cmd->add_option("--out-dir", anon_out, "Output directory");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const Failure& f) {
    std::cerr << "repqc: " << f.what() << "\n";
    return f.code;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*an_cmd) return cmd_analyze(an);
    if (*inj_cmd) return cmd_inject(inj);
    if (*sim_cmd) return cmd_simulate(sim);
    if (*val_cmd) return cmd_validate(val_path);
    if (*anon_cmd) return cmd_anonymize(anon_path, anon_seed, anon_out);
  } catch (const Failure& f) {
    std::cerr << "repqc: " << f.what() << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "repqc: " << e.what() << "\n";
    return kError;
  }
  return kUsage;
}
