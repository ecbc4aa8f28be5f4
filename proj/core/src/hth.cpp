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

#include "repqc/hth.hpp"

#include <array>
#include <cctype>
#include <stdexcept>

#include "json.hpp"
#include "repqc/builder.hpp"

namespace repqc {
namespace {

bool supported_width(unsigned bits) {
  return bits == 16 || bits == 32 || bits == 64;
}

std::string indexed(const std::string& base, unsigned i) {
  return base + "[" + std::to_string(i) + "]";
}

// `base`, or `base_<k>` for the smallest k that is free.
template <typename Taken>
std::string unique_name(const std::string& base, Taken taken) {
  if (!taken(base)) return base;
  for (std::size_t k = 1;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!taken(candidate)) return candidate;
  }
}

}  // namespace

void HthSpec::check() const {
  if (!supported_width(trigger_width)) {
    throw std::invalid_argument("trigger width T must be 16, 32 or 64, got " +
                                std::to_string(trigger_width));
  }
  if (!supported_width(key_width)) {
    throw std::invalid_argument("key width L must be 16, 32 or 64, got " +
                                std::to_string(key_width));
  }
  if (trigger.size() != trigger_width) {
    throw std::invalid_argument("trigger value has " +
                                std::to_string(trigger.size()) + " bits, T = " +
                                std::to_string(trigger_width));
  }
  if (capture_delay == 0) {
    throw std::invalid_argument("capture_delay must be >= 1");
  }
}

std::vector<bool> parse_trigger_hex(std::string_view hex, unsigned bits) {
  if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) {
    hex.remove_prefix(2);
  }
  if (hex.empty()) throw std::invalid_argument("empty trigger hex");
  std::vector<bool> out(bits, false);
  unsigned pos = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it) {
    const char c = *it;
    if (!std::isxdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("bad hex digit '" + std::string(1, c) + "'");
    }
    const unsigned v = std::isdigit(static_cast<unsigned char>(c))
                           ? static_cast<unsigned>(c - '0')
                           : static_cast<unsigned>(std::tolower(c) - 'a' + 10);
    for (unsigned b = 0; b < 4; ++b, ++pos) {
      const bool set = (v >> b) & 1U;
      if (pos < bits) {
        out[pos] = set;
      } else if (set) {
        throw std::invalid_argument("trigger hex wider than " +
                                    std::to_string(bits) + " bits");
      }
    }
  }
  return out;
}

std::string bits_to_hex(const std::vector<bool>& bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (bits.size() + 3) / 4;
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    unsigned v = 0;
    for (unsigned b = 0; b < 4; ++b) {
      const std::size_t i = 4 * d + b;
      if (i < bits.size() && bits[i]) v |= 1U << b;
    }
    out[digits - 1 - d] = kDigits[v];
  }
  return out;
}

HthSpec hth_spec_from_json(std::string_view text) {
  using nlohmann::json;
  HthSpec spec;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("expected an object");
    spec.trigger_width = j.value("t", spec.trigger_width);
    spec.key_width = j.value("l", spec.key_width);
    spec.capture_delay = j.value("capture_delay", spec.capture_delay);
    spec.key_offset = j.value("key_offset", spec.key_offset);
    if (!j.contains("trigger_hex")) {
      throw std::invalid_argument("missing trigger_hex");
    }
    spec.trigger = parse_trigger_hex(j.at("trigger_hex").get<std::string>(),
                                     spec.trigger_width);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("hth spec: ") + e.what());
  }
  spec.check();
  return spec;
}

std::string hth_spec_to_json(const HthSpec& spec) {
  const nlohmann::json j{{"t", spec.trigger_width},
                         {"l", spec.key_width},
                         {"trigger_hex", bits_to_hex(spec.trigger)},
                         {"capture_delay", spec.capture_delay},
                         {"key_offset", spec.key_offset}};
  return j.dump(1) + "\n";
}

Netlist build_hth(const HthSpec& spec) {
  spec.check();
  const unsigned t_bits = spec.trigger_width;
  const unsigned l_bits = spec.key_width;
  Netlist n("hth");
  NetlistBuilder b(n, "hth");

  const NetId clk = n.add_input("clk");
  const NetId rst_global = n.add_input("rst_global");
  std::vector<NetId> m, k;
  for (unsigned i = 0; i < t_bits; ++i) m.push_back(n.add_input(indexed("m", i)));
  for (unsigned i = 0; i < l_bits; ++i) k.push_back(n.add_input(indexed("k", i)));

  std::vector<NetId> equal;
  for (unsigned i = 0; i < t_bits; ++i) {
    equal.push_back(b.xnor2(m[i], b.constant(spec.trigger[i])));
  }
  const NetId match = b.and_tree(equal);
  const NetId rst_local = b.or2(match, rst_global);

  std::vector<NetId> f(spec.capture_delay);
  for (unsigned i = 0; i < spec.capture_delay; ++i) {
    f[i] = b.named_net("hth_f" + std::to_string(i + 1) + "_q");
  }
  b.dff("hth_f1", f[0], match, clk, rst_global);
  for (unsigned i = 1; i < spec.capture_delay; ++i) {
    b.dff("hth_f" + std::to_string(i + 1), f[i], f[i - 1], clk, rst_local);
  }
  const NetId capture = f.back();

  std::vector<NetId> leak_states(spec.leak_cycles());
  for (unsigned i = 0; i < leak_states.size(); ++i) {
    const std::string name = "hth_l" + std::to_string(i + 1);
    leak_states[i] = b.named_net(name + "_q");
    b.dff(name, leak_states[i], i == 0 ? capture : leak_states[i - 1], clk,
          rst_local);
  }
  const NetId shift = b.or_tree(leak_states);

  std::vector<NetId> sr(l_bits);
  for (unsigned i = 0; i < l_bits; ++i) {
    sr[i] = b.named_net(indexed("hth_sr_q", i));
  }
  for (unsigned i = 0; i < l_bits; ++i) {
    const NetId shifted = i >= 2 ? sr[i - 2] : b.tie0();
    const NetId d = b.gate(CellKind::kMux4,
                           {sr[i], shifted, k[i], k[i], shift, capture});
    b.dff(indexed("hth_sr", i), sr[i], d, clk, rst_global);
  }
  const NetId leak_msb = sr[l_bits - 1];
  const NetId leak_lsb = sr[l_bits - 2];

  b.set_tags({std::string(kAnalogIslandTag)});
  const NetId fb = b.named_net("hth_ro_fb");
  NetId ring = b.nand2(shift, fb);
  for (int i = 0; i < 4; ++i) ring = b.inv(ring);
  std::array<NetId, 4> taps{};
  for (auto& tap : taps) tap = b.buf(ring);
  n.add_cell(CellKind::kMux4, "hth_ro_mux",
             std::array<NetId, 6>{taps[0], taps[1], taps[2], taps[3], leak_lsb,
                                  leak_msb},
             fb, {std::string(kAnalogIslandTag)});
  b.set_tags({});

  // Observation ports for standalone runs; declared on existing nets so
  // they cost no cells and vanish on insertion.
  n.add_output(shift);
  n.add_output(leak_msb);
  n.add_output(leak_lsb);
  return n;
}

std::string EcoEdit::to_json() const {
  const nlohmann::json j{{"added_cells", added_cells},
                         {"added_nets", added_nets},
                         {"tapped_nets", tapped_nets},
                         {"clock_net", clock_net},
                         {"reset_net", reset_net},
                         {"removed_cells", removed_cells},
                         {"removed_nets", removed_nets},
                         {"added_cell_count", added_cells.size()},
                         {"removed_cell_count", removed_cells.size()}};
  return j.dump(1) + "\n";
}

Insertion insert_hth(const Netlist& victim, const Netlist& fragment,
                     const std::vector<std::string>& located,
                     const HthSpec& spec, const InsertOptions& options) {
  spec.check();
  const std::size_t needed = std::max<std::size_t>(
      spec.trigger_width, std::size_t{spec.key_offset} + spec.key_width);
  if (located.size() < needed) {
    throw std::invalid_argument(
        "insert_hth: " + std::to_string(located.size()) +
        " located input flip-flops, the trojan needs " + std::to_string(needed));
  }
  auto q_of = [&](const std::string& ff) {
    const auto cell = victim.find_cell(ff);
    if (!cell || victim.cell(*cell).kind != CellKind::kDff) {
      throw std::invalid_argument("insert_hth: attach flip-flop '" + ff +
                                  "' not found");
    }
    return victim.cell(*cell).output;
  };

  Insertion ins;
  ins.netlist = victim;
  Netlist& out = ins.netlist;
  EcoEdit& edit = ins.edit;
  auto net_taken = [&](const std::string& s) { return out.find_net(s).has_value(); };
  auto cell_taken = [&](const std::string& s) { return out.find_cell(s).has_value(); };

  std::vector<NetId> map(fragment.num_nets(), kNoNet);
  const NetId clk = victim.cell(*victim.find_cell(located.front())).inputs[kDffClk];
  edit.clock_net = victim.net_name(clk);

  NetId rst = kNoNet;
  if (options.rst_global_net) {
    const auto net = victim.find_net(*options.rst_global_net);
    if (!net) {
      throw std::invalid_argument("insert_hth: reset net '" +
                                  *options.rst_global_net + "' not found");
    }
    rst = *net;
  } else {
    const std::string net_name = unique_name("hth_rst_global", net_taken);
    rst = out.add_net(net_name);
    const std::string cell_name = unique_name("hth_rst_tie", cell_taken);
    out.add_cell(CellKind::kTie0, cell_name, {}, rst);
    edit.added_nets.push_back(net_name);
    edit.added_cells.push_back(cell_name);
  }
  edit.reset_net = out.net_name(rst);

  for (NetId port : fragment.inputs()) {
    const std::string& name = fragment.net_name(port);
    if (name == "clk") {
      map[port] = clk;
    } else if (name == "rst_global") {
      map[port] = rst;
    } else {
      const auto open = name.find('[');
      const unsigned i = static_cast<unsigned>(std::stoul(name.substr(open + 1)));
      const std::string bus = name.substr(0, open);
      const std::string& ff = bus == "m" ? located.at(i)
                                         : located.at(spec.key_offset + i);
      map[port] = q_of(ff);
      (bus == "m" ? ins.trigger_taps : ins.key_taps).push_back(ff);
    }
  }
  for (NetId port : fragment.inputs()) {
    const std::string& name = fragment.net_name(port);
    if (name == "clk" || name == "rst_global") continue;
    const std::string& tapped = victim.net_name(map[port]);
    if (std::find(edit.tapped_nets.begin(), edit.tapped_nets.end(), tapped) ==
        edit.tapped_nets.end()) {
      edit.tapped_nets.push_back(tapped);
    }
  }

  for (NetId net = 0; net < fragment.num_nets(); ++net) {
    if (map[net] != kNoNet) continue;
    const std::string name = unique_name(fragment.net_name(net), net_taken);
    map[net] = out.add_net(name);
    edit.added_nets.push_back(name);
  }
  for (const Cell& cell : fragment.cells()) {
    std::array<NetId, kMaxCellInputs> inputs{};
    std::size_t arity = 0;
    for (NetId in : cell.input_span()) {
      if (in == kNoNet) break;
      inputs[arity++] = map[in];
    }
    const std::string name = unique_name(cell.name, cell_taken);
    out.add_cell(cell.kind, name, {inputs.data(), arity}, map[cell.output],
                 cell.tags);
    edit.added_cells.push_back(name);
  }
  return ins;
}

std::string OverheadReport::to_json() const {
  const nlohmann::json j{{"baseline_cells", baseline_cells},
                         {"trojaned_cells", trojaned_cells},
                         {"baseline_ffs", baseline_ffs},
                         {"trojaned_ffs", trojaned_ffs},
                         {"delta_cells", delta_cells},
                         {"delta_percent", delta_percent},
                         {"budget_percent", budget_percent},
                         {"fits", fits}};
  return j.dump(1) + "\n";
}

OverheadReport overhead_report(const Netlist& baseline,
                               const Netlist& trojaned, double budget_percent) {
  OverheadReport r;
  r.baseline_cells = baseline.num_cells();
  r.trojaned_cells = trojaned.num_cells();
  r.baseline_ffs = baseline.num_flip_flops();
  r.trojaned_ffs = trojaned.num_flip_flops();
  r.delta_cells = static_cast<long long>(r.trojaned_cells) -
                  static_cast<long long>(r.baseline_cells);
  r.delta_percent = r.baseline_cells == 0
                        ? 0.0
                        : 100.0 * static_cast<double>(r.delta_cells) /
                              static_cast<double>(r.baseline_cells);
  r.budget_percent = budget_percent;
  r.fits = r.delta_percent <= budget_percent;
  return r;
}

std::vector<bool> key_from_leak(const std::vector<bool>& stream,
                                unsigned key_width) {
  if (stream.size() < key_width) {
    throw std::invalid_argument("leak stream has " +
                                std::to_string(stream.size()) + " bits, key " +
                                std::to_string(key_width));
  }
  std::vector<bool> key(key_width);
  for (unsigned i = 0; i < key_width; ++i) key[key_width - 1 - i] = stream[i];
  return key;
}

}  // namespace repqc
