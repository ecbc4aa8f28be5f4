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

// Trojan fragment and its additive insertion.
//
// Fragment ports: clk, rst_global, m[0..T-1] (watched word), k[0..L-1]
// (captured word). The enable net and the two leak nets are also output
// ports for standalone simulation; insertion does not carry the ports over.
//
//   comparator  m[i] XNOR M[i], AND-reduced into `match`
//   fsm         one-hot: f1 <- match, f2..fd delay the capture by
//               capture_delay cycles, fd loads k into the shift register,
//               then l1..l(L/2) hold `enable` for L/2 cycles; every state
//               but f1 is cleared by rst_local = match | rst_global
//   shift reg   sr[i] holds, loads k[i] on capture, takes sr[i-2] on shift
//   leak        {sr[L-1], sr[L-2]}; the first symbol carries k[L-1], k[L-2]
//   oscillator  NAND2(enable, fb), 4 INV, 4 BUF, MUX4 selected by leak
//               driving fb; all ten cells tagged analog_island

#ifndef REPQC_HTH_HPP_
#define REPQC_HTH_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repqc/netlist.hpp"

namespace repqc {

struct HthSpec {
  unsigned trigger_width = 64;  // T
  unsigned key_width = 64;      // L
  std::vector<bool> trigger;    // M, bit i compared with m[i]
  unsigned capture_delay = 1;   // cycles from match to sampling k
  // k[j] taps located register position key_offset + j.
  unsigned key_offset = 0;

  unsigned leak_cycles() const { return key_width / 2; }
  // Throws std::invalid_argument.
  void check() const;
};

// Hex digits, most significant first, into `bits` little-endian bits.
std::vector<bool> parse_trigger_hex(std::string_view hex, unsigned bits);
std::string bits_to_hex(const std::vector<bool>& bits);

HthSpec hth_spec_from_json(std::string_view text);
std::string hth_spec_to_json(const HthSpec& spec);

Netlist build_hth(const HthSpec& spec);

struct EcoEdit {
  std::vector<std::string> added_cells;
  std::vector<std::string> added_nets;
  // Located flip-flop outputs read by the fragment.
  std::vector<std::string> tapped_nets;
  std::string clock_net;
  std::string reset_net;
  std::vector<std::string> removed_cells;  // always empty
  std::vector<std::string> removed_nets;   // always empty

  std::string to_json() const;
};

struct InsertOptions {
  // Victim net driving rst_global; a new TIE0 otherwise.
  std::optional<std::string> rst_global_net;
};

struct Insertion {
  Netlist netlist;
  EcoEdit edit;
  std::vector<std::string> trigger_taps;  // flip-flop per m[i]
  std::vector<std::string> key_taps;      // flip-flop per k[j]
};

// `located` lists input-register flip-flops in located order. m[i] taps
// the output of located[i], k[j] the output of located[key_offset + j].
// The fragment clock joins the clock of located[0]. Throws
// std::invalid_argument when there are too few flip-flops or one is missing.
Insertion insert_hth(const Netlist& victim, const Netlist& fragment,
                     const std::vector<std::string>& located,
                     const HthSpec& spec, const InsertOptions& options = {});

struct OverheadReport {
  std::size_t baseline_cells = 0;
  std::size_t trojaned_cells = 0;
  std::size_t baseline_ffs = 0;
  std::size_t trojaned_ffs = 0;
  long long delta_cells = 0;
  double delta_percent = 0.0;
  double budget_percent = 0.0;
  bool fits = true;

  std::string to_json() const;
};

OverheadReport overhead_report(const Netlist& baseline,
                               const Netlist& trojaned,
                               double budget_percent = 1.0);

// Leak stream (MSB first) back to key bits, index j = k[j].
std::vector<bool> key_from_leak(const std::vector<bool>& stream,
                                unsigned key_width);

}  // namespace repqc

#endif  // REPQC_HTH_HPP_
