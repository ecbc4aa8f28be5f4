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

// Gate-level netlist IR shared by every analysis and transformation.
//
// All nets are single bits. A net is driven either by an input port or by
// exactly one cell output. Output ports observe an existing net and share its
// name. Cells bind their pins positionally: inputs first (in the order given
// by CellKindInfo::inputs), output last.

#ifndef REPQC_NETLIST_HPP_
#define REPQC_NETLIST_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace repqc {

enum class CellKind : std::uint8_t {
  kInv,
  kBuf,
  kAnd2,
  kOr2,
  kXor2,
  kXnor2,
  kNand2,
  kNor2,
  kMux2,
  kMux4,
  kDff,
  kTie0,
  kTie1,
};

inline constexpr std::size_t kNumCellKinds = 13;
inline constexpr std::size_t kMaxCellInputs = 6;

using NetId = std::uint32_t;
using CellId = std::uint32_t;
inline constexpr NetId kNoNet = std::numeric_limits<NetId>::max();

// Tag that exempts a cell from combinational-loop checks and makes it opaque
// to dependency extraction and logic simulation.
inline constexpr std::string_view kAnalogIslandTag = "analog_island";

struct CellKindInfo {
  std::string_view name;
  std::span<const std::string_view> inputs;
  std::string_view output;
  // Inputs at index >= required_inputs may be left unbound (DFF rst only).
  std::size_t required_inputs;
};

const CellKindInfo& cell_kind_info(CellKind kind);
std::optional<CellKind> cell_kind_from_name(std::string_view name);
std::string_view to_string(CellKind kind);

inline bool is_sequential(CellKind kind) { return kind == CellKind::kDff; }

// DFF input pin positions.
inline constexpr std::size_t kDffD = 0;
inline constexpr std::size_t kDffClk = 1;
inline constexpr std::size_t kDffRst = 2;

// Identifiers are [A-Za-z0-9_\[\]]+.
bool is_valid_identifier(std::string_view id);

struct Cell {
  std::string name;
  CellKind kind = CellKind::kBuf;
  std::array<NetId, kMaxCellInputs> inputs{};
  NetId output = kNoNet;
  std::vector<std::string> tags;

  std::size_t num_inputs() const {
    return cell_kind_info(kind).inputs.size();
  }
  std::span<const NetId> input_span() const {
    return {inputs.data(), num_inputs()};
  }
  bool has_tag(std::string_view tag) const;
  bool is_analog_island() const { return has_tag(kAnalogIslandTag); }

  friend bool operator==(const Cell&, const Cell&) = default;
};

class Netlist {
 public:
  explicit Netlist(std::string name = "top");

  const std::string& name() const { return name_; }
  void set_name(std::string name);

  // Adds an internal net. Throws std::invalid_argument on a bad or duplicate
  // identifier.
  NetId add_net(std::string name);
  // Adds an input port together with the net it drives.
  NetId add_input(std::string name);
  // Marks an existing net as observed by an output port of the same name.
  void add_output(NetId net);

  // `inputs` must hold between required_inputs and all inputs of `kind`;
  // missing optional inputs are unbound.
  CellId add_cell(CellKind kind, std::string name,
                  std::span<const NetId> inputs, NetId output,
                  std::vector<std::string> tags = {});

  std::size_t num_nets() const { return net_names_.size(); }
  std::size_t num_cells() const { return cells_.size(); }
  const std::string& net_name(NetId id) const { return net_names_.at(id); }
  const std::vector<std::string>& net_names() const { return net_names_; }
  bool is_input_net(NetId id) const { return net_is_input_.at(id) != 0; }
  std::optional<NetId> find_net(std::string_view name) const;
  std::optional<CellId> find_cell(std::string_view name) const;

  const Cell& cell(CellId id) const { return cells_.at(id); }
  const std::vector<Cell>& cells() const { return cells_; }

  // Input ports in net order.
  std::vector<NetId> inputs() const;
  const std::vector<NetId>& outputs() const { return outputs_; }
  bool is_output_net(NetId id) const { return net_is_output_.at(id) != 0; }

  std::size_t count_cells(CellKind kind) const;
  std::size_t num_flip_flops() const { return count_cells(CellKind::kDff); }

  friend bool operator==(const Netlist& a, const Netlist& b);

 private:
  std::string name_;
  std::vector<std::string> net_names_;
  std::vector<char> net_is_input_;
  std::vector<char> net_is_output_;
  std::vector<NetId> outputs_;
  std::vector<Cell> cells_;
  std::unordered_map<std::string, NetId> net_index_;
  std::unordered_map<std::string, CellId> cell_index_;
};

// Driver and reader lists for every net.
struct Connectivity {
  static constexpr CellId kInputPort = std::numeric_limits<CellId>::max() - 1;
  static constexpr CellId kUndriven = std::numeric_limits<CellId>::max();

  // Driving cell, kInputPort, or kUndriven. When several drivers exist the
  // first one is kept and the net is listed in multiply_driven.
  std::vector<CellId> driver;
  std::vector<std::vector<CellId>> readers;
  std::vector<NetId> multiply_driven;

  explicit Connectivity(const Netlist& netlist);
};

enum class NetlistErrorKind {
  kSyntax,
  kUndeclaredNet,
  kUndrivenNet,
  kMultiplyDrivenNet,
  kUnknownCellKind,
  kArityMismatch,
  kDuplicateName,
};

std::string_view to_string(NetlistErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(NetlistErrorKind kind, std::size_t line, std::size_t column,
             const std::string& message);

  NetlistErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  NetlistErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

// Parses the line-oriented structural format:
//
//   module NAME
//   input N | output N | net N
//   cell KIND ID PORT=NET ... [tag=TAG ...]
//   endmodule
//
// `#` starts a comment. Declarations and cells may appear in any order;
// output ports must name a net declared by `input` or `net`.
Netlist parse_netlist(std::string_view text);

// Emits nets in net order, then output ports, then cells. parse_netlist of
// the result compares equal to the input.
std::string write_netlist(const Netlist& netlist);

}  // namespace repqc

#endif  // REPQC_NETLIST_HPP_
