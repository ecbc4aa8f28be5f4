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

#include "repqc/netlist.hpp"

#include <algorithm>
#include <sstream>

namespace repqc {
namespace {

constexpr std::string_view kPinsA[] = {"a"};
constexpr std::string_view kPinsAB[] = {"a", "b"};
constexpr std::string_view kPinsMux2[] = {"d0", "d1", "s"};
constexpr std::string_view kPinsMux4[] = {"d0", "d1", "d2", "d3", "s0", "s1"};
constexpr std::string_view kPinsDff[] = {"d", "clk", "rst"};

const std::array<CellKindInfo, kNumCellKinds> kKindTable = {{
    {"INV", kPinsA, "y", 1},
    {"BUF", kPinsA, "y", 1},
    {"AND2", kPinsAB, "y", 2},
    {"OR2", kPinsAB, "y", 2},
    {"XOR2", kPinsAB, "y", 2},
    {"XNOR2", kPinsAB, "y", 2},
    {"NAND2", kPinsAB, "y", 2},
    {"NOR2", kPinsAB, "y", 2},
    {"MUX2", kPinsMux2, "y", 3},
    {"MUX4", kPinsMux4, "y", 6},
    {"DFF", kPinsDff, "q", 2},
    {"TIE0", {}, "y", 0},
    {"TIE1", {}, "y", 0},
}};

void check_identifier(std::string_view id) {
  if (!is_valid_identifier(id)) {
    throw std::invalid_argument("invalid identifier '" + std::string(id) +
                                "'");
  }
}

}  // namespace

const CellKindInfo& cell_kind_info(CellKind kind) {
  return kKindTable[static_cast<std::size_t>(kind)];
}

std::optional<CellKind> cell_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kKindTable.size(); ++i) {
    if (kKindTable[i].name == name) return static_cast<CellKind>(i);
  }
  return std::nullopt;
}

std::string_view to_string(CellKind kind) { return cell_kind_info(kind).name; }

bool is_valid_identifier(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '[' || c == ']';
  });
}

bool Cell::has_tag(std::string_view tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

Netlist::Netlist(std::string name) : name_(std::move(name)) {
  check_identifier(name_);
}

void Netlist::set_name(std::string name) {
  check_identifier(name);
  name_ = std::move(name);
}

NetId Netlist::add_net(std::string name) {
  check_identifier(name);
  const auto id = static_cast<NetId>(net_names_.size());
  if (!net_index_.emplace(name, id).second) {
    throw std::invalid_argument("duplicate net '" + name + "'");
  }
  net_names_.push_back(std::move(name));
  net_is_input_.push_back(0);
  net_is_output_.push_back(0);
  return id;
}

NetId Netlist::add_input(std::string name) {
  const NetId id = add_net(std::move(name));
  net_is_input_[id] = 1;
  return id;
}

void Netlist::add_output(NetId net) {
  if (net >= num_nets()) throw std::out_of_range("add_output: bad net id");
  if (net_is_output_[net]) {
    throw std::invalid_argument("duplicate output port '" + net_names_[net] +
                                "'");
  }
  net_is_output_[net] = 1;
  outputs_.push_back(net);
}

CellId Netlist::add_cell(CellKind kind, std::string name,
                         std::span<const NetId> inputs, NetId output,
                         std::vector<std::string> tags) {
  check_identifier(name);
  const CellKindInfo& info = cell_kind_info(kind);
  if (inputs.size() < info.required_inputs ||
      inputs.size() > info.inputs.size()) {
    throw std::invalid_argument("cell '" + name + "' of kind " +
                                std::string(info.name) + " given " +
                                std::to_string(inputs.size()) + " inputs");
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const bool optional = i >= info.required_inputs;
    if (inputs[i] == kNoNet && optional) continue;
    if (inputs[i] >= num_nets()) {
      throw std::out_of_range("cell '" + name + "': bad input net id");
    }
  }
  if (output >= num_nets()) {
    throw std::out_of_range("cell '" + name + "': bad output net id");
  }
  for (const auto& tag : tags) check_identifier(tag);

  const auto id = static_cast<CellId>(cells_.size());
  if (!cell_index_.emplace(name, id).second) {
    throw std::invalid_argument("duplicate cell '" + name + "'");
  }
  Cell cell;
  cell.name = std::move(name);
  cell.kind = kind;
  cell.inputs.fill(kNoNet);
  std::copy(inputs.begin(), inputs.end(), cell.inputs.begin());
  cell.output = output;
  cell.tags = std::move(tags);
  cells_.push_back(std::move(cell));
  return id;
}

std::optional<NetId> Netlist::find_net(std::string_view name) const {
  auto it = net_index_.find(std::string(name));
  if (it == net_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<CellId> Netlist::find_cell(std::string_view name) const {
  auto it = cell_index_.find(std::string(name));
  if (it == cell_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<NetId> Netlist::inputs() const {
  std::vector<NetId> result;
  for (NetId id = 0; id < num_nets(); ++id) {
    if (net_is_input_[id]) result.push_back(id);
  }
  return result;
}

std::size_t Netlist::count_cells(CellKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(),
                    [kind](const Cell& c) { return c.kind == kind; }));
}

bool operator==(const Netlist& a, const Netlist& b) {
  return a.name_ == b.name_ && a.net_names_ == b.net_names_ &&
         a.net_is_input_ == b.net_is_input_ && a.outputs_ == b.outputs_ &&
         a.cells_ == b.cells_;
}

Connectivity::Connectivity(const Netlist& netlist)
    : driver(netlist.num_nets(), kUndriven), readers(netlist.num_nets()) {
  for (NetId id = 0; id < netlist.num_nets(); ++id) {
    if (netlist.is_input_net(id)) driver[id] = kInputPort;
  }
  for (CellId c = 0; c < netlist.num_cells(); ++c) {
    const Cell& cell = netlist.cell(c);
    if (driver[cell.output] == kUndriven) {
      driver[cell.output] = c;
    } else {
      multiply_driven.push_back(cell.output);
    }
    for (NetId in : cell.input_span()) {
      if (in != kNoNet) readers[in].push_back(c);
    }
  }
  std::sort(multiply_driven.begin(), multiply_driven.end());
  multiply_driven.erase(
      std::unique(multiply_driven.begin(), multiply_driven.end()),
      multiply_driven.end());
}

std::string_view to_string(NetlistErrorKind kind) {
  switch (kind) {
    case NetlistErrorKind::kSyntax:
      return "syntax error";
    case NetlistErrorKind::kUndeclaredNet:
      return "undeclared net";
    case NetlistErrorKind::kUndrivenNet:
      return "undriven net";
    case NetlistErrorKind::kMultiplyDrivenNet:
      return "multiply-driven net";
    case NetlistErrorKind::kUnknownCellKind:
      return "unknown cell kind";
    case NetlistErrorKind::kArityMismatch:
      return "arity mismatch";
    case NetlistErrorKind::kDuplicateName:
      return "duplicate name";
  }
  return "unknown";
}

ParseError::ParseError(NetlistErrorKind kind, std::size_t line,
                       std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": " + std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

struct PendingBinding {
  Token port;
  Token net;
};

struct PendingCell {
  Token kind;
  Token name;
  std::vector<PendingBinding> bindings;
  std::vector<Token> tags;
};

enum class DeclKind { kInput, kNet };

struct PendingDecl {
  DeclKind kind;
  Token name;
};

std::vector<Token> tokenize_line(std::string_view line, std::size_t line_no) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r' && line[j] != '#') {
      ++j;
    }
    tokens.push_back({line.substr(i, j - i), line_no, i + 1});
    i = j;
  }
  return tokens;
}

[[noreturn]] void fail(NetlistErrorKind kind, const Token& at,
                       const std::string& message) {
  throw ParseError(kind, at.line, at.column, message);
}

void expect_identifier(const Token& tok) {
  if (!is_valid_identifier(tok.text)) {
    fail(NetlistErrorKind::kSyntax, tok,
         "invalid identifier '" + std::string(tok.text) + "'");
  }
}

void expect_arg_count(const std::vector<Token>& tokens, std::size_t n) {
  if (tokens.size() != n) {
    const Token& at = tokens.size() > n ? tokens[n] : tokens.back();
    fail(NetlistErrorKind::kSyntax, at,
         "'" + std::string(tokens[0].text) + "' expects " +
             std::to_string(n - 1) + " argument(s)");
  }
}

// Splits "KEY=VALUE"; returns false when there is no '='.
bool split_binding(const Token& tok, Token& key, Token& value) {
  const auto eq = tok.text.find('=');
  if (eq == std::string_view::npos) return false;
  key = {tok.text.substr(0, eq), tok.line, tok.column};
  value = {tok.text.substr(eq + 1), tok.line, tok.column + eq + 1};
  return true;
}

}  // namespace

Netlist parse_netlist(std::string_view text) {
  std::optional<Token> module_name;
  bool ended = false;
  std::vector<PendingDecl> decls;
  std::vector<Token> outputs;
  std::vector<PendingCell> cells;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  Token last_token{"", 1, 1};
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos
                                           : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    const auto tokens = tokenize_line(line, line_no);
    if (tokens.empty()) continue;
    last_token = tokens.back();
    const Token& head = tokens[0];
    if (ended) {
      fail(NetlistErrorKind::kSyntax, head, "content after endmodule");
    }
    if (!module_name && head.text != "module") {
      fail(NetlistErrorKind::kSyntax, head, "expected 'module'");
    }

    if (head.text == "module") {
      if (module_name) fail(NetlistErrorKind::kSyntax, head, "nested module");
      expect_arg_count(tokens, 2);
      expect_identifier(tokens[1]);
      module_name = tokens[1];
    } else if (head.text == "endmodule") {
      expect_arg_count(tokens, 1);
      ended = true;
    } else if (head.text == "input" || head.text == "net") {
      expect_arg_count(tokens, 2);
      expect_identifier(tokens[1]);
      decls.push_back(
          {head.text == "input" ? DeclKind::kInput : DeclKind::kNet,
           tokens[1]});
    } else if (head.text == "output") {
      expect_arg_count(tokens, 2);
      expect_identifier(tokens[1]);
      outputs.push_back(tokens[1]);
    } else if (head.text == "cell") {
      if (tokens.size() < 3) {
        fail(NetlistErrorKind::kSyntax, tokens.back(),
             "'cell' expects a kind and an instance id");
      }
      PendingCell cell{tokens[1], tokens[2], {}, {}};
      expect_identifier(cell.name);
      for (std::size_t i = 3; i < tokens.size(); ++i) {
        Token key, value;
        if (!split_binding(tokens[i], key, value)) {
          fail(NetlistErrorKind::kSyntax, tokens[i],
               "expected PORT=NET, got '" + std::string(tokens[i].text) + "'");
        }
        expect_identifier(value);
        if (key.text == "tag") {
          cell.tags.push_back(value);
        } else {
          expect_identifier(key);
          if (!cell.tags.empty()) {
            fail(NetlistErrorKind::kSyntax, tokens[i],
                 "port binding after tag");
          }
          cell.bindings.push_back({key, value});
        }
      }
      cells.push_back(std::move(cell));
    } else {
      fail(NetlistErrorKind::kSyntax, head,
           "unknown statement '" + std::string(head.text) + "'");
    }
  }
  if (!module_name) {
    fail(NetlistErrorKind::kSyntax, last_token, "missing 'module'");
  }
  if (!ended) {
    fail(NetlistErrorKind::kSyntax, last_token, "missing 'endmodule'");
  }

  Netlist netlist{std::string(module_name->text)};
  for (const auto& decl : decls) {
    if (netlist.find_net(decl.name.text)) {
      fail(NetlistErrorKind::kDuplicateName, decl.name,
           "net '" + std::string(decl.name.text) + "' declared twice");
    }
    if (decl.kind == DeclKind::kInput) {
      netlist.add_input(std::string(decl.name.text));
    } else {
      netlist.add_net(std::string(decl.name.text));
    }
  }
  auto resolve = [&](const Token& tok) {
    auto id = netlist.find_net(tok.text);
    if (!id) {
      fail(NetlistErrorKind::kUndeclaredNet, tok,
           "net '" + std::string(tok.text) + "' is not declared");
    }
    return *id;
  };
  for (const auto& out : outputs) {
    const NetId id = resolve(out);
    if (netlist.is_output_net(id)) {
      fail(NetlistErrorKind::kDuplicateName, out,
           "output '" + std::string(out.text) + "' declared twice");
    }
    netlist.add_output(id);
  }

  // Track drivers to report the first offending binding precisely.
  std::vector<const Token*> driver_token(netlist.num_nets(), nullptr);
  for (const auto& cell : cells) {
    const auto kind = cell_kind_from_name(cell.kind.text);
    if (!kind) {
      fail(NetlistErrorKind::kUnknownCellKind, cell.kind,
           "unknown cell kind '" + std::string(cell.kind.text) + "'");
    }
    const CellKindInfo& info = cell_kind_info(*kind);
    std::array<NetId, kMaxCellInputs> inputs;
    inputs.fill(kNoNet);
    NetId output = kNoNet;
    const Token* output_token = nullptr;
    for (const auto& binding : cell.bindings) {
      if (binding.port.text == info.output) {
        if (output != kNoNet) {
          fail(NetlistErrorKind::kArityMismatch, binding.port,
               "port '" + std::string(binding.port.text) + "' bound twice");
        }
        output = resolve(binding.net);
        output_token = &binding.net;
        continue;
      }
      auto it = std::find(info.inputs.begin(), info.inputs.end(),
                          binding.port.text);
      if (it == info.inputs.end()) {
        fail(NetlistErrorKind::kArityMismatch, binding.port,
             std::string(info.name) + " has no port '" +
                 std::string(binding.port.text) + "'");
      }
      const auto idx = static_cast<std::size_t>(it - info.inputs.begin());
      if (inputs[idx] != kNoNet) {
        fail(NetlistErrorKind::kArityMismatch, binding.port,
             "port '" + std::string(binding.port.text) + "' bound twice");
      }
      inputs[idx] = resolve(binding.net);
    }
    if (output == kNoNet) {
      fail(NetlistErrorKind::kArityMismatch, cell.name,
           "cell '" + std::string(cell.name.text) + "' has no output binding");
    }
    for (std::size_t i = 0; i < info.required_inputs; ++i) {
      if (inputs[i] == kNoNet) {
        fail(NetlistErrorKind::kArityMismatch, cell.name,
             "cell '" + std::string(cell.name.text) + "' leaves port '" +
                 std::string(info.inputs[i]) + "' unbound");
      }
    }
    if (netlist.find_cell(cell.name.text)) {
      fail(NetlistErrorKind::kDuplicateName, cell.name,
           "cell '" + std::string(cell.name.text) + "' declared twice");
    }
    if (netlist.is_input_net(output) || driver_token[output] != nullptr) {
      fail(NetlistErrorKind::kMultiplyDrivenNet, *output_token,
           "net '" + std::string(output_token->text) +
               "' has more than one driver");
    }
    driver_token[output] = output_token;

    std::vector<std::string> tags;
    for (const auto& tag : cell.tags) tags.emplace_back(tag.text);
    // Trailing unbound optional inputs are dropped so the binding count is
    // the smallest valid one.
    std::size_t n = info.inputs.size();
    while (n > info.required_inputs && inputs[n - 1] == kNoNet) --n;
    netlist.add_cell(*kind, std::string(cell.name.text), {inputs.data(), n},
                     output, std::move(tags));
  }

  for (std::size_t i = 0; i < decls.size(); ++i) {
    const NetId id = static_cast<NetId>(i);
    if (!netlist.is_input_net(id) && driver_token[id] == nullptr) {
      fail(NetlistErrorKind::kUndrivenNet, decls[i].name,
           "net '" + std::string(decls[i].name.text) + "' has no driver");
    }
  }
  return netlist;
}

std::string write_netlist(const Netlist& netlist) {
  std::ostringstream out;
  out << "module " << netlist.name() << '\n';
  for (NetId id = 0; id < netlist.num_nets(); ++id) {
    out << (netlist.is_input_net(id) ? "input " : "net ")
        << netlist.net_name(id) << '\n';
  }
  for (NetId id : netlist.outputs()) {
    out << "output " << netlist.net_name(id) << '\n';
  }
  for (const Cell& cell : netlist.cells()) {
    const CellKindInfo& info = cell_kind_info(cell.kind);
    out << "cell " << info.name << ' ' << cell.name;
    for (std::size_t i = 0; i < info.inputs.size(); ++i) {
      if (cell.inputs[i] == kNoNet) continue;
      out << ' ' << info.inputs[i] << '=' << netlist.net_name(cell.inputs[i]);
    }
    out << ' ' << info.output << '=' << netlist.net_name(cell.output);
    for (const auto& tag : cell.tags) out << " tag=" << tag;
    out << '\n';
  }
  out << "endmodule\n";
  return out.str();
}

}  // namespace repqc
