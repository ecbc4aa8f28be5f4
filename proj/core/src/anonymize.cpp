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

#include "repqc/anonymize.hpp"

#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include "repqc/random.hpp"

namespace repqc {
namespace {

class IdSource {
 public:
  IdSource(std::mt19937_64& rng, std::unordered_set<std::string> reserved)
      : rng_(rng), used_(std::move(reserved)) {}

  std::string next(char prefix) {
    static constexpr char kHex[] = "0123456789abcdef";
    for (;;) {
      std::uint64_t bits = rng_();
      std::string id(1, prefix);
      for (int i = 0; i < 10; ++i) {
        id.push_back(kHex[bits & 0xF]);
        bits >>= 4;
      }
      if (used_.insert(id).second) return id;
    }
  }

 private:
  std::mt19937_64& rng_;
  std::unordered_set<std::string> used_;
};

}  // namespace

Anonymized anonymize(const Netlist& netlist, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::unordered_set<std::string> port_names;
  for (NetId id = 0; id < netlist.num_nets(); ++id) {
    if (netlist.is_input_net(id) || netlist.is_output_net(id)) {
      port_names.insert(netlist.net_name(id));
    }
  }
  IdSource ids(rng, port_names);

  Anonymized result{Netlist(netlist.name()), {}, {}};

  std::vector<NetId> net_order(netlist.num_nets());
  std::iota(net_order.begin(), net_order.end(), 0);
  shuffle(net_order, rng);
  std::vector<NetId> new_id(netlist.num_nets(), kNoNet);
  for (NetId old : net_order) {
    const std::string& old_name = netlist.net_name(old);
    if (netlist.is_input_net(old)) {
      new_id[old] = result.netlist.add_input(old_name);
      continue;
    }
    std::string name = old_name;
    if (!netlist.is_output_net(old)) {
      name = ids.next('n');
      result.nets.emplace(old_name, name);
    }
    new_id[old] = result.netlist.add_net(std::move(name));
  }
  for (NetId out : netlist.outputs()) result.netlist.add_output(new_id[out]);

  std::vector<CellId> cell_order(netlist.num_cells());
  std::iota(cell_order.begin(), cell_order.end(), 0);
  shuffle(cell_order, rng);
  for (CellId old : cell_order) {
    const Cell& cell = netlist.cell(old);
    std::array<NetId, kMaxCellInputs> inputs;
    const std::size_t n = cell.num_inputs();
    std::size_t bound = n;
    while (bound > cell_kind_info(cell.kind).required_inputs &&
           cell.inputs[bound - 1] == kNoNet) {
      --bound;
    }
    for (std::size_t i = 0; i < bound; ++i) {
      inputs[i] = cell.inputs[i] == kNoNet ? kNoNet : new_id[cell.inputs[i]];
    }
    std::string name = ids.next('c');
    result.cells.emplace(cell.name, name);
    result.netlist.add_cell(cell.kind, std::move(name), {inputs.data(), bound},
                            new_id[cell.output], cell.tags);
  }
  return result;
}

std::string write_rename_map(const Anonymized& anonymized) {
  std::ostringstream out;
  for (const auto& [from, to] : anonymized.cells) {
    out << "cell " << from << ' ' << to << '\n';
  }
  for (const auto& [from, to] : anonymized.nets) {
    out << "net " << from << ' ' << to << '\n';
  }
  return out.str();
}

}  // namespace repqc
