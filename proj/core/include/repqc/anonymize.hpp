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

#ifndef REPQC_ANONYMIZE_HPP_
#define REPQC_ANONYMIZE_HPP_

#include <cstdint>
#include <map>
#include <string>

#include "repqc/netlist.hpp"

namespace repqc {

// old id -> new id.
using RenameMap = std::map<std::string, std::string>;

struct Anonymized {
  Netlist netlist;
  RenameMap cells;
  // Internal nets only; port nets keep their names.
  RenameMap nets;
};

// Replaces every cell instance id and every non-port net id with an opaque
// id, and permutes cell and net order, all drawn deterministically from
// `seed`. Port names are kept since they are the pins a stimulus drives.
Anonymized anonymize(const Netlist& netlist, std::uint64_t seed);

// Writes the rename map as "old new" lines, cells first then nets, each
// prefixed by "cell" or "net".
std::string write_rename_map(const Anonymized& anonymized);

}  // namespace repqc

#endif  // REPQC_ANONYMIZE_HPP_
