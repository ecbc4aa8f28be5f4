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

#include "repqc/grouping.hpp"

#include <deque>
#include <map>
#include <sstream>

namespace repqc {
namespace {

// Shortest-path levels; `next` yields the neighbours one step further away
// from the seeds.
template <typename Seed, typename Next>
std::vector<int> bfs_levels(std::size_t n, Seed is_seed, Next next) {
  std::vector<int> level(n, kUnreachable);
  std::deque<FfIndex> queue;
  for (FfIndex f = 0; f < n; ++f) {
    if (is_seed(f)) {
      level[f] = 1;
      queue.push_back(f);
    }
  }
  while (!queue.empty()) {
    const FfIndex f = queue.front();
    queue.pop_front();
    for (FfIndex g : next(f)) {
      if (level[g] == kUnreachable) {
        level[g] = level[f] + 1;
        queue.push_back(g);
      }
    }
  }
  return level;
}

}  // namespace

LevelTable compute_levels(const DependencyGraph& graph) {
  LevelTable levels;
  levels.input_level = bfs_levels(
      graph.size(), [&](FfIndex f) { return graph.reaches_input(f); },
      [&](FfIndex f) -> const std::vector<FfIndex>& { return graph.sinks(f); });
  levels.output_level = bfs_levels(
      graph.size(), [&](FfIndex f) { return graph.reaches_output(f); },
      [&](FfIndex f) -> const std::vector<FfIndex>& {
        return graph.sources(f);
      });
  return levels;
}

GroupTable group_by_levels(const LevelTable& levels) {
  const std::size_t n = levels.input_level.size();
  std::map<std::pair<int, int>, std::vector<FfIndex>> by_key;
  std::vector<FfIndex> residual;
  for (FfIndex f = 0; f < n; ++f) {
    const int in = levels.input_level[f];
    const int out = levels.output_level[f];
    if (in == kUnreachable || out == kUnreachable) {
      residual.push_back(f);
    } else {
      by_key[{in, out}].push_back(f);
    }
  }
  GroupTable table;
  table.group_of.assign(n, 0);
  for (auto& [key, members] : by_key) {
    Group g;
    g.id = table.groups.size();
    g.input_level = key.first;
    g.output_level = key.second;
    g.members = std::move(members);
    table.groups.push_back(std::move(g));
  }
  if (!residual.empty()) {
    Group g;
    g.id = table.groups.size();
    g.residual = true;
    g.members = std::move(residual);
    table.groups.push_back(std::move(g));
  }
  for (const Group& g : table.groups) {
    for (FfIndex f : g.members) table.group_of[f] = g.id;
  }
  return table;
}

std::string dump_groups(const GroupTable& groups,
                        const DependencyGraph& graph) {
  std::ostringstream out;
  out << "group-id,input_level,output_level,size,members\n";
  for (const Group& g : groups.groups) {
    out << g.id << ',' << g.input_level << ',' << g.output_level << ','
        << g.members.size();
    for (FfIndex f : g.members) out << ',' << graph.name(f);
    out << '\n';
  }
  return out.str();
}

}  // namespace repqc
