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

#include "repqc/ground_truth.hpp"

#include <set>
#include <stdexcept>

#include "json.hpp"

namespace repqc {

using nlohmann::json;

std::size_t GroundTruth::total_state_ffs() const {
  std::size_t n = 0;
  for (const auto& list : state_ffs) n += list.size();
  return n;
}

std::vector<std::string> GroundTruth::all_state_ffs() const {
  std::vector<std::string> all;
  all.reserve(total_state_ffs());
  for (const auto& list : state_ffs) all.insert(all.end(), list.begin(), list.end());
  return all;
}

void check_ground_truth(const GroundTruth& truth) {
  const std::size_t w = truth.lane_width;
  if (truth.state_ffs.size() !=
      std::size_t{truth.instances} * std::size_t{truth.shares}) {
    throw std::invalid_argument("ground truth: state list count mismatch");
  }
  for (const auto& list : truth.state_ffs) {
    if (list.size() != 25 * w) {
      throw std::invalid_argument("ground truth: state list is not 25*w long");
    }
  }
  if (truth.input_ffs.size() != truth.instances) {
    throw std::invalid_argument("ground truth: input list count mismatch");
  }
  for (const auto& list : truth.input_ffs) {
    if (list.size() != w) {
      throw std::invalid_argument("ground truth: input list is not w long");
    }
  }
  std::set<std::string> labeled;
  for (const auto& list : truth.state_ffs) labeled.insert(list.begin(), list.end());
  for (const auto& list : truth.input_ffs) labeled.insert(list.begin(), list.end());
  for (const auto& decoy : truth.decoy_ffs) {
    if (labeled.count(decoy)) {
      throw std::invalid_argument("ground truth: decoy '" + decoy +
                                  "' is also labeled");
    }
  }
}

GroundTruth remap(const GroundTruth& truth, const RenameMap& cells) {
  auto map_one = [&](const std::string& id) {
    auto it = cells.find(id);
    if (it == cells.end()) {
      throw std::invalid_argument("remap: no rename for '" + id + "'");
    }
    return it->second;
  };
  auto map_list = [&](std::vector<std::string>& list) {
    for (auto& id : list) id = map_one(id);
  };
  GroundTruth out = truth;
  for (auto& list : out.state_ffs) map_list(list);
  for (auto& list : out.input_ffs) map_list(list);
  map_list(out.control_ffs);
  map_list(out.decoy_ffs);
  map_list(out.collisions);
  return out;
}

std::string ground_truth_to_json(const GroundTruth& truth) {
  json j;
  j["lane_width"] = truth.lane_width;
  j["instances"] = truth.instances;
  j["shares"] = truth.shares;
  j["state_ffs"] = truth.state_ffs;
  j["input_ffs"] = truth.input_ffs;
  j["input_ports"] = truth.input_ports;
  j["control_ffs"] = truth.control_ffs;
  j["decoy_ffs"] = truth.decoy_ffs;
  j["collisions"] = truth.collisions;
  return j.dump(1) + "\n";
}

GroundTruth ground_truth_from_json(std::string_view text) {
  GroundTruth truth;
  try {
    const json j = json::parse(text);
    truth.lane_width = j.at("lane_width").get<unsigned>();
    truth.instances = j.at("instances").get<unsigned>();
    truth.shares = j.at("shares").get<unsigned>();
    j.at("state_ffs").get_to(truth.state_ffs);
    j.at("input_ffs").get_to(truth.input_ffs);
    if (j.contains("input_ports")) j.at("input_ports").get_to(truth.input_ports);
    if (j.contains("control_ffs")) j.at("control_ffs").get_to(truth.control_ffs);
    j.at("decoy_ffs").get_to(truth.decoy_ffs);
    if (j.contains("collisions")) j.at("collisions").get_to(truth.collisions);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("ground truth json: ") + e.what());
  }
  check_ground_truth(truth);
  return truth;
}

}  // namespace repqc
