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

#include "repqc/generator.hpp"

#include <array>
#include <bit>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "repqc/anonymize.hpp"
#include "repqc/builder.hpp"
#include "repqc/depgraph.hpp"
#include "repqc/keccak.hpp"
#include "repqc/random.hpp"
#include "repqc/repqc.hpp"

namespace repqc {
namespace {

constexpr unsigned kLaneSelBits = 5;

std::string indexed(const std::string& base, unsigned i) {
  return base + "[" + std::to_string(i) + "]";
}

// Drives a freshly named output port from `src`.
void output_port(NetlistBuilder& b, NetId src, const std::string& name) {
  Netlist& n = b.netlist();
  const NetId port = n.add_net(name);
  const std::array<NetId, 1> in{src};
  n.add_cell(CellKind::kBuf, b.next_cell_name(), in, port);
  n.add_output(port);
}

class InstanceBuilder {
 public:
  InstanceBuilder(Netlist& n, NetId clk, const GenConfig& cfg, unsigned index,
                  GroundTruth& truth)
      : n_(n),
        clk_(clk),
        cfg_(cfg),
        w_(cfg.lane_width),
        p_("k" + std::to_string(index)),
        b_(n, p_),
        truth_(truth) {}

  void build() {
    ports();
    control();
    input_register();
    state();
    readout();
  }

 private:
  void ports() {
    for (unsigned z = 0; z < w_; ++z) {
      din_.push_back(n_.add_input(indexed(p_ + "_din", z)));
    }
    load_ = n_.add_input(p_ + "_load");
    start_ = n_.add_input(p_ + "_start");
    clear_ = n_.add_input(p_ + "_clear");
    for (unsigned i = 0; i < kLaneSelBits; ++i) {
      lane_sel_.push_back(n_.add_input(indexed(p_ + "_lane_sel", i)));
    }
  }

  NetId reg(const std::string& name) { return b_.named_net(name + "_q"); }

  void dff(const std::string& name, NetId q, NetId d, NetId rst = kNoNet) {
    b_.dff(name, q, d, clk_, rst);
    truth_.control_ffs.push_back(name);
  }

  void control() {
    absorb_q_ = reg(p_ + "_absorb");
    dff(p_ + "_absorb", absorb_q_, start_);
    clr_q_ = reg(p_ + "_clr");
    dff(p_ + "_clr", clr_q_, clear_);

    rounds_ = round_count(w_);
    const unsigned bits =
        std::max(1U, static_cast<unsigned>(std::bit_width(rounds_ - 1)));
    for (unsigned i = 0; i < bits; ++i) {
      cnt_q_.push_back(reg(indexed(p_ + "_cnt", i)));
    }
    std::vector<NetId> match;
    for (unsigned i = 0; i < bits; ++i) {
      match.push_back(((rounds_ - 1) >> i) & 1U ? cnt_q_[i] : b_.inv(cnt_q_[i]));
    }
    const NetId wrap = b_.and_tree(match);
    const NetId restart = b_.or2(start_, wrap);
    NetId carry = kNoNet;
    for (unsigned i = 0; i < bits; ++i) {
      const NetId sum = i == 0 ? b_.inv(cnt_q_[i]) : b_.xor2(cnt_q_[i], carry);
      carry = i == 0 ? cnt_q_[i] : b_.and2(cnt_q_[i], carry);
      dff(indexed(p_ + "_cnt", i), cnt_q_[i], sum, restart);
    }
    const NetId done_q = reg(p_ + "_done");
    dff(p_ + "_done", done_q, wrap);
    output_port(b_, done_q, p_ + "_done");
  }

  void input_register() {
    truth_.input_ffs.emplace_back();
    truth_.input_ports.emplace_back();
    // The staged half sees neither din nor load directly, which moves it
    // one input level further out.
    NetId staged_load = kNoNet;
    if (cfg_.split_loader) {
      staged_load = reg(p_ + "_pre_load");
      dff(p_ + "_pre_load", staged_load, load_);
    }
    for (unsigned z = 0; z < w_; ++z) {
      NetId src = din_[z];
      NetId load = load_;
      if (cfg_.split_loader && z >= w_ / 2) {
        const std::string pre = indexed(p_ + "_pre", z);
        src = reg(pre);
        dff(pre, src, din_[z]);
        load = staged_load;
      }
      const std::string name = indexed(p_ + "_in", z);
      const NetId q = reg(name);
      b_.dff(name, q, b_.mux2(q, src, load), clk_);
      in_q_.push_back(q);
      truth_.input_ffs.back().push_back(name);
      truth_.input_ports.back().push_back(n_.net_name(din_[z]));
    }
  }

  std::size_t at(unsigned x, unsigned y, unsigned z) const {
    return state_bit(x, y, z, w_);
  }

  std::string state_name(unsigned share, unsigned x, unsigned y,
                         unsigned z) const {
    return indexed(p_ + "_a" + std::to_string(share) + "_x" +
                       std::to_string(x) + "y" + std::to_string(y),
                   z);
  }

  void state() {
    const std::size_t bits = 25 * std::size_t{w_};
    std::vector<std::vector<NetId>> q(cfg_.shares, std::vector<NetId>(bits));
    std::vector<std::vector<NetId>> b(cfg_.shares, std::vector<NetId>(bits));
    for (unsigned s = 0; s < cfg_.shares; ++s) {
      for (unsigned x = 0; x < 5; ++x) {
        for (unsigned y = 0; y < 5; ++y) {
          for (unsigned z = 0; z < w_; ++z) {
            q[s][at(x, y, z)] = reg(state_name(s, x, y, z));
          }
        }
      }
      b[s] = linear_layers(q[s], s == 0);
    }
    state_q_ = q;

    for (unsigned s = 0; s < cfg_.shares; ++s) {
      truth_.state_ffs.emplace_back(bits);
      const unsigned other = cfg_.shares == 2 ? 1 - s : s;
      for (unsigned x = 0; x < 5; ++x) {
        for (unsigned y = 0; y < 5; ++y) {
          for (unsigned z = 0; z < w_; ++z) {
            const NetId b0 = b[s][at(x, y, z)];
            const NetId b1 = b[s][at((x + 1) % 5, y, z)];
            const NetId b2 = b[s][at((x + 2) % 5, y, z)];
            NetId out = b_.xor2(b0, b_.and2(b_.inv(b1), b2));
            if (cfg_.shares == 2) {
              out = b_.xor2(out, b_.and2(b1, b[other][at((x + 2) % 5, y, z)]));
            }
            if (s == 0 && x == 0 && y == 0 && std::has_single_bit(z + 1)) {
              out = b_.xor2(out, iota_bit(z));
            }
            const std::string name = state_name(s, x, y, z);
            b_.dff(name, q[s][at(x, y, z)], out, clk_, clr_q_);
            truth_.state_ffs.back()[at(x, y, z)] = name;
          }
        }
      }
    }
  }

  // theta, rho and pi on one share; share 0 also absorbs the input register
  // into lane (0,0).
  std::vector<NetId> linear_layers(const std::vector<NetId>& q, bool absorb) {
    std::vector<NetId> a = q;
    if (absorb) {
      for (unsigned z = 0; z < w_; ++z) {
        a[at(0, 0, z)] = b_.xor2(q[at(0, 0, z)], b_.and2(in_q_[z], absorb_q_));
      }
    }
    std::vector<NetId> c(5 * std::size_t{w_});
    for (unsigned x = 0; x < 5; ++x) {
      for (unsigned z = 0; z < w_; ++z) {
        std::array<NetId, 5> col{};
        for (unsigned y = 0; y < 5; ++y) col[y] = a[at(x, y, z)];
        c[x * w_ + z] = b_.xor_tree(col);
      }
    }
    std::vector<NetId> out(a.size());
    for (unsigned x = 0; x < 5; ++x) {
      for (unsigned z = 0; z < w_; ++z) {
        const NetId d = b_.xor2(c[((x + 4) % 5) * w_ + z],
                                c[((x + 1) % 5) * w_ + (z + w_ - 1) % w_]);
        for (unsigned y = 0; y < 5; ++y) {
          const NetId t = b_.xor2(a[at(x, y, z)], d);
          const unsigned r = rho_offset(x, y) % w_;
          out[at(y, (2 * x + 3 * y) % 5, (z + r) % w_)] = t;
        }
      }
    }
    return out;
  }

  // Round-constant bit z selected by the round counter.
  NetId iota_bit(unsigned z) {
    const std::size_t leaves = std::size_t{1} << cnt_q_.size();
    std::vector<NetId> consts(leaves);
    for (std::size_t r = 0; r < leaves; ++r) {
      const bool bit = r < rounds_ && ((round_constant(r) >> z) & 1U);
      consts[r] = b_.constant(bit);
    }
    return b_.mux_tree(consts, cnt_q_);
  }

  void readout() {
    const std::size_t leaves = std::size_t{1} << kLaneSelBits;
    for (unsigned s = 0; s < cfg_.shares; ++s) {
      for (unsigned z = 0; z < w_; ++z) {
        std::vector<NetId> lanes(leaves, b_.tie0());
        for (unsigned x = 0; x < 5; ++x) {
          for (unsigned y = 0; y < 5; ++y) {
            lanes[x + 5 * y] = state_q_[s][at(x, y, z)];
          }
        }
        const NetId sel = b_.mux_tree(lanes, lane_sel_);
        const std::string port = indexed(p_ + "_dout_s" + std::to_string(s), z);
        const NetId q = n_.add_net(port);
        dff(indexed(p_ + "_dout" + std::to_string(s), z), q, sel);
        n_.add_output(q);
      }
    }
  }

  Netlist& n_;
  NetId clk_;
  const GenConfig& cfg_;
  unsigned w_;
  std::string p_;
  NetlistBuilder b_;
  GroundTruth& truth_;

  std::vector<NetId> din_, lane_sel_;
  NetId load_ = kNoNet, start_ = kNoNet, clear_ = kNoNet;
  NetId absorb_q_ = kNoNet, clr_q_ = kNoNet;
  std::vector<NetId> cnt_q_;
  unsigned rounds_ = 0;
  std::vector<NetId> in_q_;
  std::vector<std::vector<NetId>> state_q_;
};

class DecoyBuilder {
 public:
  DecoyBuilder(Netlist& n, NetId clk, std::mt19937_64& rng,
               GroundTruth& truth)
      : n_(n), clk_(clk), rng_(rng), truth_(truth) {}

  void build(std::size_t budget) {
    while (budget > 0) {
      const std::string p = "d" + std::to_string(next_++);
      NetlistBuilder b(n_, p);
      const auto kind = uniform_below(rng_, 10);
      std::size_t used = 0;
      if (kind < 4) {
        const auto width = uniform_between(rng_, 8, 64);
        const auto depth = uniform_between(rng_, 2, 4);
        used = pipeline(b, budget, width, depth);
      } else if (kind < 7) {
        const auto width = uniform_between(rng_, 4, 16);
        used = width <= budget ? counter(b, width) : pipeline(b, budget, 64, 1);
      } else if (kind < 9) {
        const auto width = uniform_between(rng_, 8, 32);
        used = width <= budget ? lfsr(b, width) : pipeline(b, budget, 64, 1);
      } else {
        const auto size = uniform_between(rng_, 3, 8);
        used = size <= budget ? fsm(b, size) : pipeline(b, budget, 64, 1);
      }
      budget -= used;
    }
  }

 private:
  NetId dff(NetlistBuilder& b, const std::string& name, NetId q, NetId d) {
    b.dff(name, q, d, clk_);
    truth_.decoy_ffs.push_back(name);
    return q;
  }

  // Word-wide register chain; at most `budget` flip-flops.
  std::size_t pipeline(NetlistBuilder& b, std::size_t budget,
                       std::size_t width, std::size_t depth) {
    width = std::min(width, budget);
    depth = std::max<std::size_t>(1, std::min(depth, budget / width));
    const std::string& p = b.prefix();
    std::vector<NetId> prev;
    for (std::size_t i = 0; i < width; ++i) {
      prev.push_back(n_.add_input(indexed(p + "_in", i)));
    }
    for (std::size_t s = 0; s < depth; ++s) {
      std::vector<NetId> next(width);
      for (std::size_t i = 0; i < width; ++i) {
        NetId d = prev[i];
        if (s > 0) {
          d = b.xor2(prev[i], b.and2(prev[(i + 1) % width],
                                     b.inv(prev[(i + 2) % width])));
        }
        const std::string name =
            indexed(p + "_s" + std::to_string(s), static_cast<unsigned>(i));
        next[i] = dff(b, name, b.named_net(name + "_q"), d);
      }
      prev = std::move(next);
    }
    for (std::size_t i = 0; i < width; ++i) {
      output_port(b, prev[i], indexed(p + "_out", static_cast<unsigned>(i)));
    }
    return width * depth;
  }

  std::size_t counter(NetlistBuilder& b, std::size_t width) {
    const std::string& p = b.prefix();
    NetId carry = n_.add_input(p + "_en");
    for (std::size_t i = 0; i < width; ++i) {
      const std::string name = indexed(p + "_c", static_cast<unsigned>(i));
      const NetId q = b.named_net(name + "_q");
      dff(b, name, q, b.xor2(q, carry));
      carry = b.and2(q, carry);
    }
    output_port(b, carry, p + "_carry");
    return width;
  }

  std::size_t lfsr(NetlistBuilder& b, std::size_t width) {
    const std::string& p = b.prefix();
    std::vector<NetId> q(width);
    for (std::size_t i = 0; i < width; ++i) {
      q[i] = b.named_net(indexed(p + "_l", static_cast<unsigned>(i)) + "_q");
    }
    std::vector<NetId> taps{q[width - 1], n_.add_input(p + "_seed")};
    const auto extra = uniform_between(rng_, 1, 2);
    for (std::uint64_t t = 0; t < extra; ++t) {
      taps.push_back(q[uniform_below(rng_, width - 1)]);
    }
    for (std::size_t i = 0; i < width; ++i) {
      const NetId d = i == 0 ? b.xor_tree(taps) : q[i - 1];
      dff(b, indexed(p + "_l", static_cast<unsigned>(i)), q[i], d);
    }
    output_port(b, q[width - 1], p + "_out");
    return width;
  }

  std::size_t fsm(NetlistBuilder& b, std::size_t size) {
    static constexpr CellKind kKinds[] = {CellKind::kAnd2,  CellKind::kOr2,
                                          CellKind::kXor2,  CellKind::kNand2,
                                          CellKind::kNor2,  CellKind::kMux2};
    const std::string& p = b.prefix();
    std::vector<NetId> pool{n_.add_input(p + "_i0"), n_.add_input(p + "_i1")};
    std::vector<NetId> q(size);
    for (std::size_t i = 0; i < size; ++i) {
      q[i] = b.named_net(indexed(p + "_f", static_cast<unsigned>(i)) + "_q");
      pool.push_back(q[i]);
    }
    auto pick = [&] { return pool[uniform_below(rng_, pool.size())]; };
    for (std::size_t i = 0; i < size; ++i) {
      const CellKind kind = kKinds[uniform_below(rng_, std::size(kKinds))];
      const NetId d = kind == CellKind::kMux2
                          ? b.gate(kind, {pick(), pick(), pick()})
                          : b.gate(kind, {pick(), pick()});
      dff(b, indexed(p + "_f", static_cast<unsigned>(i)), q[i], d);
    }
    output_port(b, q[0], p + "_out");
    return size;
  }

  Netlist& n_;
  NetId clk_;
  std::mt19937_64& rng_;
  GroundTruth& truth_;
  std::size_t next_ = 0;
};

}  // namespace

void GenConfig::check() const {
  check_lane_width(lane_width);
  if (instances == 0) throw std::invalid_argument("instances must be >= 1");
  if (shares != 1 && shares != 2) {
    throw std::invalid_argument("shares must be 1 or 2");
  }
}

Accelerator generate_accelerator(const GenConfig& config) {
  config.check();
  Accelerator acc;
  acc.netlist.set_name("keccak_accel");
  GroundTruth& truth = acc.truth;
  truth.lane_width = config.lane_width;
  truth.instances = config.instances;
  truth.shares = config.shares;

  const NetId clk = acc.netlist.add_input("clk");
  for (unsigned i = 0; i < config.instances; ++i) {
    InstanceBuilder(acc.netlist, clk, config, i, truth).build();
  }
  std::mt19937_64 rng(config.seed);
  DecoyBuilder(acc.netlist, clk, rng, truth).build(config.decoy_ffs);

  if (!truth.decoy_ffs.empty()) {
    const DependencyGraph graph = extract_dependencies(acc.netlist);
    const SearchBounds window = naive_bounds(config.lane_width);
    for (const auto& name : truth.decoy_ffs) {
      const FfIndex f = *graph.find(name);
      if (window.contains(graph.fanin(f), graph.fanout(f))) {
        truth.collisions.push_back(name);
      }
    }
  }

  if (config.blind) {
    Anonymized anon = anonymize(acc.netlist, config.seed);
    acc.truth = remap(acc.truth, anon.cells);
    acc.netlist = std::move(anon.netlist);
  }
  return acc;
}

GenConfig gen_config_from_json(std::string_view text) {
  using nlohmann::json;
  GenConfig cfg;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("expected an object");
    if (!j.contains("seed")) throw std::invalid_argument("missing seed");
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.lane_width = j.value("lane_width", cfg.lane_width);
    cfg.instances = j.value("instances", cfg.instances);
    cfg.shares = j.value("shares", cfg.shares);
    cfg.decoy_ffs = j.value("decoy_ffs", cfg.decoy_ffs);
    cfg.split_loader = j.value("split_loader", cfg.split_loader);
    cfg.blind = j.value("blind", cfg.blind);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("generator config: ") + e.what());
  }
  cfg.check();
  return cfg;
}

std::string gen_config_to_json(const GenConfig& config) {
  nlohmann::json j{{"lane_width", config.lane_width},
                   {"instances", config.instances},
                   {"shares", config.shares},
                   {"decoy_ffs", config.decoy_ffs},
                   {"seed", config.seed},
                   {"split_loader", config.split_loader},
                   {"blind", config.blind}};
  return j.dump(1) + "\n";
}

}  // namespace repqc
