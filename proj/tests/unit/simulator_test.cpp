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

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "repqc/hth.hpp"
#include "repqc/simulator.hpp"

namespace repqc {
namespace {

constexpr const char* kToggle = R"(module t
input clk
net d
net q
output q
cell INV u a=q y=d
cell DFF f d=d clk=clk q=q
endmodule
)";

// A reset-able register: q <- rst ? 0 : a ^ q.
constexpr const char* kAccum = R"(module a
input clk
input a
input r
net d
net q
output q
cell XOR2 x a=a b=q y=d
cell DFF f d=d clk=clk rst=r q=q
endmodule
)";

Stimulus empty_cycles(std::size_t n) {
  Stimulus s;
  s.cycles.resize(n);
  return s;
}

TEST(Simulator, InverterLoopToggles) {
  const Netlist n = fixtures::parse(kToggle);
  const SimTrace t = simulate(n, empty_cycles(6), 6);
  ASSERT_EQ(t.cycles(), 6u);
  for (std::size_t c = 0; c < 6; ++c) EXPECT_EQ(t.output_values[c][0], c % 2);
}

TEST(Simulator, ResetAndHeldInputs) {
  const Netlist n = fixtures::parse(kAccum);
  const Stimulus s = parse_stimulus("a=1\n\n\nr=1\na=0 r=0\n");
  const SimTrace t = simulate(n, s, 5);
  // q before each edge: 0, 1, 0, 1, then reset clears it.
  std::vector<int> q;
  for (const auto& row : t.output_values) q.push_back(row[0]);
  EXPECT_EQ(q, (std::vector<int>{0, 1, 0, 1, 0}));
  ASSERT_EQ(t.inputs.size(), 3u);
  EXPECT_EQ(t.input_values[2], (std::vector<std::uint8_t>{0, 1, 0}));
  EXPECT_EQ(t.input_values[3], (std::vector<std::uint8_t>{0, 1, 1}));
}

TEST(Simulator, LanesAreIndependent) {
  const Netlist n = fixtures::parse(kAccum);
  Simulator sim(n);
  const NetId a = *n.find_net("a");
  const NetId q = *n.find_net("q");
  sim.set_input(a, 0xF0F0);
  sim.step();
  sim.step();
  sim.set_input(a, 0xFF00);
  sim.step();
  sim.evaluate();
  EXPECT_EQ(sim.value(q), 0xFF00u);
  EXPECT_THROW(sim.set_input(q, 1), std::invalid_argument);
  sim.reset();
  sim.evaluate();
  EXPECT_EQ(sim.value(q), 0u);
}

TEST(Simulator, InitialFlipFlops) {
  const Netlist n = fixtures::parse(kToggle);
  SimOptions opt;
  opt.initial_flip_flops["f"] = true;
  opt.watch = {"d"};
  const SimTrace t = simulate(n, empty_cycles(2), 2, opt);
  EXPECT_EQ(t.output_values[0][0], 1);
  EXPECT_EQ(t.watched_values[0][0], 0);
  opt.initial_flip_flops = {{"nope", true}};
  EXPECT_THROW(simulate(n, empty_cycles(1), 1, opt), std::invalid_argument);
}

TEST(Stimulus, ParseAndWrite) {
  const Stimulus s = parse_stimulus("# header\na=1 b=0\n\nb=1\r\n");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.cycles[0].size(), 2u);
  EXPECT_TRUE(s.cycles[1].empty());
  EXPECT_EQ(s.cycles[2][0], (std::pair<std::string, bool>{"b", true}));
  EXPECT_EQ(write_stimulus(s), "a=1 b=0\n\nb=1\n");
  EXPECT_EQ(write_stimulus(parse_stimulus(write_stimulus(s))), write_stimulus(s));
}

TEST(Stimulus, Errors) {
  EXPECT_THROW(parse_stimulus("a=2\n"), std::invalid_argument);
  EXPECT_THROW(parse_stimulus("a\n"), std::invalid_argument);
  EXPECT_THROW(parse_stimulus("=1\n"), std::invalid_argument);
  const Netlist n = fixtures::parse(kAccum);
  EXPECT_THROW(simulate(n, empty_cycles(3), 4), std::invalid_argument);
  EXPECT_THROW(simulate(n, parse_stimulus("zz=1\n"), 1), std::invalid_argument);
  EXPECT_THROW(simulate(n, parse_stimulus("d=1\n"), 1), std::invalid_argument);
}

TEST(Equivalence, Reflexive) {
  std::mt19937_64 rng(3);
  const Netlist n = fixtures::random_netlist(rng, 4, 30, 150, 6);
  Stimulus s;
  for (int c = 0; c < 40; ++c) {
    auto& cyc = s.cycles.emplace_back();
    for (int i = 0; i < 4; ++i) cyc.emplace_back("pi" + std::to_string(i), rng() & 1U);
  }
  const Equivalence e = equivalence_check(n, n, s, 40);
  EXPECT_TRUE(e.equal);
  EXPECT_FALSE(e.first_mismatch_cycle.has_value());
}

TEST(Equivalence, DetectsDifferenceAndPortMismatch) {
  const Netlist a = fixtures::parse(kAccum);
  std::string text = kAccum;
  text.replace(text.find("XOR2"), 4, "OR2 ");
  const Netlist b = fixtures::parse(text);
  const Stimulus s = parse_stimulus("a=1\n\n\n");
  const Equivalence e = equivalence_check(a, b, s, 3);
  EXPECT_FALSE(e.equal);
  EXPECT_EQ(e.first_mismatch_cycle, 2u);
  EXPECT_EQ(e.mismatched_output, "q");
  EXPECT_THROW(equivalence_check(a, fixtures::parse(kToggle), s, 1),
               std::invalid_argument);
}

TEST(Simulator, Deterministic) {
  std::mt19937_64 rng(4);
  const Netlist n = fixtures::random_netlist(rng, 3, 20, 80, 4);
  Stimulus s;
  for (int c = 0; c < 25; ++c) {
    s.cycles.push_back({{"pi" + std::to_string(c % 3), (c * 7) % 3 == 0}});
  }
  EXPECT_EQ(trace_to_csv(simulate(n, s, 25)), trace_to_csv(simulate(n, s, 25)));
}

TEST(Simulator, NetOnSeveralPinsIsOrderedCorrectly) {
  const Netlist n = fixtures::parse(R"(module p
input a
net g
net t
net y
output y
cell INV i a=a y=g
cell TIE1 c y=t
cell MUX4 m d0=t d1=t d2=g d3=g s0=a s1=a y=y
endmodule
)");
  Simulator sim(n);
  sim.set_input(*n.find_net("a"), 0b10);
  sim.evaluate();
  EXPECT_EQ(sim.value(*n.find_net("y")) & 3U, 0b01u);
}

TEST(Simulator, RejectsUntaggedLoop) {
  const Netlist n = fixtures::parse(R"(module l
net a
net b
cell INV u1 a=b y=a
cell INV u2 a=a y=b
endmodule
)");
  EXPECT_THROW(Simulator{n}, std::invalid_argument);
}

// Standalone island: enable and leak select driven from ports.
constexpr const char* kIsland = R"(module ro
input en
input s0
input s1
net r0
net r1
net r2
net r3
net r4
net b0
net b1
net b2
net b3
net fb
cell NAND2 n a=en b=fb y=r0 tag=analog_island
cell INV i1 a=r0 y=r1 tag=analog_island
cell INV i2 a=r1 y=r2 tag=analog_island
cell INV i3 a=r2 y=r3 tag=analog_island
cell INV i4 a=r3 y=r4 tag=analog_island
cell BUF c0 a=r4 y=b0 tag=analog_island
cell BUF c1 a=r4 y=b1 tag=analog_island
cell BUF c2 a=r4 y=b2 tag=analog_island
cell BUF c3 a=r4 y=b3 tag=analog_island
cell MUX4 m d0=b0 d1=b1 d2=b2 d3=b3 s0=s0 s1=s1 y=fb tag=analog_island
endmodule
)";

TEST(Island, PowerLookup) {
  const Netlist n = fixtures::parse(kIsland);
  const auto islands = find_analog_islands(n);
  ASSERT_EQ(islands.size(), 1u);
  EXPECT_EQ(islands[0].cells.size(), 10u);
  const Stimulus s =
      parse_stimulus("s0=1\nen=1\ns0=0\ns0=1 s1=1\ns0=0\ns1=0\nen=0\n");
  const SimTrace t = simulate(n, s, 7);
  const std::vector<double> power{0.0, 34.2, 32.3, 38.9, 36.9, 32.3, 0.0};
  for (std::size_t c = 0; c < 7; ++c) {
    EXPECT_DOUBLE_EQ(t.islands[c][0].power_uw, power[c]) << c;
  }
  EXPECT_EQ(t.islands[1][0].leak, 1u);
  EXPECT_EQ(leak_stream(t), (std::vector<bool>{0, 1, 0, 0, 1, 1, 1, 0, 0, 0}));
  const std::string csv = trace_to_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "cycle,leak,power_uW");
  EXPECT_NE(csv.find("\n1,01,34.2\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find("\n0,,0\n"), std::string::npos) << csv;
}

TEST(Island, PowerTableAndFrequencies) {
  EXPECT_EQ(kLeakPowerMicrowatts, (std::array<double, 4>{32.3, 34.2, 36.9, 38.9}));
  EXPECT_EQ(kLeakFrequencyMhz, (std::array<double, 4>{639, 671, 732, 767}));
}

TEST(Island, MissingEnableThrows) {
  std::string text = kIsland;
  text.replace(text.find("NAND2 n a=en b=fb"), 17, "AND2 n a=en b=fb ");
  EXPECT_THROW(find_analog_islands(fixtures::parse(text)), std::invalid_argument);
}

TEST(Island, TrojanFragmentHasOneIsland) {
  HthSpec spec;
  spec.trigger.assign(64, false);
  const Netlist frag = build_hth(spec);
  Simulator sim(frag);
  ASSERT_EQ(sim.islands().size(), 1u);
  EXPECT_EQ(sim.islands()[0].cells.size(), 10u);
}

}  // namespace
}  // namespace repqc
