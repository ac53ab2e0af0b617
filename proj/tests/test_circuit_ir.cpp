// Copyright 2026 The npcfid Authors
//
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

#include <numbers>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "npcfid/calibration.hpp"
#include "npcfid/circuit.hpp"
#include "npcfid/generators.hpp"
#include "npcfid/json_ir.hpp"
#include "npcfid/qasm.hpp"
#include "npcfid/validate.hpp"

using namespace npcfid;

namespace {

GateOp op(std::string name, std::vector<Qubit> q, std::vector<double> params = {}) {
  return {std::move(name), std::move(q), std::move(params), std::nullopt};
}

Calibration two_qubit_cal() {
  Calibration cal;
  cal.qubits = {{100e-6, 80e-6, 0.01}, {120e-6, 90e-6, 0.02}};
  cal.add_gate({"x", {0}, 1e-3, 35e-9});
  cal.add_gate({"x", {1}, 1e-3, 35e-9});
  cal.add_gate({"cz", {0, 1}, 1e-2, 300e-9});
  return cal;
}

}  // namespace

TEST(Qasm, MinimalProgram) {
  const CompiledCircuit c = parse_qasm("qreg q[2]; creg c[1]; x q[0]; measure q[0] -> c[0];");
  ASSERT_EQ(c.ops.size(), 1u);
  EXPECT_EQ(c.ops[0], op("x", {0}));
  EXPECT_EQ(c.measured, (std::map<Qubit, std::size_t>{{0, 0}}));
  EXPECT_EQ(c.num_physical, 2u);
  EXPECT_EQ(c.num_logical, 2u);
}

TEST(Qasm, IndexOutOfRange) {
  EXPECT_THROW(parse_qasm("qreg q[1]; h q[5];"), IndexOutOfRange);
  EXPECT_THROW(parse_qasm("qreg q[2]; creg c[1]; measure q[0] -> c[3];"), IndexOutOfRange);
}

TEST(Qasm, BernsteinVaziraniShape) {
  const char* text =
      "OPENQASM 2.0;\n"
      "include \"qelib1.inc\";\n"
      "qreg q[2];\ncreg c[1];\n"
      "h q[0];\nh q[1];\ncx q[0],q[1];\nh q[0];\n"
      "measure q[0] -> c[0];\n";
  const CompiledCircuit c = parse_qasm(text);
  EXPECT_EQ(c.ops.size(), 4u);
  EXPECT_EQ(c.measured.size(), 1u);
  EXPECT_EQ(gate_count(c), 4u);
  // Three gate layers on the measured wire; the measurement adds no layer.
  EXPECT_EQ(depth(c), 3u);
}

TEST(Qasm, ParametersAndComments) {
  const CompiledCircuit c = parse_qasm(
      "qreg q[1]; // register\n"
      "rz(pi/2) q[0];\n"
      "rz(-(pi - 1) * 2) q[0];\n"
      "u1(1.5e-1) q[0];\n");
  ASSERT_EQ(c.ops.size(), 3u);
  EXPECT_DOUBLE_EQ(c.ops[0].params.at(0), std::numbers::pi / 2);
  EXPECT_DOUBLE_EQ(c.ops[1].params.at(0), -(std::numbers::pi - 1) * 2);
  EXPECT_DOUBLE_EQ(c.ops[2].params.at(0), 0.15);
}

TEST(Qasm, SyntaxErrorsArePositioned) {
  try {
    parse_qasm("qreg q[2];\nx q[0]\nx q[1];");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GE(e.col(), 1u);
  }
  EXPECT_THROW(parse_qasm("qreg q[1]; if (c == 1) x q[0];"), SyntaxError);
  EXPECT_THROW(parse_qasm("qreg q[1]; gate foo a { x a; }"), SyntaxError);
  EXPECT_THROW(parse_qasm("qreg q[1]; X q[0];"), UnknownGate);
}

TEST(Qasm, BarriersAreDiscarded) {
  const CompiledCircuit c = parse_qasm("qreg q[2]; x q[0]; barrier q[0], q[1]; x q[1];");
  EXPECT_EQ(c.ops.size(), 2u);
  EXPECT_EQ(depth(c), 1u);
}

TEST(Qasm, SwapBecomesTaggedSegment) {
  const CompiledCircuit c =
      parse_qasm("qreg q[3]; creg c[3]; x q[0]; swap q[0], q[2]; measure q[2] -> c[0];");
  ASSERT_EQ(c.ops.size(), 3u);
  EXPECT_TRUE(c.ops[1].is_swap_placeholder());
  EXPECT_TRUE(c.ops[2].is_swap_placeholder());
  EXPECT_EQ(c.ops[1].tag->partner, 2u);
  EXPECT_EQ(c.ops[2].tag->partner, 0u);
  // q[2] holds logical 0 after the swap.
  EXPECT_EQ(c.measured, (std::map<Qubit, std::size_t>{{0, 0}}));
  EXPECT_EQ(gate_count(c), 2u);
  EXPECT_EQ(final_layout(c).physical_of(0), 2u);
}

TEST(Qasm, OpsAfterMeasurementRejected) {
  EXPECT_THROW(parse_qasm("qreg q[1]; measure q[0] -> c[0]; x q[0];"), SyntaxError);
}

TEST(Qasm, RoundTrip) {
  const std::string text = "qreg q[3]; creg c[2]; x q[0]; cz q[0], q[1]; rz(0.25) q[2]; swap q[1], q[2]; "
                           "measure q[1] -> c[0]; measure q[2] -> c[1];";
  const CompiledCircuit c = parse_qasm(text);
  EXPECT_EQ(parse_qasm(to_qasm(c)), c);
}

TEST(Qasm, EmptyProgram) {
  const CompiledCircuit c = parse_qasm("");
  EXPECT_EQ(gate_count(c), 0u);
  EXPECT_EQ(depth(c), 0u);
}

TEST(JsonIr, RoundTripIsIdentity) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CompiledCircuit logical = gen_random_circuit(4, 5, seed, {{"rz", "sx", "x"}, {"cz"}, 0.4, true});
    const CouplingMap line(6, topology_pairs(6, Topology::kLine));
    const auto layout = random_layouts(4, 6, 1, seed).front();
    const CompiledCircuit c = route_circuit(logical, layout, line);
    EXPECT_EQ(parse_json_ir(serialize_json_ir(c)), c) << "seed " << seed;
  }
}

TEST(JsonIr, MissingLayout) {
  try {
    parse_json_ir(R"({"num_physical":1,"num_logical":1,"ops":[],"measured":{}})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.path(), "initial_layout");
  }
}

TEST(JsonIr, NonInjectiveLayout) {
  try {
    parse_json_ir(R"({"num_physical":3,"num_logical":2,"initial_layout":[1,1],"ops":[],"measured":{}})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.path(), "initial_layout");
    EXPECT_EQ(e.reason(), "not injective");
  }
}

TEST(JsonIr, SchemaViolations) {
  EXPECT_THROW(parse_json_ir("[]"), SchemaError);
  EXPECT_THROW(parse_json_ir("{"), SchemaError);
  EXPECT_THROW(parse_json_ir(R"({"num_physical":1,"num_logical":1,"initial_layout":[0],
      "ops":[{"name":"x","qubits":[3],"params":[],"tag":null}],"measured":{}})"),
               SchemaError);
  EXPECT_THROW(parse_json_ir(R"({"num_physical":1,"num_logical":1,"initial_layout":[0],
      "ops":[],"measured":{"0":-1}})"),
               SchemaError);
}

TEST(Structure, GateCountAndDepth) {
  CompiledCircuit c = make_circuit(3);
  EXPECT_EQ(gate_count(c), 0u);
  EXPECT_EQ(depth(c), 0u);
  c.ops = {op("x", {0}), op("x", {1}), op("x", {2})};
  EXPECT_EQ(gate_count(c), 3u);
  EXPECT_EQ(depth(c), 1u);
  c.ops = {op("x", {0}), op("cx", {0, 1}), op("x", {1})};
  EXPECT_EQ(gate_count(c), 3u);
  EXPECT_EQ(depth(c), 3u);
}

TEST(Structure, ScheduleRejectsBrokenSegments) {
  CompiledCircuit c = make_circuit(3);
  c.ops = {{kSwapName, {0}, {}, SwapTag{0, 1}}};
  EXPECT_THROW(schedule(c), ValueError);
  c.ops = {{kSwapName, {0}, {}, SwapTag{0, 1}}, {kSwapName, {1}, {}, SwapTag{0, 2}}};
  EXPECT_THROW(schedule(c), ValueError);
  c.ops = {op("swap", {0, 1})};
  EXPECT_THROW(schedule(c), ValueError);
  c.ops = {{kSwapName, {0}, {}, SwapTag{0, 1}}, op("x", {2}), {kSwapName, {1}, {}, SwapTag{0, 0}}};
  EXPECT_THROW(schedule(c), ValueError);
  c.ops = {op("cz", {1, 1})};
  EXPECT_THROW(schedule(c), ValueError);
}

TEST(Structure, DecomposedSegmentAccepted) {
  CompiledCircuit c = make_circuit(2);
  for (int k = 0; k < 3; ++k) c.ops.push_back({"cx", {0, 1}, {}, SwapTag{7, 1}});
  const auto steps = schedule(c);
  ASSERT_EQ(steps.size(), 1u);
  EXPECT_EQ(steps[0].kind, Step::Kind::kSwap);
  EXPECT_FALSE(steps[0].placeholder);
  EXPECT_EQ(final_layout(c).physical_of(0), 1u);
}

TEST(Validate, ReportsMissingEntries) {
  const Calibration cal = two_qubit_cal();
  CompiledCircuit ok = make_circuit(2);
  ok.ops = {op("x", {0}), op("cz", {1, 0})};
  ok.measured = {{0, 0}, {1, 1}};
  EXPECT_TRUE(validate_against(ok, cal).empty());

  CompiledCircuit wide = make_circuit(6);
  wide.ops = {op("cz", {0, 5}), op("cz", {0, 5})};
  Calibration big = cal;
  big.qubits.resize(6, QubitCal{100e-6, 80e-6, 0.01});
  const auto issues = validate_against(wide, big);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].to_string(), "MissingGateCal(\"cz\",[0,5])");

  CompiledCircuit measured = make_circuit(3);
  measured.measured = {{2, 0}};
  const auto readout = validate_against(measured, cal);
  ASSERT_EQ(readout.size(), 1u);
  EXPECT_EQ(readout[0].to_string(), "MissingReadoutCal(2)");
}

// Properties -----------------------------------------------------------------

TEST(Property, DepthNeverExceedsGateCount) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const CompiledCircuit c = gen_random_circuit(n, rng() % 8, rng());
    EXPECT_LE(depth(c), gate_count(c));
  }
  // Equality when every op shares one qubit.
  CompiledCircuit chain = make_circuit(3);
  chain.ops = {op("x", {0}), op("cz", {0, 1}), op("cz", {2, 0}), op("sx", {0})};
  EXPECT_EQ(depth(chain), gate_count(chain));
}

TEST(Property, LayoutStaysBijectiveUnderSwaps) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const std::size_t k = 1 + rng() % n;
    LayoutState layout(random_layouts(k, n, 1, rng()).front(), n);
    for (int s = 0; s < 30; ++s) {
      const Qubit a = rng() % n;
      Qubit b = rng() % n;
      if (a == b) b = (b + 1) % n;
      layout.swap_physical(a, b);
      ASSERT_TRUE(layout.consistent());
    }
  }
}

TEST(Property, RoutedCircuitsRoundTripThroughQasm) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CompiledCircuit logical = gen_random_circuit(5, 4, seed, {{"rz", "sx", "x"}, {"cz"}, 0.5, true});
    const CouplingMap ring(5, topology_pairs(5, Topology::kRing));
    std::vector<Qubit> identity{0, 1, 2, 3, 4};
    const CompiledCircuit c = route_circuit(logical, identity, ring);
    EXPECT_EQ(parse_qasm(to_qasm(c)), c);
  }
}

TEST(Property, ParserIsTotalUnderFuzzing) {
  const std::vector<std::string> seeds{
      "OPENQASM 2.0;\nqreg q[3];\ncreg c[3];\nh q[0];\ncx q[0],q[1];\nrz(pi/4) q[2];\n"
      "swap q[1], q[2];\nbarrier q[0],q[1];\nmeasure q[0] -> c[0];\nmeasure q[2] -> c[1];\n",
      "qreg q[2]; x q[0]; measure q[0] -> c[0];",
      "qreg q[1]; u1((((1+2)*3)/4)-pi) q[0];"};
  const std::string alphabet = "qregcmasuxhzpi0123456789[](){};,->+-*/. \n\"/OPENQASM";
  std::mt19937_64 rng(20260101);
  std::size_t parsed = 0, rejected = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string text;
    if (i % 3 == 0) {
      const std::size_t len = rng() % 80;
      for (std::size_t k = 0; k < len; ++k) {
        text += (rng() % 4 == 0) ? static_cast<char>(rng() % 256) : alphabet[rng() % alphabet.size()];
      }
    } else {
      text = seeds[rng() % seeds.size()];
      const int edits = 1 + static_cast<int>(rng() % 4);
      for (int e = 0; e < edits && !text.empty(); ++e) {
        const std::size_t pos = rng() % text.size();
        switch (rng() % 3) {
          case 0: text.erase(pos, 1 + rng() % 3); break;
          case 1: text.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
          default: text[pos] = static_cast<char>(rng() % 256); break;
        }
      }
    }
    try {
      parse_qasm(text);
      ++parsed;
    } catch (const Error&) {
      ++rejected;
    }
  }
  EXPECT_EQ(parsed + rejected, 10000u);
  EXPECT_GT(parsed, 0u);
  EXPECT_GT(rejected, 0u);
}

TEST(Property, JsonLoaderIsTotalUnderFuzzing) {
  const std::string base = serialize_json_ir(parse_qasm("qreg q[3]; creg c[1]; x q[0]; cz q[0], q[1]; swap q[1], q[2]; "
                                                        "measure q[2] -> c[0];"));
  std::mt19937_64 rng(77);
  for (int i = 0; i < 3000; ++i) {
    std::string text = base;
    const int edits = 1 + static_cast<int>(rng() % 3);
    for (int e = 0; e < edits; ++e) {
      const std::size_t pos = rng() % text.size();
      text[pos] = "0123456789-\",:{}[]ab"[rng() % 20];
    }
    try {
      parse_json_ir(text);
    } catch (const Error&) {
    }
  }
  SUCCEED();
}
