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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "npcfid/generators.hpp"
#include "npcfid/oracle.hpp"
#include "reference.hpp"

using namespace npcfid;

namespace {

GateOp op(std::string name, std::vector<Qubit> q, std::vector<double> params = {}) {
  return {std::move(name), std::move(q), std::move(params), std::nullopt};
}

double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

DensityMatrix bell_like(double theta) {
  DensityMatrix dm(2);
  apply_unitary(dm, op("ry", {0}, {theta}));
  apply_unitary(dm, op("cx", {0, 1}));
  return dm;
}

}  // namespace

TEST(Unitaries, BasisActionWithLowBitQubitZero) {
  DensityMatrix dm(2);
  apply_unitary(dm, op("x", {0}));
  EXPECT_NEAR(dm(1, 1).real(), 1.0, 1e-15);
  apply_unitary(dm, op("cx", {0, 1}));
  EXPECT_NEAR(dm(3, 3).real(), 1.0, 1e-15);
  apply_unitary(dm, op("swap", {0, 1}));
  EXPECT_NEAR(dm(3, 3).real(), 1.0, 1e-15);
  apply_unitary(dm, op("cx", {1, 0}));
  EXPECT_NEAR(dm(2, 2).real(), 1.0, 1e-15);
}

TEST(Unitaries, AllNamedGatesAreUnitary) {
  for (const char* g : {"id", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "sx", "sxdg"}) {
    const Matrix u = gate_unitary(g, {}, 1);
    EXPECT_LT(max_diff(u * u.adjoint(), Matrix::Identity(2, 2)), 1e-14) << g;
  }
  for (const char* g : {"rx", "ry", "rz", "p"}) {
    const Matrix u = gate_unitary(g, {0.7}, 1);
    EXPECT_LT(max_diff(u * u.adjoint(), Matrix::Identity(2, 2)), 1e-14) << g;
  }
  for (const char* g : {"cx", "cz", "swap"}) {
    const Matrix u = gate_unitary(g, {}, 2);
    EXPECT_LT(max_diff(u * u.adjoint(), Matrix::Identity(4, 4)), 1e-14) << g;
  }
  const Matrix rzz = gate_unitary("rzz", {0.3}, 2);
  EXPECT_LT(max_diff(rzz * rzz.adjoint(), Matrix::Identity(4, 4)), 1e-14);
  EXPECT_THROW(gate_unitary("frob", {}, 1), UnknownUnitary);
  EXPECT_THROW(gate_unitary("rz", {}, 1), UnknownUnitary);
}

TEST(Unitaries, SxSquaredIsX) {
  const Matrix sx = gate_unitary("sx", {}, 1);
  EXPECT_LT(max_diff(sx * sx, gate_unitary("x", {}, 1)), 1e-14);
}

TEST(Depolarizing, FullStrengthGivesMaximallyMixed) {
  DensityMatrix dm(1);
  apply_depolarizing(dm, {0}, 1.0);
  EXPECT_LT(max_diff(dm.data(), DensityMatrix::maximally_mixed(1).data()), 1e-15);
  EXPECT_THROW(apply_depolarizing(dm, {0}, 1.5), DomainError);
}

TEST(Depolarizing, MatchesPauliTwirl) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const double p = 0.1 * (i % 11);
    DensityMatrix one = random_density_matrix(1, rng);
    const ref::M2 want1 = ref::twirl_depolarizing(one.data(), p);
    apply_depolarizing(one, {0}, p);
    EXPECT_LT(max_diff(one.data(), want1), 1e-13);

    DensityMatrix two = random_density_matrix(2, rng);
    const ref::M4 want2 = ref::twirl_depolarizing2(two.data(), p);
    apply_depolarizing(two, {0, 1}, p);
    EXPECT_LT(max_diff(two.data(), want2), 1e-13);
  }
}

TEST(Thermal, ExcitedStateDecay) {
  DensityMatrix dm(1);
  apply_unitary(dm, op("x", {0}));
  apply_thermal(dm, 0, 50e-6, 50e-6, 40e-6);
  EXPECT_NEAR(dm(1, 1).real(), std::exp(-1.0), 1e-14);
  EXPECT_NEAR(dm.trace(), 1.0, 1e-14);
}

TEST(Thermal, RejectsBadParameters) {
  DensityMatrix dm(1);
  EXPECT_THROW(apply_thermal(dm, 0, 1e-6, 10e-6, 30e-6), DomainError);
  EXPECT_THROW(apply_thermal(dm, 0, -1e-6, 10e-6, 10e-6), DomainError);
  EXPECT_THROW(apply_thermal(dm, 0, 1e-6, 0.0, 10e-6), DomainError);
}

TEST(Thermal, MatchesBlochMap) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const auto r = ref::sphere_point(rng);
    const double t1 = (10 + 290 * u(rng)) * 1e-6;
    const double t2 = std::min(2.0 * t1, (10 + 290 * u(rng)) * 1e-6);
    const double t = 2e-4 * u(rng);
    DensityMatrix dm = from_bloch({r[0], r[1], r[2]});
    apply_thermal(dm, 0, t, t1, t2);
    const auto want = ref::thermal_bloch(r, t, t1, t2);
    const BlochVector got = bloch_vector(dm);
    EXPECT_NEAR(got.x, want[0], 1e-12);
    EXPECT_NEAR(got.y, want[1], 1e-12);
    EXPECT_NEAR(got.z, want[2], 1e-12);
  }
}

TEST(Readout, FlipsOneBit) {
  Distribution d{2, {{"01", 1.0}}};
  const Distribution f = apply_readout_flip(d, 0, 0.1);
  EXPECT_NEAR(f.at("01"), 0.9, 1e-15);
  EXPECT_NEAR(f.at("00"), 0.1, 1e-15);
  const Distribution g = apply_readout_flip(d, 1, 0.25);
  EXPECT_NEAR(g.at("11"), 0.25, 1e-15);
  EXPECT_THROW(apply_readout_flip(d, 2, 0.1), DimensionMismatch);
}

TEST(StateFidelity, Examples) {
  DensityMatrix zero(1), one(1);
  apply_unitary(one, op("x", {0}));
  EXPECT_NEAR(state_fidelity(zero, zero), 1.0, 1e-14);
  EXPECT_NEAR(state_fidelity(zero, one), 0.0, 1e-14);
  std::mt19937_64 rng(13);
  const DensityMatrix rho = random_density_matrix(2, rng);
  EXPECT_NEAR(state_fidelity(rho, rho), 1.0, 1e-10);
  // Commuting diagonal states: (sum sqrt(p q))^2.
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 0.7;
  a(1, 1) = 0.3;
  b(0, 0) = 0.4;
  b(1, 1) = 0.6;
  const double want = std::pow(std::sqrt(0.28) + std::sqrt(0.18), 2);
  EXPECT_NEAR(state_fidelity(DensityMatrix(1, a), DensityMatrix(1, b)), want, 1e-12);
}

TEST(StateFidelity, SymmetricOnMixedStates) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix a = random_density_matrix(2, rng), b = random_density_matrix(2, rng);
    const double f = state_fidelity(a, b);
    EXPECT_NEAR(f, state_fidelity(b, a), 1e-9);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

TEST(Negativity, PartiallyEntangledStates) {
  EXPECT_NEAR(negativity(bell_like(std::numbers::pi / 8), {0}), 0.1913, 5e-5);
  EXPECT_NEAR(negativity(bell_like(std::numbers::pi / 4), {0}), 0.3536, 5e-5);
  EXPECT_NEAR(negativity(bell_like(std::numbers::pi / 2), {0}), 0.5, 1e-12);
  EXPECT_NEAR(negativity(DensityMatrix(2), {0}), 0.0, 1e-14);
  EXPECT_THROW(negativity(DensityMatrix(1), {0}), DimensionMismatch);
  EXPECT_THROW(negativity(DensityMatrix(2), {0, 1}), DimensionMismatch);
}

TEST(Negativity, EitherSideGivesTheSameValue) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix rho = random_density_matrix(3, rng);
    EXPECT_NEAR(negativity(rho, {0}), negativity(rho, {1, 2}), 1e-12);
    EXPECT_NEAR(negativity(rho, {0, 2}), negativity(rho, {1}), 1e-12);
  }
}

TEST(PartialTrace, ProductStateFactor) {
  DensityMatrix dm(3);
  apply_unitary(dm, op("x", {1}));
  apply_unitary(dm, op("h", {2}));
  const DensityMatrix q1 = partial_trace(dm, {1});
  EXPECT_NEAR(q1(1, 1).real(), 1.0, 1e-15);
  const DensityMatrix q21 = partial_trace(dm, {2, 1});
  // Output qubit 0 is input qubit 2 (|+>), output qubit 1 is input qubit 1 (|1>).
  EXPECT_NEAR(q21(2, 2).real(), 0.5, 1e-15);
  EXPECT_NEAR(q21(3, 3).real(), 0.5, 1e-15);
  EXPECT_NEAR(q21(2, 3).real(), 0.5, 1e-15);
  EXPECT_THROW(partial_trace(dm, {}), DimensionMismatch);
}

TEST(PartialTrace, TwoQubitDepolarizingLeavesEachQubitDepolarized) {
  std::mt19937_64 rng(16);
  for (int i = 0; i < 1000; ++i) {
    const DensityMatrix rho = random_density_matrix(2, rng);
    for (int k = 0; k <= 10; ++k) {
      const double p = k / 10.0;
      DensityMatrix joint = rho;
      apply_depolarizing(joint, {0, 1}, p);
      DensityMatrix local = partial_trace(rho, {0});
      apply_depolarizing(local, {0}, p);
      EXPECT_LT(max_diff(partial_trace(joint, {0}).data(), local.data()), 1e-12);
      // Independent check through the explicit twirl.
      const ref::M2 via_twirl = ref::trace_out_high(ref::twirl_depolarizing2(rho.data(), p));
      EXPECT_LT(max_diff(via_twirl, ref::twirl_depolarizing(ref::trace_out_high(rho.data()), p)), 1e-12);
    }
  }
}

TEST(Hellinger, Extremes) {
  const Distribution a{1, {{"0", 1.0}}}, b{1, {{"1", 1.0}}}, c{1, {{"0", 0.5}, {"1", 0.5}}};
  EXPECT_NEAR(hellinger(a, a), 0.0, 1e-15);
  EXPECT_NEAR(hellinger(a, b), 1.0, 1e-15);
  EXPECT_NEAR(hellinger(a, c), std::sqrt(1.0 - std::sqrt(0.5)), 1e-12);
  EXPECT_THROW(hellinger(a, Distribution{2, {}}), DimensionMismatch);
}

TEST(Simulate, RejectsTooManyQubits) {
  const CompiledCircuit c = make_circuit(9);
  EXPECT_THROW(simulate_ideal(c), TooLarge);
  OracleOptions opts;
  opts.cap = 9;
  EXPECT_NO_THROW(simulate_ideal(make_circuit(2), opts));
  try {
    simulate_ideal(c);
  } catch (const TooLarge& e) {
    EXPECT_EQ(e.qubits(), 9u);
    EXPECT_EQ(e.cap(), kDefaultOracleCap);
  }
}

TEST(Simulate, BvIdealOutcomeIsTheSecret) {
  const OracleRun run = simulate_ideal(gen_bv_circuit("1101"));
  EXPECT_NEAR(success_probability(run.distribution, {"1101"}), 1.0, 1e-12);
}

TEST(Simulate, SwapSegmentMovesState) {
  CompiledCircuit c = make_circuit(2);
  c.ops.push_back(op("x", {0}));
  append_swap(c, 0, 1, 0);
  c.measured = {{0, 0}};
  const OracleRun run = simulate_ideal(c);
  EXPECT_EQ(run.layout.physical_of(0), 1u);
  EXPECT_NEAR(run.state(2, 2).real(), 1.0, 1e-12);
  EXPECT_NEAR(success_probability(run.distribution, {"1"}), 1.0, 1e-12);
}

TEST(Property, NoisyStatesStayPhysical) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DeviceSpec spec;
    spec.num_qubits = 5;
    spec.topology = Topology::kRing;
    spec.seed = seed;
    const Calibration cal = simulated_calibration(spec);
    RandomCircuitOptions opts;
    opts.measure = true;
    opts.two_qubit_fraction = 0.5;
    const CompiledCircuit logical = gen_random_circuit(4, 6, seed, opts);
    const CompiledCircuit c =
        route_circuit(logical, random_layouts(4, 5, 1, seed).front(), CouplingMap::from_calibration(cal));
    const OracleRun run = simulate_noisy(c, cal);
    EXPECT_NEAR(run.state.trace(), 1.0, 1e-12);
    EXPECT_LT(run.state.hermiticity_error(), 1e-12);
    EXPECT_GT(run.state.min_eigenvalue(), -1e-12);
    EXPECT_NEAR(run.distribution.total(), 1.0, 1e-12);
    EXPECT_TRUE(run.layout.consistent());
  }
}

TEST(Property, QubitOverlapEqualsCorrectBitProbability) {
  DeviceSpec spec;
  spec.num_qubits = 4;
  spec.seed = 7;
  const Calibration cal = simulated_calibration(spec);
  const CompiledCircuit c = gen_id_circuit(4, 5, 7);
  const OracleRun ideal = simulate_ideal(c);
  Calibration clean = cal;
  for (QubitCal& q : clean.qubits) q.readout_error = 0.0;
  const OracleRun noisy = simulate_noisy(c, clean);
  const auto ov = qubit_overlaps(ideal, noisy);
  for (Qubit q = 0; q < 4; ++q) {
    double zero = 0.0;
    for (const auto& [bits, p] : noisy.distribution.probs) {
      if (bits[3 - q] == '0') zero += p;
    }
    EXPECT_NEAR(ov[q], zero, 1e-12);
  }
}
