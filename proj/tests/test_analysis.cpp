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

#include "npcfid/experiments.hpp"
#include "npcfid/generators.hpp"

using namespace npcfid;

namespace {

/// Textbook formula for distinct values: 1 - 6 sum d^2 / (k (k^2 - 1)).
double textbook_rho(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ra = average_ranks(a), rb = average_ranks(b);
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
  const double k = static_cast<double>(a.size());
  return 1.0 - 6.0 * d2 / (k * (k * k - 1.0));
}

Calibration uniform_cal(std::size_t n) {
  Calibration cal;
  cal.qubits.assign(n, QubitCal{100e-6, 80e-6, 0.02});
  for (Qubit q = 0; q < n; ++q) {
    for (const char* g : {"x", "sx", "rz", "h"}) cal.add_gate({g, {q}, g[0] == 'r' ? 0.0 : 5e-4, 35e-9});
  }
  for (Qubit a = 0; a < n; ++a) {
    for (Qubit b = a + 1; b < n; ++b) {
      cal.add_gate({"cz", {a, b}, 1e-2, 300e-9});
      cal.add_gate({"cx", {a, b}, 1e-2, 300e-9});
    }
  }
  return cal;
}

}  // namespace

TEST(Spearman, Examples) {
  const std::vector<double> a{1, 2, 3, 4};
  EXPECT_NEAR(*spearman_rho(a, a), 1.0, 1e-15);
  EXPECT_NEAR(*spearman_rho(a, std::vector<double>{4, 3, 2, 1}), -1.0, 1e-15);
  EXPECT_NEAR(*spearman_rho(a, std::vector<double>{1, 3, 2, 4}), 0.8, 1e-12);
  EXPECT_FALSE(spearman_rho(a, std::vector<double>{2, 2, 2, 2}));
  EXPECT_THROW(spearman_rho(a, std::vector<double>{1, 2}), LengthMismatch);
  EXPECT_THROW(spearman_rho(std::vector<double>{1}, std::vector<double>{1}), LengthMismatch);
}

TEST(Spearman, TiesUseAverageRanks) {
  EXPECT_EQ(average_ranks(std::vector<double>{10, 20, 20, 5}), (std::vector<double>{2, 3.5, 3.5, 1}));
}

TEST(AadR2, Examples) {
  const auto exact = aad_r2({{0.9, 0.9}, {0.5, 0.5}, {0.7, 0.7}});
  EXPECT_EQ(exact.aad, 0.0);
  EXPECT_NEAR(*exact.r2, 1.0, 1e-15);
  EXPECT_NEAR(aad_r2({{1.0, 0.9}, {0.6, 0.5}, {0.8, 0.7}}).aad, 0.1, 1e-12);
  EXPECT_NEAR(aad_r2({{0.9, 1.0}, {0.5, 0.4}}).aad, 0.1, 1e-12);
  EXPECT_FALSE(aad_r2({{0.9, 0.5}, {0.4, 0.5}}).r2);
  EXPECT_THROW(aad_r2({{0.9, 0.5}}), LengthMismatch);
}

TEST(LinearFit, ExactLine) {
  const std::vector<double> x{1, 2, 3}, y{3, 5, 7};
  const LinearFit f = linear_fit(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-12);
  EXPECT_NEAR(f.intercept, 1.0, 1e-12);
  EXPECT_NEAR(f.r2, 1.0, 1e-12);
}

TEST(RankLayouts, SingleImplementationHasUndefinedRho) {
  const Calibration cal = uniform_cal(3);
  RankOptions opts;
  opts.oracle = true;
  const RankingResult r = rank_layouts({gen_ghz_circuit(3)}, cal, opts);
  EXPECT_EQ(r.ranks.at(MetricId::kProxyFidelity), std::vector<std::size_t>{1});
  for (const auto& [m, rho] : r.rho_vs_reference) EXPECT_FALSE(rho) << metric_name(m);
}

TEST(RankLayouts, UniformCalibrationTiesEverything) {
  const Calibration cal = uniform_cal(4);
  const CompiledCircuit logical = gen_random_circuit(3, 4, 1);
  std::vector<CompiledCircuit> impls;
  for (const auto& layout : random_layouts(3, 4, 4, 2)) {
    impls.push_back(route_circuit(logical, layout, CouplingMap::from_calibration(cal)));
  }
  RankOptions opts;
  opts.oracle = true;
  const RankingResult r = rank_layouts(impls, cal, opts);
  const auto& vals = r.values.at(MetricId::kProxyFidelity);
  for (double v : vals) EXPECT_NEAR(v, vals.front(), 1e-12);
  // Exact ties resolve to circuit order.
  EXPECT_EQ(r.ranks.at(MetricId::kGateCount), (std::vector<std::size_t>{1, 2, 3, 4}));
  EXPECT_FALSE(r.rho_vs_reference.at(MetricId::kGateCount));
}

TEST(RankLayouts, RanksAndOrientation) {
  EXPECT_EQ(rank_positions({0.5, 0.9, 0.7}, true), (std::vector<std::size_t>{3, 1, 2}));
  EXPECT_EQ(rank_positions({5, 2, 9}, false), (std::vector<std::size_t>{2, 1, 3}));
  // Lower depth going with higher fidelity is a perfect positive agreement.
  EXPECT_NEAR(*oriented_rho(MetricId::kDepth, {3, 2, 1}, {0.1, 0.2, 0.3}), 1.0, 1e-15);
}

TEST(RankLayouts, Deterministic) {
  RankingExperimentConfig cfg;
  cfg.circuits = 2;
  cfg.layouts = 6;
  const RankingExperiment a = ranking_experiment(cfg);
  const RankingExperiment b = ranking_experiment(cfg);
  ASSERT_EQ(a.per_circuit.size(), b.per_circuit.size());
  for (std::size_t i = 0; i < a.per_circuit.size(); ++i) {
    EXPECT_EQ(a.per_circuit[i].values, b.per_circuit[i].values);
    EXPECT_EQ(a.per_circuit[i].ranks, b.per_circuit[i].ranks);
  }
  EXPECT_EQ(a.mean_rho, b.mean_rho);
}

TEST(Fig5, InitialNegativities) {
  const std::vector<std::pair<double, double>> cases{
      {std::numbers::pi / 8, 0.19}, {std::numbers::pi / 4, 0.35}, {std::numbers::pi / 2, 0.5}};
  for (const auto& [theta, want] : cases) {
    const auto rows = fig5_sweep(theta, SweepChannel::kDepolarizing);
    ASSERT_EQ(rows.size(), 101u);
    EXPECT_NEAR(rows.front().negativity, want, 0.005);
    EXPECT_EQ(rows.front().param, 0.0);
    EXPECT_EQ(rows.front().proxy_fidelity, 1.0);
  }
}

TEST(Fig5, ProxyColumnIndependentOfTheta) {
  const auto a = fig5_sweep(std::numbers::pi / 8, SweepChannel::kDepolarizing);
  const auto b = fig5_sweep(std::numbers::pi / 2, SweepChannel::kDepolarizing);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].proxy_fidelity, b[k].proxy_fidelity);
}

TEST(Fig5, ThermalGridStepsByHundredths) {
  const auto rows = fig5_sweep(std::numbers::pi / 4, SweepChannel::kThermal);
  ASSERT_EQ(rows.size(), 101u);
  for (std::size_t k = 0; k < rows.size(); ++k) EXPECT_NEAR(rows[k].param, 0.01 * k, 1e-12);
}

TEST(Fig5, RejectsBadArguments) {
  EXPECT_THROW(fig5_sweep(0.0, SweepChannel::kDepolarizing), DomainError);
  EXPECT_THROW(fig5_sweep(4.0, SweepChannel::kDepolarizing), DomainError);
  SweepOptions one;
  one.steps = 1;
  EXPECT_THROW(fig5_sweep(1.0, SweepChannel::kThermal, one), DomainError);
}

TEST(Generators, IdealOutputs) {
  const OracleRun bv = simulate_ideal(gen_bv_circuit("101"));
  EXPECT_NEAR(bv.distribution.at("101"), 1.0, 1e-12);
  const OracleRun ghz = simulate_ideal(gen_ghz_circuit(3));
  EXPECT_NEAR(ghz.distribution.at("000"), 0.5, 1e-12);
  EXPECT_NEAR(ghz.distribution.at("111"), 0.5, 1e-12);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EXPECT_NEAR(simulate_ideal(gen_id_circuit(2, 10, seed)).distribution.at("00"), 1.0, 1e-10);
  }
  EXPECT_THROW(gen_bv_circuit(""), DomainError);
  EXPECT_THROW(gen_ghz_circuit(1), DomainError);
  EXPECT_THROW(gen_random_circuit(0, 3, 0), DomainError);
}

TEST(Generators, DeterministicGivenSeed) {
  RandomCircuitOptions su2;
  su2.su2_layers = true;
  EXPECT_EQ(gen_random_circuit(5, 6, 42), gen_random_circuit(5, 6, 42));
  EXPECT_EQ(gen_random_circuit(5, 6, 42, su2), gen_random_circuit(5, 6, 42, su2));
  EXPECT_NE(gen_random_circuit(5, 6, 42), gen_random_circuit(5, 6, 43));
  EXPECT_EQ(random_layouts(4, 6, 10, 1), random_layouts(4, 6, 10, 1));
}

TEST(Generators, SimulatedCalibrationCoversTopology) {
  DeviceSpec spec;
  spec.num_qubits = 5;
  spec.topology = Topology::kRing;
  const Calibration cal = simulated_calibration(spec);
  EXPECT_TRUE(cal.find_gate("cz", {0, 4}));
  EXPECT_FALSE(cal.find_gate("cz", {0, 2}));
  for (const QubitCal& q : cal.qubits) EXPECT_LE(q.t2, 2.0 * q.t1);
}

// Properties -----------------------------------------------------------------

TEST(Property, SpearmanSymmetricAndMonotoneInvariant) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng() % 20;
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = u(rng);
      b[i] = u(rng);
    }
    const double rho = *spearman_rho(a, b);
    EXPECT_NEAR(rho, *spearman_rho(b, a), 1e-12);
    EXPECT_NEAR(rho, textbook_rho(a, b), 1e-12);
    std::vector<double> ta(n);
    for (std::size_t i = 0; i < n; ++i) ta[i] = std::exp(3.0 * a[i]) - 7.0;
    EXPECT_NEAR(rho, *spearman_rho(ta, b), 1e-12);
  }
}

TEST(Property, EntanglementSweepsAreMonotone) {
  for (SweepChannel ch : {SweepChannel::kDepolarizing, SweepChannel::kThermal}) {
    for (double theta : {std::numbers::pi / 8, std::numbers::pi / 4, std::numbers::pi / 2}) {
      const auto rows = fig5_sweep(theta, ch);
      std::vector<double> neg, prox;
      for (std::size_t k = 1; k < rows.size(); ++k) {
        EXPECT_LE(rows[k].negativity, rows[k - 1].negativity + 1e-12);
        EXPECT_LT(rows[k].proxy_fidelity, rows[k - 1].proxy_fidelity);
      }
      for (const SweepRow& r : rows) {
        if (r.negativity > 1e-12) {
          neg.push_back(r.negativity);
          prox.push_back(r.proxy_fidelity);
        }
      }
      ASSERT_GE(neg.size(), 2u);
      EXPECT_GE(*spearman_rho(neg, prox), 0.99);
    }
  }
}
