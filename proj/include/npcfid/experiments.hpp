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

#pragma once

/**
 * @file experiments.hpp
 * @brief Experiment drivers: layout ranking, entanglement sweeps, and
 * estimate-versus-oracle accuracy studies on synthetic devices.
 *
 * Every driver is deterministic for a fixed seed. Ground truth always comes
 * from the density-matrix oracle.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "npcfid/calibration.hpp"
#include "npcfid/circuit.hpp"
#include "npcfid/generators.hpp"
#include "npcfid/metrics.hpp"
#include "npcfid/npc.hpp"
#include "npcfid/oracle.hpp"
#include "npcfid/stats.hpp"

namespace npcfid {

// ---------------------------------------------------------------------------
// Layout ranking

struct RankingResult {
  std::vector<std::string> circuit_ids;
  std::vector<MetricId> metrics;
  std::map<MetricId, std::vector<double>> values;
  /// 1 is best; ties go to the lower circuit index.
  std::map<MetricId, std::vector<std::size_t>> ranks;
  /// Spearman rho of each metric against the state-fidelity ranking. Empty
  /// entries mark undefined correlations (one circuit, or constant values).
  std::map<MetricId, std::optional<double>> rho_vs_reference;
};

/// Ranks of `values` with 1 for the best entry.
inline std::vector<std::size_t> rank_positions(const std::vector<double>& values, bool higher_is_better) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return higher_is_better ? values[a] > values[b] : values[a] < values[b];
  });
  std::vector<std::size_t> ranks(values.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) ranks[order[pos]] = pos + 1;
  return ranks;
}

/// Rank correlation of a metric with the reference, oriented so that +1
/// means the metric orders implementations exactly like the reference.
inline std::optional<double> oriented_rho(MetricId metric, const std::vector<double>& values,
                                          const std::vector<double>& reference) {
  if (values.size() < 2) return std::nullopt;
  std::vector<double> v = values;
  if (!higher_is_better(metric)) {
    for (double& x : v) x = -x;
  }
  return spearman_rho(v, reference);
}

struct RankOptions {
  bool oracle = false;
  OracleOptions oracle_options;
  EvalOptions eval_options;
};

inline RankingResult rank_layouts(const std::vector<CompiledCircuit>& implementations, const Calibration& cal,
                                  const RankOptions& opts = {}, std::vector<std::string> ids = {}) {
  RankingResult out;
  if (ids.empty()) {
    for (std::size_t i = 0; i < implementations.size(); ++i) ids.push_back("impl" + std::to_string(i));
  }
  if (ids.size() != implementations.size()) throw LengthMismatch("rank_layouts: one id per implementation");
  out.circuit_ids = std::move(ids);

  std::vector<MetricVector> vectors;
  for (const CompiledCircuit& c : implementations) {
    if (opts.oracle) {
      const OracleComparison cmp = compare_with_oracle(c, cal, opts.oracle_options);
      vectors.push_back(score_all(c, cal, &cmp, opts.eval_options));
    } else {
      vectors.push_back(score_all(c, cal, nullptr, opts.eval_options));
    }
  }
  if (vectors.empty()) return out;
  for (const MetricValue& mv : vectors.front().values) {
    const bool everywhere = std::all_of(vectors.begin(), vectors.end(),
                                        [&](const MetricVector& v) { return v.get(mv.metric).has_value(); });
    if (everywhere) out.metrics.push_back(mv.metric);
  }
  for (MetricId m : out.metrics) {
    auto& vals = out.values[m];
    for (const MetricVector& v : vectors) vals.push_back(*v.get(m));
    out.ranks[m] = rank_positions(vals, higher_is_better(m));
  }
  if (opts.oracle) {
    const auto& reference = out.values.at(MetricId::kStateFidelity);
    for (MetricId m : out.metrics) out.rho_vs_reference[m] = oriented_rho(m, out.values.at(m), reference);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Entanglement sweep

enum class SweepChannel { kDepolarizing, kThermal };

struct SweepRow {
  double theta = 0.0;
  double param = 0.0;  // p, or t / T2
  double negativity = 0.0;
  double proxy_fidelity = 1.0;
};

struct SweepOptions {
  std::size_t steps = 101;
  double t1_us = 100.0;
  double t2_us = 80.0;
};

/// Ry(theta) on qubit 0 then CX(0, 1); the channel acts on qubit 1 with its
/// strength swept over [0, 1] (depolarizing p) or [0, T2] (duration, reported
/// as the fraction t / T2).
inline std::vector<SweepRow> fig5_sweep(double theta, SweepChannel channel, const SweepOptions& opts = {}) {
  if (!(theta > 0.0 && theta <= std::numbers::pi)) throw DomainError("fig5_sweep: theta must lie in (0, pi]");
  if (opts.steps < 2) throw DomainError("fig5_sweep: need at least two steps");
  DensityMatrix prepared(2);
  apply_unitary(prepared, {"ry", {0}, {theta}, std::nullopt});
  apply_unitary(prepared, {"cx", {0, 1}, {}, std::nullopt});

  const double t1 = opts.t1_us * 1e-6;
  const double t2 = opts.t2_us * 1e-6;
  std::vector<SweepRow> rows;
  for (std::size_t k = 0; k < opts.steps; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(opts.steps - 1);
    DensityMatrix dm = prepared;
    SweepRow row{theta, 0.0, 0.0, 1.0};
    if (channel == SweepChannel::kDepolarizing) {
      apply_depolarizing(dm, {1}, x);
      row.param = x;
      row.proxy_fidelity = step_depolarizing(1.0, x);
    } else {
      const double t = x * t2;
      apply_thermal(dm, 1, t, t1, std::min(t2, 2.0 * t1));
      row.param = x;
      row.proxy_fidelity = step_thermal(1.0, t, t1, t2);
    }
    row.negativity = negativity(dm, {0});
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Accuracy against the oracle

struct AccuracyRow {
  std::string id;
  std::size_t qubits = 0;
  std::size_t depth = 0;
  double estimated = 0.0;
  double actual = 0.0;
};

struct AccuracyExperiment {
  std::vector<AccuracyRow> rows;
  AccuracyResult stats;
};

struct AccuracyConfig {
  std::size_t circuits = 60;
  std::size_t min_qubits = 4;
  std::size_t max_qubits = 8;
  std::size_t min_depth = 1;
  std::size_t max_depth = 10;
  std::uint64_t seed = 0;
  DeviceSpec device{};  // shared calibration, all-to-all by default
  /// Gate ensemble for random circuits.
  RandomCircuitOptions random{.two_qubit_fraction = 0.3, .su2_layers = true};
};

namespace exp_detail {

inline AccuracyExperiment finish(std::vector<AccuracyRow> rows) {
  AccuracyExperiment out;
  std::vector<std::pair<double, double>> pairs;
  for (const auto& r : rows) pairs.emplace_back(r.estimated, r.actual);
  out.stats = aad_r2(std::move(pairs));
  out.rows = std::move(rows);
  return out;
}

}  // namespace exp_detail

/// Random circuits without measurement: circuit proxy fidelity versus the
/// oracle state fidelity of the noisy final state.
inline AccuracyExperiment random_circuit_accuracy(const AccuracyConfig& cfg) {
  const Calibration cal = simulated_calibration(cfg.device);
  std::mt19937_64 rng(cfg.seed);
  std::vector<AccuracyRow> rows;
  for (std::size_t i = 0; i < cfg.circuits; ++i) {
    const std::size_t n = cfg.min_qubits + i % (cfg.max_qubits - cfg.min_qubits + 1);
    const std::size_t d = cfg.min_depth + rng() % (cfg.max_depth - cfg.min_depth + 1);
    const CompiledCircuit logical = gen_random_circuit(n, d, rng(), cfg.random);
    std::vector<Qubit> layout(n);
    std::iota(layout.begin(), layout.end(), 0);
    const CompiledCircuit c = route_circuit(logical, layout, CouplingMap::from_calibration(cal));
    const double proxy = evaluate(c, cal).circuit;
    const double actual = logical_state_fidelity(simulate_ideal(c), simulate_noisy(c, cal));
    rows.push_back({"random" + std::to_string(i), n, d, proxy, actual});
  }
  return exp_detail::finish(std::move(rows));
}

/// BV circuits: proxy fidelity over the measured data qubits versus the
/// oracle probability of reading the secret string.
inline AccuracyExperiment bv_accuracy(const AccuracyConfig& cfg) {
  const Calibration cal = simulated_calibration(cfg.device);
  std::mt19937_64 rng(cfg.seed);
  std::vector<AccuracyRow> rows;
  for (std::size_t i = 0; i < cfg.circuits; ++i) {
    const std::size_t n = cfg.min_qubits + i % (cfg.max_qubits - cfg.min_qubits + 1);
    std::string secret(n - 1, '0');
    while (secret.find('1') == std::string::npos) {
      for (char& ch : secret) ch = (rng() & 1) ? '1' : '0';
    }
    const CompiledCircuit c = gen_bv_circuit(secret);
    const double proxy = evaluate(c, cal, {QubitScope::kMeasured}).circuit;
    const double actual = success_probability(simulate_noisy(c, cal).distribution, {secret});
    rows.push_back({"bv_" + secret, n, depth(c), proxy, actual});
  }
  return exp_detail::finish(std::move(rows));
}

/// GHZ circuits: proxy fidelity versus the oracle probability of the two
/// ideal outcomes.
inline AccuracyExperiment ghz_accuracy(const AccuracyConfig& cfg) {
  DeviceSpec spec = cfg.device;
  std::vector<AccuracyRow> rows;
  for (std::size_t i = 0; i < cfg.circuits; ++i) {
    const std::size_t n = cfg.min_qubits + i % (cfg.max_qubits - cfg.min_qubits + 1);
    spec.seed = cfg.seed + i;
    const Calibration cal = simulated_calibration(spec);
    const CompiledCircuit c = gen_ghz_circuit(n);
    const double proxy = evaluate(c, cal).circuit;
    const double actual = success_probability(simulate_noisy(c, cal).distribution,
                                              {std::string(n, '0'), std::string(n, '1')});
    rows.push_back({"ghz" + std::to_string(n) + "_cal" + std::to_string(spec.seed), n, depth(c), proxy, actual});
  }
  return exp_detail::finish(std::move(rows));
}

struct IdLayerRow {
  std::size_t layers = 0;
  Qubit qubit = 0;
  double estimated = 0.0;
  double actual = 0.0;  // probability of reading 0 on this qubit
};

/// Two-qubit identity circuits of growing length: per-qubit proxy fidelity
/// versus the oracle probability of the correct bit.
inline std::vector<IdLayerRow> id_layer_sweep(const std::vector<std::size_t>& layer_counts, std::uint64_t seed,
                                              const DeviceSpec& device) {
  const Calibration cal = simulated_calibration(device);
  std::vector<IdLayerRow> rows;
  for (std::size_t layers : layer_counts) {
    const CompiledCircuit c = gen_id_circuit(2, layers, seed + layers);
    const ProxyFidelityReport rep = evaluate(c, cal);
    const Distribution dist = simulate_noisy(c, cal).distribution;
    for (Qubit q = 0; q < 2; ++q) {
      double correct = 0.0;
      for (const auto& [bits, p] : dist.probs) {
        if (bits[dist.width - 1 - c.measured.at(q)] == '0') correct += p;
      }
      rows.push_back({layers, q, rep.per_qubit[q], correct});
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Ranking consistency

struct RankingExperimentConfig {
  std::size_t circuits = 6;
  std::size_t layouts = 10;
  std::size_t logical_qubits = 4;
  std::size_t depth = 6;
  std::uint64_t seed = 0;
  DeviceSpec device{6, Topology::kRing};
};

struct RankingExperiment {
  std::vector<RankingResult> per_circuit;
  /// Mean rho per metric over circuits; undefined correlations count as 0.
  std::map<MetricId, double> mean_rho;
};

/// Random logical circuits, each realized under `layouts` random layouts on
/// a sparsely coupled device, ranked by every metric against the oracle
/// state fidelity.
inline RankingExperiment ranking_experiment(const RankingExperimentConfig& cfg) {
  DeviceSpec spec = cfg.device;
  spec.seed = cfg.seed;
  const Calibration cal = simulated_calibration(spec);
  const CouplingMap coupling = CouplingMap::from_calibration(cal);
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  RankingExperiment out;
  std::map<MetricId, double> sums;
  for (std::size_t i = 0; i < cfg.circuits; ++i) {
    const CompiledCircuit logical = gen_random_circuit(cfg.logical_qubits, cfg.depth, rng());
    std::vector<CompiledCircuit> impls;
    for (const auto& layout : random_layouts(cfg.logical_qubits, spec.num_qubits, cfg.layouts, rng())) {
      impls.push_back(route_circuit(logical, layout, coupling));
    }
    RankOptions opts;
    opts.oracle = true;
    RankingResult r = rank_layouts(impls, cal, opts);
    for (const auto& [m, rho] : r.rho_vs_reference) sums[m] += rho.value_or(0.0);
    out.per_circuit.push_back(std::move(r));
  }
  for (const auto& [m, s] : sums) out.mean_rho[m] = s / static_cast<double>(cfg.circuits);
  return out;
}

}  // namespace npcfid
