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

// Benchmark circuit families, synthetic device calibrations, and a greedy
// SWAP router used to realize one logical circuit under different layouts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "npcfid/calibration.hpp"
#include "npcfid/circuit.hpp"
#include "npcfid/error.hpp"

namespace npcfid {

namespace gen_detail {

inline bool is_rotation(const std::string& name) {
  return name == "rz" || name == "rx" || name == "ry" || name == "p" || name == "rzz";
}

inline GateOp inverse(const GateOp& op) {
  GateOp inv = op;
  if (is_rotation(op.name)) {
    for (double& v : inv.params) v = -v;
  } else if (op.name == "sx") {
    inv.name = "sxdg";
  } else if (op.name == "s") {
    inv.name = "sdg";
  } else if (op.name == "t") {
    inv.name = "tdg";
  }
  return inv;
}

/// One layer of random gates: each qubit is touched at most once.
inline std::vector<GateOp> random_layer(std::size_t n, std::mt19937_64& rng,
                                        const std::vector<std::string>& one_qubit,
                                        const std::vector<std::string>& two_qubit,
                                        double two_qubit_fraction) {
  std::vector<Qubit> order(n);
  for (Qubit q = 0; q < n; ++q) order[q] = q;
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<GateOp> layer;
  std::size_t i = 0;
  while (i < order.size()) {
    const bool pair = !two_qubit.empty() && i + 1 < order.size() && unit(rng) < two_qubit_fraction;
    if (pair) {
      const std::string& name = two_qubit[rng() % two_qubit.size()];
      GateOp op{name, {order[i], order[i + 1]}, {}, std::nullopt};
      if (is_rotation(name)) op.params.push_back(angle(rng));
      layer.push_back(std::move(op));
      i += 2;
    } else {
      const std::string& name = one_qubit[rng() % one_qubit.size()];
      GateOp op{name, {order[i]}, {}, std::nullopt};
      if (is_rotation(name)) op.params.push_back(angle(rng));
      layer.push_back(std::move(op));
      i += 1;
    }
  }
  return layer;
}

}  // namespace gen_detail

struct RandomCircuitOptions {
  std::vector<std::string> one_qubit{"rz", "sx", "x"};
  std::vector<std::string> two_qubit{"cz"};
  double two_qubit_fraction = 0.3;
  bool measure = false;
  /// Unpaired qubits get a random SU(2) element as rz sx rz sx rz instead of
  /// one gate drawn from `one_qubit`.
  bool su2_layers = false;
};

/// `depth` layers of random native gates on an identity layout.
inline CompiledCircuit gen_random_circuit(std::size_t n_qubits, std::size_t depth, std::uint64_t seed,
                                          const RandomCircuitOptions& opts = {}) {
  if (n_qubits == 0) throw DomainError("gen_random_circuit: need at least one qubit");
  if (opts.one_qubit.empty()) throw DomainError("gen_random_circuit: empty single-qubit gate set");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  CompiledCircuit c = make_circuit(n_qubits);
  for (std::size_t d = 0; d < depth; ++d) {
    for (GateOp& op : gen_detail::random_layer(n_qubits, rng, opts.one_qubit, opts.two_qubit,
                                               opts.two_qubit_fraction)) {
      if (opts.su2_layers && op.qubits.size() == 1) {
        const Qubit q = op.qubits[0];
        for (int k = 0; k < 5; ++k) {
          if (k % 2) {
            c.ops.push_back({"sx", {q}, {}, std::nullopt});
          } else {
            c.ops.push_back({"rz", {q}, {angle(rng)}, std::nullopt});
          }
        }
        continue;
      }
      c.ops.push_back(std::move(op));
    }
  }
  if (opts.measure) {
    for (Qubit q = 0; q < n_qubits; ++q) c.measured[q] = q;
  }
  return c;
}

/// Bernstein-Vazirani for `secret` (first character is the most significant
/// bit). Data qubits 0..k-1 are measured into c[0..k-1]; qubit k is the
/// ancilla. The ideal outcome is exactly `secret`.
inline CompiledCircuit gen_bv_circuit(const std::string& secret) {
  if (secret.empty()) throw DomainError("gen_bv_circuit: empty secret");
  for (char ch : secret) {
    if (ch != '0' && ch != '1') throw DomainError("gen_bv_circuit: secret must be a bitstring");
  }
  const std::size_t k = secret.size();
  CompiledCircuit c = make_circuit(k + 1);
  const Qubit anc = k;
  c.ops.push_back({"x", {anc}, {}, std::nullopt});
  for (Qubit q = 0; q <= k; ++q) c.ops.push_back({"h", {q}, {}, std::nullopt});
  for (Qubit q = 0; q < k; ++q) {
    if (secret[k - 1 - q] == '1') c.ops.push_back({"cx", {q, anc}, {}, std::nullopt});
  }
  for (Qubit q = 0; q < k; ++q) c.ops.push_back({"h", {q}, {}, std::nullopt});
  for (Qubit q = 0; q < k; ++q) c.measured[q] = q;
  return c;
}

/// GHZ state by a CX chain; every qubit measured.
inline CompiledCircuit gen_ghz_circuit(std::size_t n) {
  if (n < 2) throw DomainError("gen_ghz_circuit: need at least two qubits");
  CompiledCircuit c = make_circuit(n);
  c.ops.push_back({"h", {0}, {}, std::nullopt});
  for (Qubit q = 0; q + 1 < n; ++q) c.ops.push_back({"cx", {q, q + 1}, {}, std::nullopt});
  for (Qubit q = 0; q < n; ++q) c.measured[q] = q;
  return c;
}

/// `layers` random layers, each immediately followed by its inverse, so the
/// whole circuit is the identity. Every qubit is measured.
inline CompiledCircuit gen_id_circuit(std::size_t n, std::size_t layers, std::uint64_t seed) {
  if (n == 0) throw DomainError("gen_id_circuit: need at least one qubit");
  std::mt19937_64 rng(seed);
  CompiledCircuit c = make_circuit(n);
  const std::vector<std::string> one{"x", "sx", "rz", "rx", "ry"};
  const std::vector<std::string> two{"cx", "cz"};
  for (std::size_t l = 0; l < layers; ++l) {
    const auto layer = gen_detail::random_layer(n, rng, one, two, 0.3);
    for (const GateOp& op : layer) c.ops.push_back(op);
    for (auto it = layer.rbegin(); it != layer.rend(); ++it) c.ops.push_back(gen_detail::inverse(*it));
  }
  for (Qubit q = 0; q < n; ++q) c.measured[q] = q;
  return c;
}

// ---------------------------------------------------------------------------
// Synthetic devices

enum class Topology { kAllToAll, kLine, kRing };

/// Parameter ranges of a synthetic device. Error rates are drawn
/// log-uniformly, times and durations uniformly.
struct DeviceSpec {
  std::size_t num_qubits = 8;
  Topology topology = Topology::kAllToAll;
  std::uint64_t seed = 0;
  double t1_us_min = 50.0, t1_us_max = 300.0;
  double t2_ratio_min = 0.3, t2_ratio_max = 1.5;  // t2 / t1, capped at 2
  double readout_min = 0.005, readout_max = 0.05;
  double err1q_min = 1e-4, err1q_max = 1e-3;
  double dur1q_ns_min = 30.0, dur1q_ns_max = 60.0;
  double err2q_min = 3e-3, err2q_max = 3e-2;
  double dur2q_ns_min = 250.0, dur2q_ns_max = 600.0;
};

inline std::vector<std::pair<Qubit, Qubit>> topology_pairs(std::size_t n, Topology t) {
  std::vector<std::pair<Qubit, Qubit>> out;
  if (t == Topology::kAllToAll) {
    for (Qubit a = 0; a < n; ++a) {
      for (Qubit b = a + 1; b < n; ++b) out.emplace_back(a, b);
    }
    return out;
  }
  for (Qubit a = 0; a + 1 < n; ++a) out.emplace_back(a, a + 1);
  if (t == Topology::kRing && n > 2) out.emplace_back(0, n - 1);
  return out;
}

inline const std::vector<std::string>& simulated_one_qubit_gates() {
  static const std::vector<std::string> names{"id", "x", "sx", "sxdg", "h", "rx", "ry"};
  return names;
}

inline const std::vector<std::string>& simulated_two_qubit_gates() {
  static const std::vector<std::string> names{"cx", "cz", "rzz"};
  return names;
}

/// Heterogeneous calibration for a synthetic device. rz is virtual (zero
/// error and duration), as on IBM hardware.
inline Calibration simulated_calibration(const DeviceSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto log_uniform = [&](double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); };

  Calibration cal;
  cal.snapshot_id = "simulated-" + std::to_string(spec.num_qubits) + "q-seed" + std::to_string(spec.seed);
  for (Qubit q = 0; q < spec.num_qubits; ++q) {
    QubitCal qc;
    qc.t1 = uniform(spec.t1_us_min, spec.t1_us_max) * 1e-6;
    qc.t2 = std::min(2.0, uniform(spec.t2_ratio_min, spec.t2_ratio_max)) * qc.t1;
    qc.readout_error = uniform(spec.readout_min, spec.readout_max);
    cal.qubits.push_back(qc);
    const double err = log_uniform(spec.err1q_min, spec.err1q_max);
    const double dur = uniform(spec.dur1q_ns_min, spec.dur1q_ns_max) * 1e-9;
    for (const std::string& name : simulated_one_qubit_gates()) {
      cal.add_gate({name, {q}, err, dur});
    }
    cal.add_gate({"rz", {q}, 0.0, 0.0});
  }
  for (const auto& [a, b] : topology_pairs(spec.num_qubits, spec.topology)) {
    const double err = log_uniform(spec.err2q_min, spec.err2q_max);
    const double dur = uniform(spec.dur2q_ns_min, spec.dur2q_ns_max) * 1e-9;
    for (const std::string& name : simulated_two_qubit_gates()) {
      cal.add_gate({name, {a, b}, err, dur});
    }
  }
  return cal;
}

/// Physical qubit pairs with a calibrated two-qubit `gate`.
class CouplingMap {
 public:
  CouplingMap(std::size_t num_physical, const std::vector<std::pair<Qubit, Qubit>>& edges)
      : adj_(num_physical) {
    for (const auto& [a, b] : edges) {
      adj_.at(a).insert(b);
      adj_.at(b).insert(a);
    }
  }

  static CouplingMap from_calibration(const Calibration& cal, const std::string& gate = "cz") {
    std::vector<std::pair<Qubit, Qubit>> edges;
    for (const auto& [key, g] : cal.gates()) {
      if (g.name == gate && g.qubits.size() == 2) edges.emplace_back(g.qubits[0], g.qubits[1]);
    }
    return CouplingMap(cal.qubits.size(), edges);
  }

  bool adjacent(Qubit a, Qubit b) const { return adj_.at(a).count(b) > 0; }
  std::size_t size() const { return adj_.size(); }

  /// Shortest path from a to b, inclusive; empty when unreachable.
  std::vector<Qubit> path(Qubit a, Qubit b) const {
    std::vector<std::optional<Qubit>> prev(adj_.size());
    std::vector<bool> seen(adj_.size(), false);
    std::deque<Qubit> queue{a};
    seen[a] = true;
    while (!queue.empty()) {
      const Qubit u = queue.front();
      queue.pop_front();
      if (u == b) break;
      for (Qubit v : adj_[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        prev[v] = u;
        queue.push_back(v);
      }
    }
    if (!seen[b]) return {};
    std::vector<Qubit> out{b};
    while (out.back() != a) out.push_back(*prev[out.back()]);
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<std::set<Qubit>> adj_;
};

/// Maps a logical circuit (ops on logical indices, identity layout) onto a
/// device under `layout`, inserting placeholder SWAP segments that move the
/// first operand of each non-adjacent two-qubit gate toward the second.
inline CompiledCircuit route_circuit(const CompiledCircuit& logical, const std::vector<Qubit>& layout,
                                     const CouplingMap& coupling) {
  if (layout.size() != logical.num_logical) throw ValueError("layout", "length differs from num_logical");
  CompiledCircuit out;
  out.num_physical = coupling.size();
  out.num_logical = logical.num_logical;
  out.initial_layout = layout;
  out.measured = logical.measured;
  LayoutState state(layout, out.num_physical);
  std::size_t segment = 0;
  for (const GateOp& op : logical.ops) {
    if (op.tag) throw ValueError("ops", "logical circuit must not contain SWAP segments");
    GateOp routed = op;
    if (op.qubits.size() == 2) {
      const Qubit la = op.qubits[0];
      const Qubit lb = op.qubits[1];
      while (!coupling.adjacent(state.physical_of(la), state.physical_of(lb))) {
        const auto p = coupling.path(state.physical_of(la), state.physical_of(lb));
        if (p.size() < 2) throw ValueError("coupling", "qubits are not connected");
        append_swap(out, p[0], p[1], segment++);
        state.swap_physical(p[0], p[1]);
      }
    }
    for (Qubit& q : routed.qubits) q = state.physical_of(q);
    out.ops.push_back(std::move(routed));
  }
  return out;
}

/// `count` distinct (when possible) seeded layouts of k logical qubits on n
/// physical qubits.
inline std::vector<std::vector<Qubit>> random_layouts(std::size_t k, std::size_t n, std::size_t count,
                                                      std::uint64_t seed) {
  if (k > n) throw DomainError("random_layouts: more logical than physical qubits");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Qubit>> out;
  std::set<std::vector<Qubit>> seen;
  std::vector<Qubit> phys(n);
  for (Qubit q = 0; q < n; ++q) phys[q] = q;
  std::size_t attempts = 0;
  while (out.size() < count) {
    std::shuffle(phys.begin(), phys.end(), rng);
    std::vector<Qubit> layout(phys.begin(), phys.begin() + static_cast<std::ptrdiff_t>(k));
    if (seen.insert(layout).second || ++attempts > 100 * count) out.push_back(layout);
  }
  return out;
}

}  // namespace npcfid
