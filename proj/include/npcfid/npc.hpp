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
 * @file npc.hpp
 * @brief Noise proxy circuits and analytic proxy fidelity.
 *
 * Stripping the ideal gates from a compiled circuit leaves, for every logical
 * qubit, an ordered sequence of noise channels: depolarizing and thermal
 * relaxation channels for each gate it takes part in (parameterized by the
 * physical qubit it currently resides on) and a final readout bit flip when
 * it is measured. The proxy fidelity of a qubit is the trace overlap between
 * an arbitrary input state and the state after that sequence. It starts at 1
 * and each channel acts on it as an affine map with fixed point 1/2:
 *
 *   depolarizing(p):       f -> 1/2 + (f - 1/2)(1 - p)
 *   thermal(t, T1, T2):    f -> 1/2 + (f - 1/2)(2/3 e^{-t/T2} + 1/3 e^{-t/T1})
 *   readout(e):            f -> f (1 - e)
 *
 * The thermal rule is the average over an isotropic prior on the input Bloch
 * direction. The circuit proxy fidelity is the product over qubits.
 *
 * A routing SWAP is treated as one noise block: the resident qubit's
 * fidelity is evolved through the channel sequence seen by each of the two
 * physical qubits and the two results are averaged.
 */

#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "npcfid/calibration.hpp"
#include "npcfid/circuit.hpp"
#include "npcfid/error.hpp"
#include "npcfid/swap_template.hpp"

namespace npcfid {

struct Depolarizing {
  double p = 0.0;
};

struct Thermal {
  double t = 0.0;   // seconds
  double t1 = 0.0;  // seconds
  double t2 = 0.0;  // seconds
};

struct Readout {
  double e = 0.0;
};

using Channel = std::variant<Depolarizing, Thermal>;

/// Integrated SWAP block: channel sequences on each of the two physical
/// qubits the segment covers.
struct SwapMerge {
  std::size_t segment = 0;
  Qubit first = 0;
  Qubit second = 0;
  std::vector<Channel> on_first;
  std::vector<Channel> on_second;
};

inline constexpr std::size_t kMeasureSource = std::numeric_limits<std::size_t>::max();

struct NoiseEvent {
  std::variant<Depolarizing, Thermal, Readout, SwapMerge> channel;
  /// Index of the originating op (first op of a SWAP segment), or
  /// kMeasureSource for readout.
  std::size_t source_op = 0;
};

struct QubitTrajectory {
  Qubit logical = 0;
  std::vector<NoiseEvent> events;
  /// Physical residence after each event.
  std::vector<Qubit> residences;
};

namespace npc_detail {

inline void require_fidelity(double f, const char* op) {
  if (!(f >= 0.0 && f <= 1.0)) throw DomainError(std::string(op) + ": fidelity outside [0, 1]");
}

inline void require_probability(double p, const char* op) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(op) + ": probability outside [0, 1]");
}

}  // namespace npc_detail

inline double step_depolarizing(double f, double p) {
  npc_detail::require_fidelity(f, "step_depolarizing");
  npc_detail::require_probability(p, "step_depolarizing");
  return 0.5 + (f - 0.5) * (1.0 - p);
}

/// Isotropic-average contraction of the Bloch overlap under thermal
/// relaxation of duration t.
inline double thermal_contraction(double t, double t1, double t2) {
  if (!(t >= 0.0) || !(t1 > 0.0) || !(t2 > 0.0)) {
    throw DomainError("thermal relaxation needs t >= 0 and positive T1, T2");
  }
  return (2.0 / 3.0) * std::exp(-t / t2) + (1.0 / 3.0) * std::exp(-t / t1);
}

inline double step_thermal(double f, double t, double t1, double t2) {
  npc_detail::require_fidelity(f, "step_thermal");
  return 0.5 + (f - 0.5) * thermal_contraction(t, t1, t2);
}

inline double step_readout(double f, double e) {
  npc_detail::require_fidelity(f, "step_readout");
  npc_detail::require_probability(e, "step_readout");
  return f * (1.0 - e);
}

inline double step_channel(double f, const Channel& ch) {
  if (const auto* d = std::get_if<Depolarizing>(&ch)) return step_depolarizing(f, d->p);
  const auto& th = std::get<Thermal>(ch);
  return step_thermal(f, th.t, th.t1, th.t2);
}

/// Post-SWAP fidelity of a qubit entering the segment with fidelity f.
inline double merge_swap_branches(double f, const SwapMerge& merge) {
  double fi = f;
  for (const Channel& ch : merge.on_first) fi = step_channel(fi, ch);
  double fj = f;
  for (const Channel& ch : merge.on_second) fj = step_channel(fj, ch);
  return 0.5 * (fi + fj);
}

struct TracePoint {
  std::size_t event = 0;
  double fidelity = 1.0;
};

struct QubitFidelity {
  double fidelity = 1.0;
  std::vector<TracePoint> trace;
};

/// Steps a trajectory from f0 = 1 through all of its events.
inline QubitFidelity qubit_proxy_fidelity(const QubitTrajectory& traj) {
  QubitFidelity out;
  out.trace.reserve(traj.events.size());
  double f = 1.0;
  for (std::size_t i = 0; i < traj.events.size(); ++i) {
    const auto& ch = traj.events[i].channel;
    if (const auto* d = std::get_if<Depolarizing>(&ch)) {
      f = step_depolarizing(f, d->p);
    } else if (const auto* th = std::get_if<Thermal>(&ch)) {
      f = step_thermal(f, th->t, th->t1, th->t2);
    } else if (const auto* r = std::get_if<Readout>(&ch)) {
      if (i + 1 != traj.events.size()) throw DomainError("readout must be the last event of a trajectory");
      f = step_readout(f, r->e);
    } else {
      f = merge_swap_branches(f, std::get<SwapMerge>(ch));
    }
    out.trace.push_back({i, f});
  }
  out.fidelity = f;
  return out;
}

inline double circuit_proxy_fidelity(std::span<const double> per_qubit) {
  double f = 1.0;
  for (double fi : per_qubit) {
    npc_detail::require_fidelity(fi, "circuit_proxy_fidelity");
    f *= fi;
  }
  return f;
}

/// Channels a physical qubit sees during one calibrated gate.
inline void append_gate_channels(std::vector<Channel>& out, const GateNoise& noise, std::size_t k) {
  out.push_back(Depolarizing{noise.p});
  out.push_back(Thermal{noise.duration, noise.relaxation[k].first, noise.relaxation[k].second});
}

/// Expands a SWAP step into per-physical-qubit channel sequences.
inline SwapMerge expand_swap_segment(const CompiledCircuit& c, const Step& step,
                                     const Calibration& cal, const SwapTemplate& tmpl) {
  SwapMerge merge;
  merge.segment = step.segment;
  merge.first = step.a;
  merge.second = step.b;
  for (const GateOp& op : segment_ops(c, step, tmpl)) {
    const GateNoise noise = lookup_gate(cal, op.name, op.qubits);
    for (std::size_t k = 0; k < op.qubits.size(); ++k) {
      append_gate_channels(op.qubits[k] == step.a ? merge.on_first : merge.on_second, noise, k);
    }
  }
  return merge;
}

/// Updates the fidelities of the two residents of a SWAP segment and
/// exchanges their physical locations.
inline void apply_swap_segment(std::vector<double>& fidelity, LayoutState& layout,
                               const SwapMerge& merge) {
  for (Qubit p : {merge.first, merge.second}) {
    if (auto l = layout.logical_at(p)) fidelity.at(*l) = merge_swap_branches(fidelity.at(*l), merge);
  }
  layout.swap_physical(merge.first, merge.second);
}

/// Reconstructs the noise-channel trajectory of every logical qubit.
/// Gates on physical qubits with no logical resident contribute nothing.
inline std::vector<QubitTrajectory> build_npc(
    const CompiledCircuit& c, const Calibration& cal,
    const SwapTemplate& tmpl = SwapTemplate::default_template()) {
  std::vector<QubitTrajectory> trajs(c.num_logical);
  for (Qubit l = 0; l < c.num_logical; ++l) trajs[l].logical = l;
  LayoutState layout(c.initial_layout, c.num_physical);

  auto push = [&](Qubit l, NoiseEvent ev, Qubit physical) {
    trajs[l].events.push_back(std::move(ev));
    trajs[l].residences.push_back(physical);
  };

  for (const Step& step : schedule(c)) {
    if (step.kind == Step::Kind::kSwap) {
      const SwapMerge merge = expand_swap_segment(c, step, cal, tmpl);
      const auto la = layout.logical_at(step.a);
      const auto lb = layout.logical_at(step.b);
      layout.swap_physical(step.a, step.b);
      if (la) push(*la, {merge, step.first}, step.b);
      if (lb) push(*lb, {merge, step.first}, step.a);
      continue;
    }
    const GateOp& op = c.ops[step.first];
    const GateNoise noise = lookup_gate(cal, op.name, op.qubits);
    for (std::size_t k = 0; k < op.qubits.size(); ++k) {
      const Qubit p = op.qubits[k];
      const auto l = layout.logical_at(p);
      if (!l) continue;
      push(*l, {Depolarizing{noise.p}, step.first}, p);
      push(*l, {Thermal{noise.duration, noise.relaxation[k].first, noise.relaxation[k].second},
                step.first},
           p);
    }
  }
  for (const auto& [l, bit] : c.measured) {
    const Qubit p = layout.physical_of(l);
    const QubitCal* qc = cal.find_qubit(p);
    if (!qc) throw MissingReadoutCal(p);
    push(l, {Readout{qc->readout_error}, kMeasureSource}, p);
  }
  return trajs;
}

enum class QubitScope { kAll, kMeasured };

struct EvalOptions {
  QubitScope scope = QubitScope::kAll;
  const SwapTemplate* swap_template = nullptr;  // default template when null
};

struct ProxyFidelityReport {
  std::vector<double> per_qubit;
  double circuit = 1.0;
  std::vector<std::vector<TracePoint>> traces;
  std::vector<QubitTrajectory> trajectories;
  QubitScope scope = QubitScope::kAll;
};

inline ProxyFidelityReport evaluate(const CompiledCircuit& c, const Calibration& cal,
                                    const EvalOptions& opts = {}) {
  const SwapTemplate& tmpl = opts.swap_template ? *opts.swap_template : SwapTemplate::default_template();
  ProxyFidelityReport report;
  report.scope = opts.scope;
  report.trajectories = build_npc(c, cal, tmpl);
  for (const QubitTrajectory& t : report.trajectories) {
    QubitFidelity qf = qubit_proxy_fidelity(t);
    report.per_qubit.push_back(qf.fidelity);
    report.traces.push_back(std::move(qf.trace));
  }
  if (opts.scope == QubitScope::kAll) {
    report.circuit = circuit_proxy_fidelity(report.per_qubit);
  } else {
    std::vector<double> scoped;
    for (const auto& [l, bit] : c.measured) scoped.push_back(report.per_qubit[l]);
    report.circuit = circuit_proxy_fidelity(scoped);
  }
  return report;
}

inline nlohmann::json report_to_json(const ProxyFidelityReport& r) {
  nlohmann::json traces = nlohmann::json::array();
  for (const auto& trace : r.traces) {
    nlohmann::json rows = nlohmann::json::array();
    for (const TracePoint& pt : trace) rows.push_back({pt.event, pt.fidelity});
    traces.push_back(rows);
  }
  return {{"per_qubit", r.per_qubit}, {"circuit", r.circuit}, {"traces", traces}};
}

inline const char* event_kind(const NoiseEvent& ev) {
  switch (ev.channel.index()) {
    case 0: return "depolarizing";
    case 1: return "thermal";
    case 2: return "readout";
    default: return "swap";
  }
}

/// One CSV row per noise event, for plotting per-qubit decay curves.
inline std::string report_to_csv(const ProxyFidelityReport& r) {
  std::string out = "logical,event,kind,source_op,physical,fidelity\n";
  char buf[64];
  for (std::size_t l = 0; l < r.traces.size(); ++l) {
    const QubitTrajectory& traj = r.trajectories.at(l);
    for (const TracePoint& pt : r.traces[l]) {
      const NoiseEvent& ev = traj.events[pt.event];
      std::snprintf(buf, sizeof(buf), "%.17g", pt.fidelity);
      out += std::to_string(l) + "," + std::to_string(pt.event) + "," + event_kind(ev) + "," +
             (ev.source_op == kMeasureSource ? std::string("measure") : std::to_string(ev.source_op)) +
             "," + std::to_string(traj.residences[pt.event]) + "," + buf + "\n";
    }
  }
  return out;
}

}  // namespace npcfid
