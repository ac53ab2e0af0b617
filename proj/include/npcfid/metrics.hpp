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

// Baseline reliability metrics and the metric vector used for ranking.

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "npcfid/calibration.hpp"
#include "npcfid/circuit.hpp"
#include "npcfid/npc.hpp"
#include "npcfid/oracle.hpp"

namespace npcfid {

enum class MetricId {
  kProxyFidelity,
  kEsp,
  kGateCount,
  kDepth,
  kSuccessProb,
  kDistSimilarity,
  kStateFidelity,
  kMlPredictor,  // reserved, never produced
};

inline const char* metric_name(MetricId m) {
  switch (m) {
    case MetricId::kProxyFidelity: return "proxy_fidelity";
    case MetricId::kEsp: return "esp";
    case MetricId::kGateCount: return "gate_count";
    case MetricId::kDepth: return "depth";
    case MetricId::kSuccessProb: return "success_prob";
    case MetricId::kDistSimilarity: return "dist_similarity";
    case MetricId::kStateFidelity: return "state_fidelity";
    case MetricId::kMlPredictor: return "ml_predictor";
  }
  return "?";
}

inline bool higher_is_better(MetricId m) {
  return m != MetricId::kGateCount && m != MetricId::kDepth;
}

struct MetricValue {
  MetricId metric;
  double value = 0.0;
  bool higher_is_better() const { return npcfid::higher_is_better(metric); }
};

/// Estimated success probability: product of (1 - r) over every executed
/// native op (SWAP segments expanded) times (1 - e) over measured qubits.
inline double esp(const CompiledCircuit& c, const Calibration& cal,
                  const SwapTemplate& tmpl = SwapTemplate::default_template()) {
  double prob = 1.0;
  auto factor = [&](const GateOp& op) {
    const GateCal* g = cal.find_gate(op.name, op.qubits);
    if (!g) throw MissingGateCal(op.name, op.qubits);
    prob *= 1.0 - g->error_rate;
  };
  LayoutState layout(c.initial_layout, c.num_physical);
  for (const Step& s : schedule(c)) {
    if (s.kind == Step::Kind::kSwap) {
      for (const GateOp& op : segment_ops(c, s, tmpl)) factor(op);
      layout.swap_physical(s.a, s.b);
    } else {
      factor(c.ops[s.first]);
    }
  }
  for (const auto& [l, bit] : c.measured) {
    const QubitCal* qc = cal.find_qubit(layout.physical_of(l));
    if (!qc) throw MissingReadoutCal(layout.physical_of(l));
    prob *= 1.0 - qc->readout_error;
  }
  return prob;
}

inline double dist_similarity(const Distribution& p, const Distribution& q) {
  return 1.0 - hellinger(p, q);
}

/// Ground-truth quantities from one ideal and one noisy oracle run.
struct OracleComparison {
  double state_fidelity = 0.0;
  /// Present when some qubit is measured.
  std::optional<double> dist_similarity;
  /// Present when the ideal outcome is concentrated on at most two bitstrings
  /// (basis-state or GHZ-like outputs).
  std::optional<double> success_prob;
  std::vector<std::string> targets;
  OracleRun ideal;
  OracleRun noisy;
};

inline OracleComparison compare_with_oracle(const CompiledCircuit& c, const Calibration& cal,
                                            const OracleOptions& opts = {}) {
  OracleComparison out;
  out.ideal = simulate_ideal(c, opts);
  out.noisy = simulate_noisy(c, cal, opts);
  out.state_fidelity = logical_state_fidelity(out.ideal, out.noisy);
  if (out.ideal.distribution.width > 0) {
    out.dist_similarity = dist_similarity(out.ideal.distribution, out.noisy.distribution);
    for (const auto& [bits, p] : out.ideal.distribution.probs) {
      if (p > 1e-9) out.targets.push_back(bits);
    }
    if (out.targets.size() <= 2) {
      out.success_prob = success_probability(out.noisy.distribution, out.targets);
    } else {
      out.targets.clear();
    }
  }
  return out;
}

struct MetricVector {
  std::vector<MetricValue> values;
  std::vector<MetricId> skipped;

  std::optional<double> get(MetricId m) const {
    for (const auto& v : values) {
      if (v.metric == m) return v.value;
    }
    return std::nullopt;
  }
};

/// Every metric available for the circuit. Oracle-derived metrics are listed
/// in `skipped` when no oracle comparison is supplied or when they do not
/// apply to the circuit's output.
inline MetricVector score_all(const CompiledCircuit& c, const Calibration& cal,
                              const OracleComparison* oracle = nullptr,
                              const EvalOptions& opts = {}) {
  const SwapTemplate& tmpl = opts.swap_template ? *opts.swap_template : SwapTemplate::default_template();
  MetricVector mv;
  mv.values.push_back({MetricId::kProxyFidelity, evaluate(c, cal, opts).circuit});
  mv.values.push_back({MetricId::kEsp, esp(c, cal, tmpl)});
  mv.values.push_back({MetricId::kGateCount, static_cast<double>(gate_count(c))});
  mv.values.push_back({MetricId::kDepth, static_cast<double>(depth(c))});
  if (!oracle) {
    mv.skipped = {MetricId::kSuccessProb, MetricId::kDistSimilarity, MetricId::kStateFidelity};
    return mv;
  }
  if (oracle->success_prob) {
    mv.values.push_back({MetricId::kSuccessProb, *oracle->success_prob});
  } else {
    mv.skipped.push_back(MetricId::kSuccessProb);
  }
  if (oracle->dist_similarity) {
    mv.values.push_back({MetricId::kDistSimilarity, *oracle->dist_similarity});
  } else {
    mv.skipped.push_back(MetricId::kDistSimilarity);
  }
  mv.values.push_back({MetricId::kStateFidelity, oracle->state_fidelity});
  return mv;
}

/// CSV rows keyed by circuit id and metric id.
inline std::string metrics_to_csv(const std::vector<std::pair<std::string, MetricVector>>& rows) {
  std::string out = "circuit_id,metric,value,higher_is_better\n";
  char buf[64];
  for (const auto& [id, mv] : rows) {
    for (const MetricValue& v : mv.values) {
      std::snprintf(buf, sizeof(buf), "%.17g", v.value);
      out += id + "," + metric_name(v.metric) + "," + buf + "," + (v.higher_is_better() ? "1" : "0") + "\n";
    }
  }
  return out;
}

}  // namespace npcfid
