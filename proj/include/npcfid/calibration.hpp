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
 * @file calibration.hpp
 * @brief Hardware calibration snapshots and their conversion to channel
 * parameters.
 *
 * File schema (units are explicit in the key names):
 * @code
 * { "snapshot_id": "...",
 *   "qubits": [ {"t1_us": 120.0, "t2_us": 80.0, "readout_error": 0.02} ],
 *   "gates":  [ {"name": "cz", "qubits": [0, 1], "error_rate": 0.008,
 *                "duration_ns": 68.0} ] }
 * @endcode
 * Times are held in seconds once loaded.
 */

#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "npcfid/circuit.hpp"
#include "npcfid/error.hpp"
#include "npcfid/json_ir.hpp"

namespace npcfid {

struct QubitCal {
  double t1 = 0.0;  // seconds
  double t2 = 0.0;  // seconds
  double readout_error = 0.0;

  /// T2 as used by the Kraus oracle, which needs t2 <= 2 t1.
  double oracle_t2() const { return std::min(t2, 2.0 * t1); }

  bool operator==(const QubitCal&) const = default;
};

struct GateCal {
  std::string name;
  std::vector<Qubit> qubits;
  double error_rate = 0.0;
  double duration = 0.0;  // seconds

  bool operator==(const GateCal&) const = default;
};

struct LoadReport {
  std::vector<std::string> warnings;
};

/// Converts a reported average gate error rate r of a d-dimensional gate to
/// the depolarizing probability p = r d / (d - 1). r = 0 gives the identity
/// channel and r = (d - 1)/d the fully depolarizing one.
inline double depolarizing_param(double error_rate, std::size_t dim) {
  if (dim != 2 && dim != 4) throw DomainError("depolarizing_param: dim must be 2 or 4");
  const double d = static_cast<double>(dim);
  if (!(error_rate >= 0.0)) throw DomainError("depolarizing_param: negative error rate");
  const double p = error_rate * d / (d - 1.0);
  if (p > 1.0) throw DomainError("depolarizing_param: error rate exceeds (d-1)/d");
  return p;
}

/// Channel parameters of one calibrated gate application.
struct GateNoise {
  double p = 0.0;
  double duration = 0.0;
  /// (t1, t2) of each physical qubit, in op order.
  std::vector<std::pair<double, double>> relaxation;
};

class Calibration {
 public:
  using Key = std::pair<std::string, std::vector<Qubit>>;

  std::string snapshot_id;
  std::vector<QubitCal> qubits;

  void add_gate(GateCal g) {
    Key key{g.name, g.qubits};
    gates_[std::move(key)] = std::move(g);
  }

  /// Exact entry, or for two-qubit gates the entry on the reversed pair.
  const GateCal* find_gate(const std::string& name, const std::vector<Qubit>& qs) const {
    if (auto it = gates_.find(Key{name, qs}); it != gates_.end()) return &it->second;
    if (qs.size() == 2) {
      if (auto it = gates_.find(Key{name, {qs[1], qs[0]}}); it != gates_.end()) return &it->second;
    }
    return nullptr;
  }

  const std::map<Key, GateCal>& gates() const { return gates_; }

  const QubitCal* find_qubit(Qubit q) const { return q < qubits.size() ? &qubits[q] : nullptr; }

  bool operator==(const Calibration&) const = default;

 private:
  std::map<Key, GateCal> gates_;
};

inline GateNoise lookup_gate(const Calibration& cal, const std::string& name,
                             const std::vector<Qubit>& qubits) {
  const GateCal* g = cal.find_gate(name, qubits);
  if (!g) throw MissingGateCal(name, qubits);
  GateNoise out;
  out.p = depolarizing_param(g->error_rate, std::size_t{1} << qubits.size());
  out.duration = g->duration;
  for (Qubit q : qubits) {
    const QubitCal* qc = cal.find_qubit(q);
    if (!qc) throw MissingGateCal(name, qubits);
    out.relaxation.emplace_back(qc->t1, qc->t2);
  }
  return out;
}

namespace cal_detail {

inline double probability(const nlohmann::json& v, const std::string& path) {
  const double x = json_detail::as_real(v, path);
  if (!(x >= 0.0 && x <= 1.0)) throw ValueError(path, "probability outside [0, 1]");
  return x;
}

inline double positive_time(const nlohmann::json& v, const std::string& path) {
  const double x = json_detail::as_real(v, path);
  if (!std::isfinite(x) || !(x > 0.0)) throw ValueError(path, "time must be finite and positive");
  return x;
}

}  // namespace cal_detail

inline Calibration calibration_from_json(const nlohmann::json& doc, LoadReport* report = nullptr) {
  using namespace json_detail;
  using namespace cal_detail;
  if (!doc.is_object()) throw SchemaError("", "expected an object");
  Calibration cal;
  cal.snapshot_id = as_string(member(doc, "snapshot_id", ""), "snapshot_id");

  const auto& qubits = member(doc, "qubits", "");
  if (!qubits.is_array()) throw SchemaError("qubits", "expected an array");
  for (std::size_t q = 0; q < qubits.size(); ++q) {
    const std::string path = "qubits[" + std::to_string(q) + "]";
    QubitCal qc;
    qc.t1 = positive_time(member(qubits[q], "t1_us", path), path + ".t1_us") * 1e-6;
    qc.t2 = positive_time(member(qubits[q], "t2_us", path), path + ".t2_us") * 1e-6;
    qc.readout_error = probability(member(qubits[q], "readout_error", path), path + ".readout_error");
    if (qc.t2 > 2.0 * qc.t1 && report) {
      report->warnings.push_back(path + ": t2 exceeds 2*t1; oracle uses t2 = 2*t1");
    }
    cal.qubits.push_back(qc);
  }

  const auto& gates = member(doc, "gates", "");
  if (!gates.is_array()) throw SchemaError("gates", "expected an array");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const std::string path = "gates[" + std::to_string(i) + "]";
    GateCal g;
    g.name = as_string(member(gates[i], "name", path), path + ".name");
    const auto& qs = member(gates[i], "qubits", path);
    if (!qs.is_array() || qs.empty() || qs.size() > 2) {
      throw SchemaError(path + ".qubits", "expected one or two qubit indices");
    }
    for (std::size_t k = 0; k < qs.size(); ++k) {
      g.qubits.push_back(as_index(qs[k], path + ".qubits[" + std::to_string(k) + "]"));
    }
    if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1]) {
      throw SchemaError(path + ".qubits", "qubits must be distinct");
    }
    g.error_rate = probability(member(gates[i], "error_rate", path), path + ".error_rate");
    const double d = static_cast<double>(std::size_t{1} << g.qubits.size());
    if (!(g.error_rate < (d - 1.0) / d)) {
      throw ValueError(path + ".error_rate", "must be below (d-1)/d");
    }
    const double ns = as_real(member(gates[i], "duration_ns", path), path + ".duration_ns");
    if (!std::isfinite(ns) || ns < 0.0) throw ValueError(path + ".duration_ns", "must be finite and >= 0");
    g.duration = ns * 1e-9;
    cal.add_gate(std::move(g));
  }
  return cal;
}

inline Calibration load_calibration(std::string_view text, LoadReport* report = nullptr) {
  return calibration_from_json(json_detail::parse_document(text), report);
}

inline nlohmann::json calibration_to_json(const Calibration& cal) {
  using nlohmann::json;
  json qubits = json::array();
  for (const QubitCal& q : cal.qubits) {
    qubits.push_back({{"t1_us", q.t1 * 1e6}, {"t2_us", q.t2 * 1e6}, {"readout_error", q.readout_error}});
  }
  json gates = json::array();
  for (const auto& [key, g] : cal.gates()) {
    gates.push_back({{"name", g.name},
                     {"qubits", g.qubits},
                     {"error_rate", g.error_rate},
                     {"duration_ns", g.duration * 1e9}});
  }
  return {{"snapshot_id", cal.snapshot_id}, {"qubits", qubits}, {"gates", gates}};
}

inline std::string serialize_calibration(const Calibration& cal, int indent = -1) {
  return calibration_to_json(cal).dump(indent);
}

}  // namespace npcfid
