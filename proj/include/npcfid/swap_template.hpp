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

#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "npcfid/circuit.hpp"
#include "npcfid/json_ir.hpp"

namespace npcfid {

/// Native-gate realization of a routing SWAP. Qubit indices are relative:
/// 0 is the segment's first physical qubit, 1 the second.
struct SwapTemplate {
  struct Op {
    std::string name;
    std::vector<Qubit> qubits;
    std::vector<double> params;
  };
  std::vector<Op> ops;

  /// SWAP as three CNOTs, each CNOT(c, t) realized on a CZ-native device as
  /// RZ(pi/2) SX RZ(pi/2) on t, CZ(c, t), RZ(pi/2) SX RZ(pi/2) on t.
  static SwapTemplate cz_native() {
    SwapTemplate t;
    constexpr double kHalfPi = std::numbers::pi / 2;
    auto hadamard = [&](Qubit q) {
      t.ops.push_back({"rz", {q}, {kHalfPi}});
      t.ops.push_back({"sx", {q}, {}});
      t.ops.push_back({"rz", {q}, {kHalfPi}});
    };
    auto cnot = [&](Qubit c, Qubit tq) {
      hadamard(tq);
      t.ops.push_back({"cz", {c, tq}, {}});
      hadamard(tq);
    };
    cnot(0, 1);
    cnot(1, 0);
    cnot(0, 1);
    return t;
  }

  /// SWAP as three native CX gates.
  static SwapTemplate cx_native() {
    SwapTemplate t;
    t.ops = {{"cx", {0, 1}, {}}, {"cx", {1, 0}, {}}, {"cx", {0, 1}, {}}};
    return t;
  }

  static const SwapTemplate& default_template() {
    static const SwapTemplate t = cz_native();
    return t;
  }

  /// Concrete ops on physical qubits (first, second).
  std::vector<GateOp> expand(Qubit first, Qubit second) const {
    std::vector<GateOp> out;
    out.reserve(ops.size());
    for (const Op& op : ops) {
      GateOp g{op.name, {}, op.params, std::nullopt};
      for (Qubit r : op.qubits) g.qubits.push_back(r == 0 ? first : second);
      out.push_back(std::move(g));
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const Op& op : ops) {
      arr.push_back({{"name", op.name}, {"qubits", op.qubits}, {"params", op.params}});
    }
    return {{"ops", arr}};
  }

  static SwapTemplate from_json(const nlohmann::json& doc) {
    using namespace json_detail;
    const auto& arr = member(doc, "ops", "");
    if (!arr.is_array() || arr.empty()) throw SchemaError("ops", "expected a non-empty array");
    SwapTemplate t;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "ops[" + std::to_string(i) + "]";
      Op op;
      op.name = as_string(member(arr[i], "name", path), path + ".name");
      const auto& qs = member(arr[i], "qubits", path);
      if (!qs.is_array() || qs.empty() || qs.size() > 2) {
        throw SchemaError(path + ".qubits", "expected one or two relative indices");
      }
      for (std::size_t k = 0; k < qs.size(); ++k) {
        const std::size_t r = as_index(qs[k], path + ".qubits");
        if (r > 1) throw SchemaError(path + ".qubits", "relative index must be 0 or 1");
        op.qubits.push_back(r);
      }
      if (op.qubits.size() == 2 && op.qubits[0] == op.qubits[1]) {
        throw SchemaError(path + ".qubits", "qubits must be distinct");
      }
      if (auto it = arr[i].find("params"); it != arr[i].end()) {
        if (!it->is_array()) throw SchemaError(path + ".params", "expected an array");
        for (const auto& v : *it) op.params.push_back(as_real(v, path + ".params"));
      }
      t.ops.push_back(std::move(op));
    }
    return t;
  }

  static SwapTemplate parse(std::string_view text) {
    return from_json(json_detail::parse_document(text));
  }
};

/// Native ops realizing one SWAP segment: the template expansion for a
/// placeholder pair, or the segment's own ops when already decomposed.
inline std::vector<GateOp> segment_ops(const CompiledCircuit& c, const Step& s,
                                       const SwapTemplate& tmpl) {
  if (s.placeholder) {
    return tmpl.expand(c.ops[s.first].qubits[0], c.ops[s.first + 1].qubits[0]);
  }
  std::vector<GateOp> out(c.ops.begin() + static_cast<std::ptrdiff_t>(s.first),
                          c.ops.begin() + static_cast<std::ptrdiff_t>(s.last));
  for (GateOp& op : out) op.tag.reset();
  return out;
}

}  // namespace npcfid
