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

#include <set>
#include <string>
#include <vector>

#include "npcfid/calibration.hpp"
#include "npcfid/circuit.hpp"
#include "npcfid/swap_template.hpp"

namespace npcfid {

struct ValidationIssue {
  enum class Kind { kMissingGateCal, kMissingReadoutCal, kMissingQubitCal };
  Kind kind;
  std::string name;  // gate name, empty for qubit issues
  std::vector<Qubit> qubits;

  bool operator==(const ValidationIssue&) const = default;

  std::string to_string() const {
    switch (kind) {
      case Kind::kMissingGateCal:
        return "MissingGateCal(\"" + name + "\"," + MissingGateCal::render(qubits) + ")";
      case Kind::kMissingReadoutCal:
        return "MissingReadoutCal(" + std::to_string(qubits.at(0)) + ")";
      case Kind::kMissingQubitCal:
        return "MissingQubitCal(" + std::to_string(qubits.at(0)) + ")";
    }
    return {};
  }
};

/// Lists every gate and readout the calibration cannot parameterize. Each
/// distinct issue is reported once, in first-occurrence order.
inline std::vector<ValidationIssue> validate_against(
    const CompiledCircuit& circuit, const Calibration& cal,
    const SwapTemplate& tmpl = SwapTemplate::default_template()) {
  std::vector<ValidationIssue> issues;
  auto add = [&](ValidationIssue issue) {
    for (const auto& i : issues) {
      if (i == issue) return;
    }
    issues.push_back(std::move(issue));
  };
  auto check_op = [&](const GateOp& op) {
    if (!cal.find_gate(op.name, op.qubits)) {
      add({ValidationIssue::Kind::kMissingGateCal, op.name, op.qubits});
    }
    for (Qubit q : op.qubits) {
      if (!cal.find_qubit(q)) add({ValidationIssue::Kind::kMissingQubitCal, {}, {q}});
    }
  };

  LayoutState layout(circuit.initial_layout, circuit.num_physical);
  for (const Step& s : schedule(circuit)) {
    if (s.kind == Step::Kind::kGate) {
      check_op(circuit.ops[s.first]);
      continue;
    }
    for (const GateOp& op : segment_ops(circuit, s, tmpl)) check_op(op);
    layout.swap_physical(s.a, s.b);
  }
  for (const auto& [logical, bit] : circuit.measured) {
    const Qubit p = layout.physical_of(logical);
    if (!cal.find_qubit(p)) add({ValidationIssue::Kind::kMissingReadoutCal, {}, {p}});
  }
  return issues;
}

}  // namespace npcfid
