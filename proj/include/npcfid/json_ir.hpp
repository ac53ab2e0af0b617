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

// Canonical JSON form of a CompiledCircuit:
//
// {
//   "num_physical": 5, "num_logical": 3,
//   "initial_layout": [2, 0, 4],
//   "ops": [ {"name": "rz", "qubits": [2], "params": [0.5], "tag": null},
//            {"name": "swap", "qubits": [0], "params": [],
//             "tag": {"segment": 0, "partner": 4}}, ... ],
//   "measured": {"0": 0, "2": 1}
// }

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "npcfid/circuit.hpp"
#include "npcfid/error.hpp"

namespace npcfid {

namespace json_detail {

using nlohmann::json;

inline const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

inline std::size_t as_index(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected a non-negative integer");
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  const auto i = v.get<long long>();
  if (i < 0) throw SchemaError(path, "expected a non-negative integer");
  return static_cast<std::size_t>(i);
}

inline double as_real(const json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected a number");
  return v.get<double>();
}

inline const std::string& as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get_ref<const std::string&>();
}

inline json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace json_detail

inline nlohmann::json circuit_to_json(const CompiledCircuit& c) {
  using nlohmann::json;
  json ops = json::array();
  for (const GateOp& op : c.ops) {
    json tag = nullptr;
    if (op.tag) tag = {{"segment", op.tag->segment}, {"partner", op.tag->partner}};
    ops.push_back({{"name", op.name}, {"qubits", op.qubits}, {"params", op.params}, {"tag", tag}});
  }
  json measured = json::object();
  for (const auto& [l, bit] : c.measured) measured[std::to_string(l)] = bit;
  return {{"num_physical", c.num_physical},
          {"num_logical", c.num_logical},
          {"initial_layout", c.initial_layout},
          {"ops", ops},
          {"measured", measured}};
}

inline CompiledCircuit circuit_from_json(const nlohmann::json& doc) {
  using namespace json_detail;
  if (!doc.is_object()) throw SchemaError("", "expected an object");
  CompiledCircuit c;
  c.num_physical = as_index(member(doc, "num_physical", ""), "num_physical");
  c.num_logical = as_index(member(doc, "num_logical", ""), "num_logical");
  if (c.num_logical > c.num_physical) throw SchemaError("num_logical", "exceeds num_physical");

  const json& layout = member(doc, "initial_layout", "");
  if (!layout.is_array()) throw SchemaError("initial_layout", "expected an array");
  if (layout.size() != c.num_logical) throw SchemaError("initial_layout", "length differs from num_logical");
  std::vector<bool> used(c.num_physical, false);
  for (std::size_t l = 0; l < layout.size(); ++l) {
    const std::string path = "initial_layout[" + std::to_string(l) + "]";
    const std::size_t p = as_index(layout[l], path);
    if (p >= c.num_physical) throw SchemaError(path, "physical index out of range");
    if (used[p]) throw SchemaError("initial_layout", "not injective");
    used[p] = true;
    c.initial_layout.push_back(p);
  }

  const json& ops = member(doc, "ops", "");
  if (!ops.is_array()) throw SchemaError("ops", "expected an array");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string path = "ops[" + std::to_string(i) + "]";
    const json& o = ops[i];
    GateOp op;
    op.name = as_string(member(o, "name", path), path + ".name");
    if (op.name.empty()) throw SchemaError(path + ".name", "empty gate name");
    const json& qs = member(o, "qubits", path);
    if (!qs.is_array() || qs.empty() || qs.size() > 2) {
      throw SchemaError(path + ".qubits", "expected one or two qubit indices");
    }
    for (std::size_t k = 0; k < qs.size(); ++k) {
      op.qubits.push_back(as_index(qs[k], path + ".qubits[" + std::to_string(k) + "]"));
    }
    if (const auto it = o.find("params"); it != o.end()) {
      if (!it->is_array()) throw SchemaError(path + ".params", "expected an array");
      for (std::size_t k = 0; k < it->size(); ++k) {
        op.params.push_back(as_real((*it)[k], path + ".params[" + std::to_string(k) + "]"));
      }
    }
    if (const auto it = o.find("tag"); it != o.end() && !it->is_null()) {
      const std::string tpath = path + ".tag";
      op.tag = SwapTag{as_index(member(*it, "segment", tpath), tpath + ".segment"),
                       as_index(member(*it, "partner", tpath), tpath + ".partner")};
    }
    c.ops.push_back(std::move(op));
  }

  const json& measured = member(doc, "measured", "");
  if (!measured.is_object()) throw SchemaError("measured", "expected an object");
  for (const auto& [key, value] : measured.items()) {
    const std::string path = "measured." + key;
    std::size_t l = 0;
    try {
      std::size_t used_chars = 0;
      l = std::stoul(key, &used_chars);
      if (used_chars != key.size() || key.empty() || key[0] == '-' || key[0] == '+') {
        throw std::invalid_argument(key);
      }
    } catch (const std::exception&) {
      throw SchemaError(path, "key must be a logical qubit index");
    }
    c.measured[l] = as_index(value, path);
  }

  try {
    schedule(c);
  } catch (const IndexOutOfRange& e) {
    throw SchemaError("ops", e.what());
  } catch (const ValueError& e) {
    throw SchemaError(e.field(), e.what());
  }
  return c;
}

/// Parses the JSON IR. Structural violations are reported as SchemaError.
inline CompiledCircuit parse_json_ir(std::string_view text) {
  return circuit_from_json(json_detail::parse_document(text));
}

inline std::string serialize_json_ir(const CompiledCircuit& c, int indent = -1) {
  return circuit_to_json(c).dump(indent);
}

}  // namespace npcfid
