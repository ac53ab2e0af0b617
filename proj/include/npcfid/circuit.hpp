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
 * @file circuit.hpp
 * @brief Compiled-circuit data model.
 *
 * A CompiledCircuit is an ordered list of native gate operations acting on
 * physical qubits, together with the initial logical-to-physical layout and
 * the logical measurement map. Routing SWAPs are kept as tagged segments:
 * a contiguous run of ops sharing one segment id and covering exactly two
 * physical qubits. A segment is either a placeholder pair (two one-qubit ops
 * named "swap", one per physical qubit) that is expanded by a decomposition
 * template downstream, or an explicit native decomposition.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "npcfid/error.hpp"

namespace npcfid {

using Qubit = std::size_t;

inline constexpr const char* kSwapName = "swap";

/// Routing annotation marking an op as part of a SWAP segment.
struct SwapTag {
  std::size_t segment = 0;
  Qubit partner = 0;

  bool operator==(const SwapTag&) const = default;
};

struct GateOp {
  std::string name;
  std::vector<Qubit> qubits;
  std::vector<double> params;
  std::optional<SwapTag> tag;

  bool operator==(const GateOp&) const = default;

  bool is_swap_placeholder() const { return name == kSwapName && tag; }
};

struct CompiledCircuit {
  std::size_t num_physical = 0;
  std::size_t num_logical = 0;
  /// Index is the logical qubit, value its initial physical qubit.
  std::vector<Qubit> initial_layout;
  std::vector<GateOp> ops;
  /// Logical qubit -> classical bit.
  std::map<Qubit, std::size_t> measured;

  bool operator==(const CompiledCircuit&) const = default;
};

/// Mutual logical<->physical residence maps.
class LayoutState {
 public:
  LayoutState() = default;

  LayoutState(const std::vector<Qubit>& initial_layout,
              std::size_t num_physical)
      : l2p_(initial_layout), p2l_(num_physical) {
    for (Qubit l = 0; l < l2p_.size(); ++l) {
      const Qubit p = l2p_[l];
      if (p >= num_physical) {
        throw IndexOutOfRange("physical qubit", p, num_physical);
      }
      if (p2l_[p]) {
        throw ValueError("initial_layout", "not injective");
      }
      p2l_[p] = l;
    }
  }

  Qubit physical_of(Qubit logical) const { return l2p_.at(logical); }
  std::optional<Qubit> logical_at(Qubit physical) const {
    return p2l_.at(physical);
  }

  /// Exchanges the residents of physical qubits i and j (either may be empty).
  void swap_physical(Qubit i, Qubit j) {
    std::swap(p2l_.at(i), p2l_.at(j));
    if (p2l_[i]) l2p_[*p2l_[i]] = i;
    if (p2l_[j]) l2p_[*p2l_[j]] = j;
  }

  const std::vector<Qubit>& l2p() const { return l2p_; }
  const std::vector<std::optional<Qubit>>& p2l() const { return p2l_; }

  /// True when l2p and p2l are inverse bijections on the mapped domain.
  bool consistent() const {
    std::size_t mapped = 0;
    for (Qubit p = 0; p < p2l_.size(); ++p) {
      if (!p2l_[p]) continue;
      ++mapped;
      if (*p2l_[p] >= l2p_.size() || l2p_[*p2l_[p]] != p) return false;
    }
    return mapped == l2p_.size();
  }

 private:
  std::vector<Qubit> l2p_;
  std::vector<std::optional<Qubit>> p2l_;
};

/// One scheduling unit: either a plain op or a whole SWAP segment.
struct Step {
  enum class Kind { kGate, kSwap };
  Kind kind = Kind::kGate;
  std::size_t first = 0;  // index into ops
  std::size_t last = 0;   // one past the final op
  std::size_t segment = 0;
  Qubit a = 0;  // segment qubits, a < b
  Qubit b = 0;
  bool placeholder = false;
};

/// Checks the structural invariants of a circuit and groups its ops into
/// steps. Throws ValueError (or IndexOutOfRange) on violations.
inline std::vector<Step> schedule(const CompiledCircuit& c) {
  if (c.num_logical > c.num_physical) {
    throw ValueError("num_logical", "exceeds num_physical");
  }
  if (c.initial_layout.size() != c.num_logical) {
    throw ValueError("initial_layout", "length differs from num_logical");
  }
  LayoutState check(c.initial_layout, c.num_physical);
  for (const auto& [l, bit] : c.measured) {
    if (l >= c.num_logical) throw IndexOutOfRange("logical qubit", l, c.num_logical);
  }

  std::vector<Step> steps;
  std::set<std::size_t> closed_segments;
  std::size_t i = 0;
  while (i < c.ops.size()) {
    const GateOp& op = c.ops[i];
    if (op.qubits.empty() || op.qubits.size() > 2) {
      throw ValueError("ops[" + std::to_string(i) + "].qubits",
                       "an op acts on one or two qubits");
    }
    for (Qubit q : op.qubits) {
      if (q >= c.num_physical) throw IndexOutOfRange("physical qubit", q, c.num_physical);
    }
    if (op.qubits.size() == 2 && op.qubits[0] == op.qubits[1]) {
      throw ValueError("ops[" + std::to_string(i) + "].qubits", "qubits must be distinct");
    }
    for (double v : op.params) {
      if (!std::isfinite(v)) {
        throw ValueError("ops[" + std::to_string(i) + "].params", "not finite");
      }
    }
    if (!op.tag) {
      if (op.name == kSwapName) {
        throw ValueError("ops[" + std::to_string(i) + "]",
                         "swap ops must carry a swap-segment tag");
      }
      steps.push_back({Step::Kind::kGate, i, i + 1});
      ++i;
      continue;
    }

    const std::size_t id = op.tag->segment;
    if (closed_segments.count(id)) {
      throw ValueError("ops[" + std::to_string(i) + "].tag", "swap segment is not contiguous");
    }
    std::size_t j = i;
    std::set<Qubit> covered;
    std::size_t placeholders = 0;
    while (j < c.ops.size() && c.ops[j].tag && c.ops[j].tag->segment == id) {
      const GateOp& s = c.ops[j];
      if (s.qubits.empty() || s.qubits.size() > 2) {
        throw ValueError("ops[" + std::to_string(j) + "].qubits",
                         "an op acts on one or two qubits");
      }
      for (Qubit q : s.qubits) {
        if (q >= c.num_physical) throw IndexOutOfRange("physical qubit", q, c.num_physical);
        covered.insert(q);
      }
      if (s.qubits.size() == 2 && s.qubits[0] == s.qubits[1]) {
        throw ValueError("ops[" + std::to_string(j) + "].qubits", "qubits must be distinct");
      }
      covered.insert(s.tag->partner);
      if (s.name == kSwapName) ++placeholders;
      ++j;
    }
    if (covered.size() != 2) {
      throw ValueError("ops[" + std::to_string(i) + "].tag",
                       "swap segment must cover exactly two physical qubits");
    }
    const Qubit a = *covered.begin();
    const Qubit b = *covered.rbegin();
    for (std::size_t k = i; k < j; ++k) {
      const GateOp& s = c.ops[k];
      const Qubit partner = s.tag->partner;
      const bool ok = s.qubits.size() == 1
                          ? partner != s.qubits[0]
                          : (partner == s.qubits[0] || partner == s.qubits[1]);
      if (!ok) {
        throw ValueError("ops[" + std::to_string(k) + "].tag", "partner does not match the segment");
      }
    }
    const bool placeholder = placeholders > 0;
    if (placeholder) {
      const bool pair = placeholders == 2 && j - i == 2 &&
                        c.ops[i].qubits.size() == 1 && c.ops[i + 1].qubits.size() == 1 &&
                        c.ops[i].qubits[0] == c.ops[i + 1].tag->partner &&
                        c.ops[i + 1].qubits[0] == c.ops[i].tag->partner;
      if (!pair) {
        throw ValueError("ops[" + std::to_string(i) + "].tag",
                         "swap placeholders must form a matched pair");
      }
    }
    closed_segments.insert(id);
    Step st{Step::Kind::kSwap, i, j, id, a, b, placeholder};
    steps.push_back(st);
    i = j;
  }
  return steps;
}

/// Layout after every SWAP segment has been applied.
inline LayoutState final_layout(const CompiledCircuit& c) {
  LayoutState layout(c.initial_layout, c.num_physical);
  for (const Step& s : schedule(c)) {
    if (s.kind == Step::Kind::kSwap) layout.swap_physical(s.a, s.b);
  }
  return layout;
}

/// Number of gates; a placeholder SWAP pair counts as one gate.
inline std::size_t gate_count(const CompiledCircuit& c) {
  std::size_t n = 0;
  for (const Step& s : schedule(c)) {
    n += s.placeholder ? 1 : s.last - s.first;
  }
  return n;
}

/// Longest chain of ops ordered by shared physical qubits.
inline std::size_t depth(const CompiledCircuit& c) {
  std::vector<std::size_t> frontier(c.num_physical, 0);
  std::size_t best = 0;
  auto place = [&](const std::vector<Qubit>& qubits) {
    std::size_t level = 0;
    for (Qubit q : qubits) level = std::max(level, frontier[q]);
    ++level;
    for (Qubit q : qubits) frontier[q] = level;
    best = std::max(best, level);
  };
  for (const Step& s : schedule(c)) {
    if (s.placeholder) {
      place({s.a, s.b});
      continue;
    }
    for (std::size_t k = s.first; k < s.last; ++k) place(c.ops[k].qubits);
  }
  return best;
}

/// Identity-layout circuit with every logical qubit on its own index.
inline CompiledCircuit make_circuit(std::size_t num_qubits) {
  CompiledCircuit c;
  c.num_physical = num_qubits;
  c.num_logical = num_qubits;
  c.initial_layout.resize(num_qubits);
  for (Qubit q = 0; q < num_qubits; ++q) c.initial_layout[q] = q;
  return c;
}

/// Appends a placeholder SWAP pair on physical qubits a and b.
inline void append_swap(CompiledCircuit& c, Qubit a, Qubit b, std::size_t segment) {
  c.ops.push_back({kSwapName, {a}, {}, SwapTag{segment, b}});
  c.ops.push_back({kSwapName, {b}, {}, SwapTag{segment, a}});
}

/// Next unused segment id.
inline std::size_t next_segment_id(const CompiledCircuit& c) {
  std::size_t next = 0;
  for (const GateOp& op : c.ops) {
    if (op.tag) next = std::max(next, op.tag->segment + 1);
  }
  return next;
}

}  // namespace npcfid
