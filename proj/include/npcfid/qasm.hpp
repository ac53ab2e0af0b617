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

// Reader and writer for the QASM-2-like subset:
//
//   OPENQASM 2.0;                      (optional)
//   include "qelib1.inc";              (accepted and ignored)
//   qreg q[n];  creg c[m];
//   name(p1, ..., pk) q[i], q[j];      any lowercase gate, 1 or 2 qubits
//   swap q[i], q[j];                   routing SWAP segment
//   measure q[i] -> c[j];
//   barrier ...;                       discarded
//
// The register is read as physical qubits with an identity initial layout.
// Measurements are terminal: no op may touch a qubit after it is measured.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "npcfid/circuit.hpp"
#include "npcfid/error.hpp"

namespace npcfid {

namespace qasm_detail {

enum class Tok { kIdent, kNumber, kString, kSymbol, kArrow, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  double number = 0.0;
  std::size_t line = 1;
  std::size_t col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) return t;
    const char ch = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        advance();
      }
      t.kind = Tok::kIdent;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      return number(t);
    }
    if (ch == '"') {
      advance();
      const std::size_t start = pos_;
      while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') advance();
      if (pos_ >= src_.size() || src_[pos_] != '"') {
        throw SyntaxError(t.line, t.col, "closing '\"'");
      }
      t.kind = Tok::kString;
      t.text = std::string(src_.substr(start, pos_ - start));
      advance();
      return t;
    }
    if (ch == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      advance();
      advance();
      t.kind = Tok::kArrow;
      t.text = "->";
      return t;
    }
    static constexpr std::string_view kSymbols = ";,[]()+-*/";
    if (kSymbols.find(ch) != std::string_view::npos) {
      advance();
      t.kind = Tok::kSymbol;
      t.text = std::string(1, ch);
      return t;
    }
    throw SyntaxError(t.line, t.col, "token (unexpected character)");
  }

 private:
  Token number(Token t) {
    const std::size_t start = pos_;
    bool digits = false;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      advance();
      digits = true;
    }
    if (pos_ < src_.size() && src_[pos_] == '.') {
      advance();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        advance();
        digits = true;
      }
    }
    if (!digits) throw SyntaxError(t.line, t.col, "number");
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
      bool exp_digits = false;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        advance();
        exp_digits = true;
      }
      if (!exp_digits) throw SyntaxError(line_, col_, "exponent digits");
    }
    t.kind = Tok::kNumber;
    t.text = std::string(src_.substr(start, pos_ - start));
    t.number = std::strtod(t.text.c_str(), nullptr);
    return t;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char ch = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else if (ch == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

inline bool is_gate_identifier(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char ch : s) {
    const auto u = static_cast<unsigned char>(ch);
    if (!(std::islower(u) || std::isdigit(u) || ch == '_')) return false;
  }
  return true;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) { bump(); }

  CompiledCircuit run() {
    if (is_ident("OPENQASM")) {
      bump();
      if (cur_.kind != Tok::kNumber) fail("version number");
      bump();
      expect(";");
    }
    while (cur_.kind != Tok::kEnd) statement();
    if (!qreg_) {
      // An empty program is a zero-qubit circuit.
      return CompiledCircuit{};
    }
    return std::move(circuit_);
  }

 private:
  void statement() {
    if (cur_.kind != Tok::kIdent) fail("statement");
    const Token head = cur_;
    const std::string& kw = head.text;
    if (kw == "include") {
      bump();
      if (cur_.kind != Tok::kString) fail("file name string");
      bump();
      expect(";");
    } else if (kw == "qreg") {
      bump();
      declare(true);
    } else if (kw == "creg") {
      bump();
      declare(false);
    } else if (kw == "barrier") {
      bump();
      while (cur_.kind != Tok::kEnd && !is_symbol(";")) bump();
      expect(";");
    } else if (kw == "measure") {
      bump();
      measure();
    } else if (kw == "if") {
      fail("statement (classical conditionals are not supported)");
    } else if (kw == "gate" || kw == "opaque") {
      fail("statement (gate definitions are not supported)");
    } else if (kw == "OPENQASM") {
      fail("statement (OPENQASM header must come first)");
    } else {
      gate();
    }
  }

  void declare(bool quantum) {
    if (cur_.kind != Tok::kIdent) fail("register name");
    const std::string name = cur_.text;
    bump();
    expect("[");
    const std::size_t size = integer();
    expect("]");
    expect(";");
    if (quantum) {
      if (qreg_) fail_at(prev_, "single quantum register");
      qreg_ = name;
      circuit_ = make_circuit(size);
      layout_ = LayoutState(circuit_.initial_layout, size);
      measured_phys_.assign(size, false);
    } else {
      if (creg_) fail_at(prev_, "single classical register");
      creg_ = name;
      creg_size_ = size;
    }
  }

  void gate() {
    const Token head = cur_;
    if (!is_gate_identifier(head.text)) throw UnknownGate(head.text);
    bump();
    std::vector<double> params;
    if (is_symbol("(")) {
      bump();
      if (!is_symbol(")")) {
        params.push_back(expr());
        while (is_symbol(",")) {
          bump();
          params.push_back(expr());
        }
      }
      expect(")");
    }
    std::vector<Qubit> qubits{qarg()};
    while (is_symbol(",")) {
      bump();
      qubits.push_back(qarg());
    }
    expect(";");
    if (qubits.size() > 2) fail_at(head, "at most two qubit arguments");
    if (qubits.size() == 2 && qubits[0] == qubits[1]) fail_at(head, "distinct qubit arguments");
    for (Qubit q : qubits) {
      if (measured_phys_[q]) fail_at(head, "no operation after measurement");
    }
    if (head.text == kSwapName) {
      if (qubits.size() != 2 || !params.empty()) fail_at(head, "swap with two qubits and no parameters");
      append_swap(circuit_, qubits[0], qubits[1], next_segment_++);
      layout_.swap_physical(qubits[0], qubits[1]);
      return;
    }
    circuit_.ops.push_back({head.text, std::move(qubits), std::move(params), std::nullopt});
  }

  void measure() {
    const Token head = prev_;
    const Qubit q = qarg();
    if (cur_.kind != Tok::kArrow) fail("'->'");
    bump();
    if (!creg_) fail("declared classical register");
    if (cur_.kind != Tok::kIdent || cur_.text != *creg_) fail("classical register '" + *creg_ + "'");
    bump();
    expect("[");
    const std::size_t bit = integer();
    expect("]");
    expect(";");
    if (bit >= creg_size_) throw IndexOutOfRange("classical bit", bit, creg_size_);
    if (measured_phys_[q]) fail_at(head, "each qubit measured at most once");
    measured_phys_[q] = true;
    const auto logical = layout_.logical_at(q);
    if (logical) circuit_.measured[*logical] = bit;
  }

  Qubit qarg() {
    if (!qreg_) fail("qreg declaration before use");
    if (cur_.kind != Tok::kIdent || cur_.text != *qreg_) fail("quantum register '" + *qreg_ + "'");
    bump();
    expect("[");
    const std::size_t idx = integer();
    expect("]");
    if (idx >= circuit_.num_physical) throw IndexOutOfRange("qubit", idx, circuit_.num_physical);
    return idx;
  }

  std::size_t integer() {
    if (cur_.kind != Tok::kNumber) fail("non-negative integer");
    const double v = cur_.number;
    if (v != std::floor(v) || v < 0 || v > 1e6 ||
        cur_.text.find_first_of(".eE") != std::string::npos) {
      fail("non-negative integer");
    }
    bump();
    return static_cast<std::size_t>(v);
  }

  double expr() {
    double v = term();
    while (is_symbol("+") || is_symbol("-")) {
      const bool plus = cur_.text == "+";
      bump();
      const double rhs = term();
      v = plus ? v + rhs : v - rhs;
    }
    return v;
  }

  double term() {
    double v = factor();
    while (is_symbol("*") || is_symbol("/")) {
      const bool mul = cur_.text == "*";
      bump();
      const double rhs = factor();
      v = mul ? v * rhs : v / rhs;
    }
    return v;
  }

  double factor() {
    if (++nesting_ > 64) fail("shallower expression");
    struct Guard {
      int& n;
      ~Guard() { --n; }
    } guard{nesting_};
    if (is_symbol("-")) {
      bump();
      return -factor();
    }
    if (is_symbol("+")) {
      bump();
      return factor();
    }
    if (cur_.kind == Tok::kNumber) {
      const double v = cur_.number;
      bump();
      return v;
    }
    if (is_ident("pi")) {
      bump();
      return std::numbers::pi;
    }
    if (is_symbol("(")) {
      bump();
      const double v = expr();
      expect(")");
      return v;
    }
    fail("expression");
  }

  bool is_symbol(const char* s) const { return cur_.kind == Tok::kSymbol && cur_.text == s; }
  bool is_ident(const char* s) const { return cur_.kind == Tok::kIdent && cur_.text == s; }

  void expect(const char* s) {
    if (!is_symbol(s)) fail(std::string("'") + s + "'");
    bump();
  }

  void bump() {
    prev_ = cur_;
    cur_ = lex_.next();
  }

  [[noreturn]] void fail(const std::string& expected) const { fail_at(cur_, expected); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& expected) {
    throw SyntaxError(t.line, t.col, expected);
  }

  Lexer lex_;
  Token cur_;
  Token prev_;
  CompiledCircuit circuit_;
  LayoutState layout_;
  std::optional<std::string> qreg_;
  std::optional<std::string> creg_;
  std::size_t creg_size_ = 0;
  std::vector<bool> measured_phys_;
  std::size_t next_segment_ = 0;
  int nesting_ = 0;
};

}  // namespace qasm_detail

/// Parses circuit text in the supported QASM subset.
inline CompiledCircuit parse_qasm(std::string_view text) {
  return qasm_detail::Parser(text).run();
}

/// Writes a circuit back as QASM. Only identity-layout circuits whose SWAPs
/// are placeholder segments can be expressed in the subset.
inline std::string to_qasm(const CompiledCircuit& c) {
  const auto steps = schedule(c);
  if (c.num_logical != c.num_physical) {
    throw ValueError("num_logical", "QASM output needs num_logical == num_physical");
  }
  for (Qubit l = 0; l < c.num_logical; ++l) {
    if (c.initial_layout[l] != l) throw ValueError("initial_layout", "QASM output needs the identity layout");
  }
  std::size_t bits = 0;
  for (const auto& [l, bit] : c.measured) bits = std::max(bits, bit + 1);

  std::string out = "OPENQASM 2.0;\nqreg q[" + std::to_string(c.num_physical) + "];\n";
  if (bits) out += "creg c[" + std::to_string(bits) + "];\n";
  char buf[64];
  for (const Step& s : steps) {
    if (s.kind == Step::Kind::kSwap) {
      if (!s.placeholder) throw ValueError("ops", "decomposed swap segments have no QASM form");
      const Qubit first = c.ops[s.first].qubits[0];
      const Qubit second = c.ops[s.first + 1].qubits[0];
      out += "swap q[" + std::to_string(first) + "], q[" + std::to_string(second) + "];\n";
      continue;
    }
    const GateOp& op = c.ops[s.first];
    out += op.name;
    if (!op.params.empty()) {
      out += "(";
      for (std::size_t k = 0; k < op.params.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g", op.params[k]);
        out += (k ? "," : "") + std::string(buf);
      }
      out += ")";
    }
    for (std::size_t k = 0; k < op.qubits.size(); ++k) {
      out += (k ? ", q[" : " q[") + std::to_string(op.qubits[k]) + "]";
    }
    out += ";\n";
  }
  const LayoutState layout = final_layout(c);
  for (const auto& [l, bit] : c.measured) {
    out += "measure q[" + std::to_string(layout.physical_of(l)) + "] -> c[" +
           std::to_string(bit) + "];\n";
  }
  return out;
}

}  // namespace npcfid
