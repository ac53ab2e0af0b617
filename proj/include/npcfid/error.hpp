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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace npcfid {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed circuit text. Line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t col, std::string expected)
      : Error("syntax error at " + std::to_string(line) + ":" +
              std::to_string(col) + ": expected " + expected),
        line_(line),
        col_(col),
        expected_(std::move(expected)) {}

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t col_;
  std::string expected_;
};

class UnknownGate : public Error {
 public:
  explicit UnknownGate(std::string name)
      : Error("unknown gate '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class IndexOutOfRange : public Error {
 public:
  IndexOutOfRange(std::string what, std::size_t index, std::size_t bound)
      : Error(what + " index " + std::to_string(index) +
              " out of range (size " + std::to_string(bound) + ")"),
        index_(index),
        bound_(bound) {}
  std::size_t index() const { return index_; }
  std::size_t bound() const { return bound_; }

 private:
  std::size_t index_;
  std::size_t bound_;
};

/// JSON document does not match the expected schema. `path` names the
/// offending member, e.g. "ops[3].qubits".
class SchemaError : public Error {
 public:
  SchemaError(std::string path, std::string reason)
      : Error("schema error at '" + path + "': " + reason),
        path_(std::move(path)),
        reason_(std::move(reason)) {}
  const std::string& path() const { return path_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string path_;
  std::string reason_;
};

/// A field holds a value outside its physical range.
class ValueError : public Error {
 public:
  ValueError(std::string field, const std::string& reason)
      : Error("invalid value for '" + field + "': " + reason),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class MissingGateCal : public Error {
 public:
  MissingGateCal(std::string name, std::vector<std::size_t> qubits)
      : Error("no calibration for gate '" + name + "' on " + render(qubits)),
        name_(std::move(name)),
        qubits_(std::move(qubits)) {}
  const std::string& name() const { return name_; }
  const std::vector<std::size_t>& qubits() const { return qubits_; }

  static std::string render(const std::vector<std::size_t>& qubits) {
    std::string out = "[";
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(qubits[i]);
    }
    return out + "]";
  }

 private:
  std::string name_;
  std::vector<std::size_t> qubits_;
};

class MissingReadoutCal : public Error {
 public:
  explicit MissingReadoutCal(std::size_t qubit)
      : Error("no readout calibration for physical qubit " +
              std::to_string(qubit)),
        qubit_(qubit) {}
  std::size_t qubit() const { return qubit_; }

 private:
  std::size_t qubit_;
};

class UnknownUnitary : public Error {
 public:
  explicit UnknownUnitary(const std::string& name)
      : Error("no unitary known for gate '" + name + "'") {}
};

/// Circuit exceeds the density-matrix oracle's qubit cap.
class TooLarge : public Error {
 public:
  TooLarge(std::size_t qubits, std::size_t cap)
      : Error("circuit has " + std::to_string(qubits) +
              " physical qubits, oracle cap is " + std::to_string(cap)),
        qubits_(qubits),
        cap_(cap) {}
  std::size_t qubits() const { return qubits_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t qubits_;
  std::size_t cap_;
};

}  // namespace npcfid
