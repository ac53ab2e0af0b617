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
 * @file oracle.hpp
 * @brief Dense density-matrix simulator used as ground truth.
 *
 * Basis index bit q holds qubit q (qubit 0 is the least significant bit).
 * Gate matrices use the textbook ordering in which the op's first qubit is
 * the most significant local bit, so CX(c, t) is [[1,0,0,0],[0,1,0,0],
 * [0,0,0,1],[0,0,1,0]] for qubits = {c, t}.
 *
 * Noise for one op is applied as: ideal unitary, depolarizing channel on the
 * op's qubits, thermal relaxation on each of those qubits, using the same
 * calibration parameters the noise proxy circuit records.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "npcfid/calibration.hpp"
#include "npcfid/circuit.hpp"
#include "npcfid/error.hpp"
#include "npcfid/swap_template.hpp"

namespace npcfid {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class DensityMatrix {
 public:
  DensityMatrix() : DensityMatrix(0) {}

  /// |0...0><0...0| on n qubits.
  explicit DensityMatrix(std::size_t n) : n_(n), data_(Matrix::Zero(dim_of(n), dim_of(n))) {
    data_(0, 0) = 1.0;
  }

  DensityMatrix(std::size_t n, Matrix data) : n_(n), data_(std::move(data)) {
    if (data_.rows() != static_cast<Eigen::Index>(dim_of(n)) || data_.cols() != data_.rows()) {
      throw DimensionMismatch("density matrix shape does not match qubit count");
    }
  }

  static DensityMatrix from_pure(const Vector& psi) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < static_cast<std::size_t>(psi.size())) ++n;
    if ((std::size_t{1} << n) != static_cast<std::size_t>(psi.size())) {
      throw DimensionMismatch("state vector length is not a power of two");
    }
    return DensityMatrix(n, psi * psi.adjoint());
  }

  static DensityMatrix maximally_mixed(std::size_t n) {
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    return DensityMatrix(n, Matrix::Identity(d, d) / static_cast<double>(d));
  }

  std::size_t num_qubits() const { return n_; }
  std::size_t dim() const { return dim_of(n_); }
  const Matrix& data() const { return data_; }
  Matrix& data() { return data_; }
  Complex operator()(std::size_t r, std::size_t c) const {
    return data_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  double trace() const { return data_.trace().real(); }
  double purity() const { return data_.cwiseAbs2().sum(); }

  double hermiticity_error() const { return (data_ - data_.adjoint()).cwiseAbs().maxCoeff(); }

  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(data_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  static std::size_t dim_of(std::size_t n) { return std::size_t{1} << n; }

 private:
  std::size_t n_;
  Matrix data_;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline BlochVector bloch_vector(const DensityMatrix& dm) {
  if (dm.num_qubits() != 1) throw DimensionMismatch("Bloch vector needs a single-qubit state");
  const Matrix& m = dm.data();
  return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

inline DensityMatrix from_bloch(const BlochVector& r) {
  Matrix m(2, 2);
  m << Complex(0.5 * (1 + r.z), 0), Complex(0.5 * r.x, -0.5 * r.y), Complex(0.5 * r.x, 0.5 * r.y),
      Complex(0.5 * (1 - r.z), 0);
  return DensityMatrix(1, m);
}

// ---------------------------------------------------------------------------
// Kernels

namespace oracle_detail {

inline std::size_t qubit_mask(const std::vector<Qubit>& qubits) {
  std::size_t mask = 0;
  for (Qubit q : qubits) mask |= std::size_t{1} << q;
  return mask;
}

/// Offsets of every local basis pattern, first listed qubit most significant.
inline std::vector<std::size_t> local_offsets(const std::vector<Qubit>& qubits) {
  const std::size_t k = qubits.size();
  std::vector<std::size_t> off(std::size_t{1} << k, 0);
  for (std::size_t local = 0; local < off.size(); ++local) {
    for (std::size_t j = 0; j < k; ++j) {
      if (local >> (k - 1 - j) & 1) off[local] |= std::size_t{1} << qubits[j];
    }
  }
  return off;
}

inline void check_qubits(const DensityMatrix& dm, const std::vector<Qubit>& qubits) {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] >= dm.num_qubits()) throw DimensionMismatch("qubit index exceeds state size");
    for (std::size_t j = 0; j < i; ++j) {
      if (qubits[i] == qubits[j]) throw DimensionMismatch("repeated qubit index");
    }
  }
}

/// m <- U m on the listed qubits.
inline void apply_left(Matrix& m, const std::vector<Qubit>& qubits, const Matrix& u) {
  const std::size_t mask = qubit_mask(qubits);
  const auto off = local_offsets(qubits);
  const std::size_t d = off.size();
  const auto dim = static_cast<std::size_t>(m.rows());
  std::vector<Complex> in(d);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (std::size_t base = 0; base < dim; ++base) {
      if (base & mask) continue;
      for (std::size_t a = 0; a < d; ++a) in[a] = m(static_cast<Eigen::Index>(base | off[a]), c);
      for (std::size_t a = 0; a < d; ++a) {
        Complex acc = 0.0;
        for (std::size_t b = 0; b < d; ++b) acc += u(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) * in[b];
        m(static_cast<Eigen::Index>(base | off[a]), c) = acc;
      }
    }
  }
}

/// m <- m U^dagger on the listed qubits.
inline void apply_right_adjoint(Matrix& m, const std::vector<Qubit>& qubits, const Matrix& u) {
  const std::size_t mask = qubit_mask(qubits);
  const auto off = local_offsets(qubits);
  const std::size_t d = off.size();
  const auto dim = static_cast<std::size_t>(m.cols());
  const Matrix uc = u.conjugate();
  std::vector<Complex> in(d);
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & mask) continue;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (std::size_t a = 0; a < d; ++a) in[a] = m(r, static_cast<Eigen::Index>(base | off[a]));
      for (std::size_t a = 0; a < d; ++a) {
        Complex acc = 0.0;
        for (std::size_t b = 0; b < d; ++b) acc += in[b] * uc(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        m(r, static_cast<Eigen::Index>(base | off[a])) = acc;
      }
    }
  }
}

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace oracle_detail

/// rho <- U rho U^dagger with U acting on the listed qubits.
inline void apply_matrix(DensityMatrix& dm, const std::vector<Qubit>& qubits, const Matrix& u) {
  oracle_detail::check_qubits(dm, qubits);
  if (u.rows() != static_cast<Eigen::Index>(std::size_t{1} << qubits.size()) || u.cols() != u.rows()) {
    throw DimensionMismatch("operator size does not match qubit count");
  }
  oracle_detail::apply_left(dm.data(), qubits, u);
  oracle_detail::apply_right_adjoint(dm.data(), qubits, u);
}

/// rho <- sum_k K_k rho K_k^dagger.
inline void apply_kraus(DensityMatrix& dm, const std::vector<Qubit>& qubits,
                        const std::vector<Matrix>& kraus) {
  oracle_detail::check_qubits(dm, qubits);
  Matrix acc = Matrix::Zero(dm.data().rows(), dm.data().cols());
  for (const Matrix& k : kraus) {
    Matrix term = dm.data();
    oracle_detail::apply_left(term, qubits, k);
    oracle_detail::apply_right_adjoint(term, qubits, k);
    acc += term;
  }
  dm.data() = std::move(acc);
}

/// Unitary of a named gate. Covers the usual IBM-style native sets.
inline Matrix gate_unitary(const std::string& name, const std::vector<double>& params,
                           std::size_t arity) {
  using oracle_detail::mat2;
  const Complex i(0.0, 1.0);
  const double s = std::numbers::sqrt2 / 2.0;
  auto need = [&](std::size_t k, std::size_t np) {
    if (arity != k || params.size() != np) throw UnknownUnitary(name + " with this arity/parameters");
  };
  auto diag4 = [](Complex a, Complex b, Complex c, Complex d) {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    m(3, 3) = d;
    return m;
  };
  if (name == "id") { need(1, 0); return Matrix::Identity(2, 2); }
  if (name == "x") { need(1, 0); return mat2(0, 1, 1, 0); }
  if (name == "y") { need(1, 0); return mat2(0, -i, i, 0); }
  if (name == "z") { need(1, 0); return mat2(1, 0, 0, -1); }
  if (name == "h") { need(1, 0); return mat2(s, s, s, -s); }
  if (name == "s") { need(1, 0); return mat2(1, 0, 0, i); }
  if (name == "sdg") { need(1, 0); return mat2(1, 0, 0, -i); }
  if (name == "t") { need(1, 0); return mat2(1, 0, 0, std::exp(i * std::numbers::pi / 4.0)); }
  if (name == "tdg") { need(1, 0); return mat2(1, 0, 0, std::exp(-i * std::numbers::pi / 4.0)); }
  if (name == "sx") { need(1, 0); return 0.5 * mat2(1.0 + i, 1.0 - i, 1.0 - i, 1.0 + i); }
  if (name == "sxdg") { need(1, 0); return 0.5 * mat2(1.0 - i, 1.0 + i, 1.0 + i, 1.0 - i); }
  if (name == "rx") {
    need(1, 1);
    const double c = std::cos(params[0] / 2), sn = std::sin(params[0] / 2);
    return mat2(c, -i * sn, -i * sn, c);
  }
  if (name == "ry") {
    need(1, 1);
    const double c = std::cos(params[0] / 2), sn = std::sin(params[0] / 2);
    return mat2(c, -sn, sn, c);
  }
  if (name == "rz") {
    need(1, 1);
    return mat2(std::exp(-i * params[0] / 2.0), 0, 0, std::exp(i * params[0] / 2.0));
  }
  if (name == "p" || name == "u1") {
    need(1, 1);
    return mat2(1, 0, 0, std::exp(i * params[0]));
  }
  if (name == "cx") {
    need(2, 0);
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
  }
  if (name == "cz") { need(2, 0); return diag4(1, 1, 1, -1); }
  if (name == "rzz") {
    need(2, 1);
    const Complex a = std::exp(-i * params[0] / 2.0), b = std::exp(i * params[0] / 2.0);
    return diag4(a, b, b, a);
  }
  if (name == "swap") {
    need(2, 0);
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
    return m;
  }
  throw UnknownUnitary(name);
}

inline void apply_unitary(DensityMatrix& dm, const GateOp& gate) {
  apply_matrix(dm, gate.qubits, gate_unitary(gate.name, gate.params, gate.qubits.size()));
}

/// rho <- (1 - p) rho + p (I_d/d (x) Tr_Q rho) on the subsystem Q.
inline void apply_depolarizing(DensityMatrix& dm, const std::vector<Qubit>& qubits, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("depolarizing probability outside [0, 1]");
  oracle_detail::check_qubits(dm, qubits);
  if (p == 0.0) return;
  const std::size_t mask = oracle_detail::qubit_mask(qubits);
  const auto off = oracle_detail::local_offsets(qubits);
  const double d = static_cast<double>(off.size());
  Matrix& m = dm.data();
  const std::size_t dim = dm.dim();
  for (std::size_t c = 0; c < dim; ++c) {
    if (c & mask) continue;
    for (std::size_t r = 0; r < dim; ++r) {
      if (r & mask) continue;
      Complex tr = 0.0;
      for (std::size_t o : off) tr += m(static_cast<Eigen::Index>(r | o), static_cast<Eigen::Index>(c | o));
      for (std::size_t a : off) {
        for (std::size_t b : off) {
          auto& v = m(static_cast<Eigen::Index>(r | a), static_cast<Eigen::Index>(c | b));
          v *= (1.0 - p);
          if (a == b) v += p * tr / d;
        }
      }
    }
  }
}

/// Amplitude damping toward |0> with gamma = 1 - exp(-t/T1), composed with
/// pure dephasing of rate 1/T2 - 1/(2 T1). Needs T2 <= 2 T1.
inline void apply_thermal(DensityMatrix& dm, Qubit qubit, double t, double t1, double t2) {
  if (!(t >= 0.0) || !(t1 > 0.0) || !(t2 > 0.0)) throw DomainError("thermal relaxation needs t >= 0, T1, T2 > 0");
  if (t2 > 2.0 * t1 * (1.0 + 1e-12)) throw DomainError("thermal relaxation needs T2 <= 2 T1");
  if (t == 0.0) return;
  using oracle_detail::mat2;
  const double gamma = 1.0 - std::exp(-t / t1);
  apply_kraus(dm, {qubit},
              {mat2(1, 0, 0, std::sqrt(1.0 - gamma)), mat2(0, std::sqrt(gamma), 0, 0)});
  // Remaining coherence decay exp(-t/T2) / exp(-t/(2 T1)) = 1 - 2q.
  const double rate = std::max(0.0, 1.0 / t2 - 0.5 / t1);
  const double q = 0.5 * (1.0 - std::exp(-t * rate));
  if (q > 0.0) {
    apply_kraus(dm, {qubit}, {std::sqrt(1.0 - q) * mat2(1, 0, 0, 1), std::sqrt(q) * mat2(1, 0, 0, -1)});
  }
}

// ---------------------------------------------------------------------------
// State functionals

/// Tr_{not keep}(rho). Output qubit j is input qubit keep[j].
inline DensityMatrix partial_trace(const DensityMatrix& dm, const std::vector<Qubit>& keep) {
  if (keep.empty()) throw DimensionMismatch("partial_trace: keep set is empty");
  oracle_detail::check_qubits(dm, keep);
  std::vector<Qubit> traced;
  for (Qubit q = 0; q < dm.num_qubits(); ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
  }
  auto embed = [](std::size_t local, const std::vector<Qubit>& qs) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < qs.size(); ++j) {
      if (local >> j & 1) idx |= std::size_t{1} << qs[j];
    }
    return idx;
  };
  const std::size_t dk = std::size_t{1} << keep.size();
  const std::size_t dt = std::size_t{1} << traced.size();
  std::vector<std::size_t> kept_idx(dk), traced_idx(dt);
  for (std::size_t a = 0; a < dk; ++a) kept_idx[a] = embed(a, keep);
  for (std::size_t r = 0; r < dt; ++r) traced_idx[r] = embed(r, traced);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t a = 0; a < dk; ++a) {
    for (std::size_t b = 0; b < dk; ++b) {
      Complex acc = 0.0;
      for (std::size_t r : traced_idx) acc += dm(kept_idx[a] | r, kept_idx[b] | r);
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  }
  return DensityMatrix(keep.size(), std::move(out));
}

inline Matrix partial_transpose(const DensityMatrix& dm, const std::vector<Qubit>& subset) {
  oracle_detail::check_qubits(dm, subset);
  const std::size_t mask = oracle_detail::qubit_mask(subset);
  const std::size_t dim = dm.dim();
  Matrix out(dm.data().rows(), dm.data().cols());
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const std::size_t r2 = (r & ~mask) | (c & mask);
      const std::size_t c2 = (c & ~mask) | (r & mask);
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = dm(r2, c2);
    }
  }
  return out;
}

/// (||rho^{T_S}||_1 - 1) / 2 for the partial transpose over `partition`.
inline double negativity(const DensityMatrix& dm, const std::vector<Qubit>& partition) {
  if (dm.num_qubits() < 2) throw DimensionMismatch("negativity needs at least two qubits");
  if (partition.empty() || partition.size() >= dm.num_qubits()) {
    throw DimensionMismatch("negativity partition must be a nonempty proper subset");
  }
  const Matrix pt = partial_transpose(dm, partition);
  Eigen::SelfAdjointEigenSolver<Matrix> es(pt, Eigen::EigenvaluesOnly);
  const double norm = es.eigenvalues().cwiseAbs().sum();
  return std::max(0.0, (norm - 1.0) / 2.0);
}

/// Hilbert-Schmidt overlap Tr(rho sigma).
inline double trace_inner(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.num_qubits() != b.num_qubits()) throw DimensionMismatch("trace_inner: qubit counts differ");
  // Tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (a.data().cwiseProduct(b.data().conjugate())).sum().real();
}

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2. When either state
/// is pure this equals the trace overlap, which is returned directly.
inline double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.num_qubits() != sigma.num_qubits()) throw DimensionMismatch("state_fidelity: qubit counts differ");
  constexpr double kPure = 1.0 - 1e-12;
  if (rho.purity() >= kPure || sigma.purity() >= kPure) {
    return std::clamp(trace_inner(rho, sigma), 0.0, 1.0);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.data());
  const double cutoff = 1e-14 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  Eigen::VectorXd roots = es.eigenvalues().unaryExpr([&](double v) { return v > cutoff ? std::sqrt(v) : 0.0; });
  const Matrix sqrt_rho = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
  Matrix inner = sqrt_rho * sigma.data() * sqrt_rho;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es2(inner, Eigen::EigenvaluesOnly);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < es2.eigenvalues().size(); ++k) {
    const double v = es2.eigenvalues()[k];
    if (v > cutoff) acc += std::sqrt(v);
  }
  return std::clamp(acc * acc, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Classical outcome distributions

/// Outcome probabilities keyed by bitstring. Character 0 is the most
/// significant (highest-index) classical bit.
struct Distribution {
  std::size_t width = 0;
  std::map<std::string, double> probs;

  double at(const std::string& bits) const {
    const auto it = probs.find(bits);
    return it == probs.end() ? 0.0 : it->second;
  }

  double total() const {
    double s = 0.0;
    for (const auto& [k, v] : probs) s += v;
    return s;
  }

  static std::string bitstring(std::size_t value, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t k = 0; k < width; ++k) {
      if (value >> k & 1) s[width - 1 - k] = '1';
    }
    return s;
  }
};

inline Distribution apply_readout_flip(const Distribution& dist, std::size_t bit, double e) {
  if (!(e >= 0.0 && e <= 1.0)) throw DomainError("readout error outside [0, 1]");
  if (bit >= dist.width) throw DimensionMismatch("readout bit exceeds distribution width");
  Distribution out;
  out.width = dist.width;
  const std::size_t pos = dist.width - 1 - bit;
  for (const auto& [bits, p] : dist.probs) {
    if (p * (1.0 - e) != 0.0) out.probs[bits] += p * (1.0 - e);
    if (p * e != 0.0) {
      std::string flipped = bits;
      flipped[pos] = flipped[pos] == '0' ? '1' : '0';
      out.probs[flipped] += p * e;
    }
  }
  return out;
}

inline double hellinger(const Distribution& p, const Distribution& q) {
  if (p.width != q.width) throw DimensionMismatch("hellinger: bit widths differ");
  double acc = 0.0;
  for (const auto& [k, v] : p.probs) {
    const double d = std::sqrt(v) - std::sqrt(q.at(k));
    acc += d * d;
  }
  for (const auto& [k, v] : q.probs) {
    if (!p.probs.count(k)) acc += v;
  }
  return std::clamp(std::sqrt(acc) / std::numbers::sqrt2, 0.0, 1.0);
}

inline double success_probability(const Distribution& p, const std::vector<std::string>& targets) {
  double acc = 0.0;
  for (const std::string& t : targets) {
    if (t.size() != p.width) throw DimensionMismatch("success_probability: target width differs");
    acc += p.at(t);
  }
  return acc;
}

inline nlohmann::json distribution_to_json(const Distribution& d) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [k, v] : d.probs) out[k] = v;
  return out;
}

/// Row-major interleaved (re, im) doubles, for debugging dumps.
inline std::vector<double> to_interleaved(const DensityMatrix& dm) {
  std::vector<double> out;
  out.reserve(2 * dm.dim() * dm.dim());
  for (std::size_t r = 0; r < dm.dim(); ++r) {
    for (std::size_t c = 0; c < dm.dim(); ++c) {
      out.push_back(dm(r, c).real());
      out.push_back(dm(r, c).imag());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random states

inline Vector haar_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(static_cast<Eigen::Index>(std::size_t{1} << n));
  for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = Complex(g(rng), g(rng));
  return v / v.norm();
}

/// rho = G G^dagger / Tr(G G^dagger) with complex Gaussian G.
inline DensityMatrix random_density_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
  Matrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = Complex(g(rng), g(rng));
  }
  Matrix rho = m * m.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(static_cast<std::size_t>(n), std::move(rho));
}

// ---------------------------------------------------------------------------
// Circuit simulation

inline constexpr std::size_t kDefaultOracleCap = 8;

struct OracleOptions {
  std::size_t cap = kDefaultOracleCap;
  const SwapTemplate* swap_template = nullptr;
};

struct OracleRun {
  DensityMatrix state;
  /// Measured outcomes after readout flips (noisy runs only).
  Distribution distribution;
  LayoutState layout;  // final residence of each logical qubit
};

namespace oracle_detail {

inline void run_op(DensityMatrix& dm, const GateOp& op, const Calibration* cal) {
  apply_unitary(dm, op);
  if (!cal) return;
  const GateOp* g = &op;
  const GateCal* entry = cal->find_gate(g->name, g->qubits);
  if (!entry) throw MissingGateCal(g->name, g->qubits);
  apply_depolarizing(dm, g->qubits, depolarizing_param(entry->error_rate, std::size_t{1} << g->qubits.size()));
  for (Qubit q : g->qubits) {
    const QubitCal* qc = cal->find_qubit(q);
    if (!qc) throw MissingGateCal(g->name, g->qubits);
    apply_thermal(dm, q, entry->duration, qc->t1, qc->oracle_t2());
  }
}

inline OracleRun simulate(const CompiledCircuit& c, const Calibration* cal, const OracleOptions& opts) {
  if (c.num_physical > opts.cap) throw TooLarge(c.num_physical, opts.cap);
  const SwapTemplate& tmpl = opts.swap_template ? *opts.swap_template : SwapTemplate::default_template();
  OracleRun run{DensityMatrix(c.num_physical), {}, LayoutState(c.initial_layout, c.num_physical)};
  for (const Step& s : schedule(c)) {
    if (s.kind == Step::Kind::kSwap) {
      for (const GateOp& op : segment_ops(c, s, tmpl)) run_op(run.state, op, cal);
      run.layout.swap_physical(s.a, s.b);
    } else {
      run_op(run.state, c.ops[s.first], cal);
    }
  }

  std::size_t width = 0;
  for (const auto& [l, bit] : c.measured) width = std::max(width, bit + 1);
  run.distribution.width = width;
  for (std::size_t idx = 0; idx < run.state.dim(); ++idx) {
    const double p = run.state(idx, idx).real();
    if (p <= 0.0) continue;
    std::size_t value = 0;
    for (const auto& [l, bit] : c.measured) {
      if (idx >> run.layout.physical_of(l) & 1) value |= std::size_t{1} << bit;
    }
    run.distribution.probs[Distribution::bitstring(value, width)] += p;
  }
  if (cal) {
    for (const auto& [l, bit] : c.measured) {
      const QubitCal* qc = cal->find_qubit(run.layout.physical_of(l));
      if (!qc) throw MissingReadoutCal(run.layout.physical_of(l));
      run.distribution = apply_readout_flip(run.distribution, bit, qc->readout_error);
    }
  }
  return run;
}

}  // namespace oracle_detail

inline OracleRun simulate_noisy(const CompiledCircuit& c, const Calibration& cal,
                                const OracleOptions& opts = {}) {
  return oracle_detail::simulate(c, &cal, opts);
}

inline OracleRun simulate_ideal(const CompiledCircuit& c, const OracleOptions& opts = {}) {
  return oracle_detail::simulate(c, nullptr, opts);
}

/// State fidelity restricted to the register that holds logical data at the
/// end of the circuit. Ancillas visited only by routing are traced out; with
/// no ancillas this is the full-register fidelity.
inline double logical_state_fidelity(const OracleRun& ideal, const OracleRun& noisy) {
  const std::vector<Qubit>& keep = ideal.layout.l2p();
  if (keep.size() == ideal.state.num_qubits()) return state_fidelity(ideal.state, noisy.state);
  return state_fidelity(partial_trace(ideal.state, keep), partial_trace(noisy.state, keep));
}

/// Tr(rho_ideal,l rho_noisy,l) for the reduced state of each logical qubit at
/// its final residence. Equals the probability of the correct bit when the
/// ideal output is a basis state.
inline std::vector<double> qubit_overlaps(const OracleRun& ideal, const OracleRun& noisy) {
  std::vector<double> out;
  for (Qubit l = 0; l < ideal.layout.l2p().size(); ++l) {
    const Qubit p = ideal.layout.physical_of(l);
    out.push_back(trace_inner(partial_trace(ideal.state, {p}), partial_trace(noisy.state, {p})));
  }
  return out;
}

}  // namespace npcfid
