// Copyright 2026 The matchgraph Authors
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

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "matchgraph/common.hpp"
#include "matchgraph/layout.hpp"
#include "matchgraph/matchgate.hpp"
#include "matchgraph/pauli.hpp"

namespace matchgraph {

// Brute-force statevector simulator.  Qubit 0 is the most significant bit
// of the amplitude index; that convention lives here and nowhere else.
inline constexpr int kMaxDenseQubits = 20;

class StateVector {
 public:
  explicit StateVector(int n) : n_(n) {
    require(n >= 1, ErrorCode::IndexOutOfRange, "need at least one qubit");
    require(n <= kMaxDenseQubits, ErrorCode::TooManyQubits,
            "dense oracle is capped at 20 qubits");
    amps_.assign(size_t(1) << n, complex(0, 0));
    amps_[0] = 1;
  }

  static StateVector from_product(const ProductState& in) {
    StateVector s(in.n());
    in.validate();
    s.amps_.assign(s.amps_.size(), complex(0, 0));
    for (size_t x = 0; x < s.amps_.size(); ++x) {
      complex amp = 1;
      for (int q = 0; q < s.n_; ++q) {
        int bit = (x >> (s.n_ - 1 - q)) & 1;
        amp *= in.qubits[q][bit];
        if (amp == complex(0, 0)) break;
      }
      s.amps_[x] = amp;
    }
    return s;
  }

  int n() const { return n_; }
  const std::vector<complex>& amplitudes() const { return amps_; }
  std::vector<complex>& amplitudes() { return amps_; }

  size_t bit_mask(int qubit) const {
    require(qubit >= 0 && qubit < n_, ErrorCode::TargetOutOfRange,
            "qubit index out of range");
    return size_t(1) << (n_ - 1 - qubit);
  }

  double norm() const {
    double s = 0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }

  void apply_1q(const Matrix2& u, int q) {
    require(is_unitary(u, kRoundTripTol), ErrorCode::NotUnitary,
            "gate is not unitary");
    size_t m = bit_mask(q);
    for (size_t x = 0; x < amps_.size(); ++x) {
      if (x & m) continue;
      complex a0 = amps_[x], a1 = amps_[x | m];
      amps_[x] = u(0, 0) * a0 + u(0, 1) * a1;
      amps_[x | m] = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }

  /// U on the ordered pair (u, v): u is the first tensor factor.
  void apply_2q(const Matrix4& g, int u, int v) {
    require(u != v, ErrorCode::DuplicateTarget, "duplicate target");
    require(is_unitary4(g, kRoundTripTol), ErrorCode::NotUnitary,
            "gate is not unitary");
    size_t mu = bit_mask(u), mv = bit_mask(v);
    for (size_t x = 0; x < amps_.size(); ++x) {
      if ((x & mu) || (x & mv)) continue;
      size_t i00 = x, i01 = x | mv, i10 = x | mu, i11 = x | mu | mv;
      Eigen::Vector4cd in(amps_[i00], amps_[i01], amps_[i10], amps_[i11]);
      Eigen::Vector4cd out = g * in;
      amps_[i00] = out(0);
      amps_[i01] = out(1);
      amps_[i10] = out(2);
      amps_[i11] = out(3);
    }
  }

  void apply_pauli(const PauliString& p) {
    require(p.n() == n_, ErrorCode::SizeMismatch, "pauli size mismatch");
    std::vector<complex> out(amps_.size());
    for (size_t x = 0; x < amps_.size(); ++x) {
      size_t y = x;
      complex f = p.phase();
      for (int q = 0; q < n_; ++q) {
        size_t m = size_t(1) << (n_ - 1 - q);
        int bit = (x & m) ? 1 : 0;
        switch (p.letters[q]) {
          case PauliLetter::I: break;
          case PauliLetter::X: y ^= m; break;
          case PauliLetter::Y:
            y ^= m;
            f *= bit ? complex(0, -1) : complex(0, 1);
            break;
          case PauliLetter::Z:
            if (bit) f = -f;
            break;
        }
      }
      out[y] += f * amps_[x];
    }
    amps_ = std::move(out);
  }

  complex inner(const StateVector& other) const {
    require(other.n_ == n_, ErrorCode::SizeMismatch, "size mismatch");
    complex s = 0;
    for (size_t x = 0; x < amps_.size(); ++x)
      s += std::conj(amps_[x]) * other.amps_[x];
    return s;
  }

 private:
  int n_;
  std::vector<complex> amps_;
};

inline StateVector run_circuit(const PhysicalCircuit& c, const ProductState& in) {
  require(c.graph.n() <= kMaxDenseQubits, ErrorCode::TooManyQubits,
          "circuit too large for the dense oracle");
  require(in.n() == c.graph.n(), ErrorCode::SizeMismatch,
          "input state size does not match circuit");
  StateVector s = StateVector::from_product(in);
  for (const auto& g : c.gates) s.apply_2q(g.matrix(), g.edge.first, g.edge.second);
  return s;
}

inline double expectation_z(const StateVector& s, int k) {
  size_t m = s.bit_mask(k);
  double v = 0;
  const auto& amps = s.amplitudes();
  for (size_t x = 0; x < amps.size(); ++x)
    v += ((x & m) ? -1.0 : 1.0) * std::norm(amps[x]);
  return v;
}

inline complex expectation_pauli(const StateVector& s, const PauliString& p) {
  StateVector t = s;
  t.apply_pauli(p);
  return s.inner(t);
}

// ---------------------------------------------------------------------------
// Encoded action: the logical matrix a physical circuit implements on a
// layout's code space.

struct EncodedAction {
  Eigen::MatrixXcd matrix;  // 2^m x 2^m
  double leakage = 0;       // max over basis inputs of 1 - projected norm
};

namespace detail {

inline ProductState embed_logical_basis(const Layout& layout, uint64_t bits) {
  ProductState in(layout.graph.n());
  for (int q = 0; q < layout.logical_count(); ++q) {
    int b = (bits >> (layout.logical_count() - 1 - q)) & 1;
    auto [m1, m2] = layout.pairs[q];
    int first = b, second = layout.encoding == Encoding::EvenParity ? b : 1 - b;
    in.qubits[m1] = {complex(1 - first, 0), complex(first, 0)};
    in.qubits[m2] = {complex(1 - second, 0), complex(second, 0)};
  }
  return in;
}

}  // namespace detail

/// Runs the circuit on every encoded basis state and projects back onto
/// the encoded basis.  Throws LeakageExceeded when more than `leak_tol`
/// of the norm leaves the code space (pass infinity to only report).
inline EncodedAction encoded_action(const PhysicalCircuit& c,
                                    const Layout& layout,
                                    double leak_tol = kOracleTol) {
  layout.validate();
  require(c.graph.n() <= kMaxDenseQubits, ErrorCode::TooManyQubits,
          "physical circuit too large for the oracle");
  int m = layout.logical_count();
  require(m <= 16, ErrorCode::TooManyQubits, "too many logical qubits");
  uint64_t dim = uint64_t(1) << m;

  // The encoded basis states are computational product states, so the
  // projection is a set of amplitude lookups.
  std::vector<size_t> basis_index(dim);
  for (uint64_t b = 0; b < dim; ++b) {
    ProductState e = detail::embed_logical_basis(layout, b);
    size_t idx = 0;
    for (int q = 0; q < layout.graph.n(); ++q) {
      idx <<= 1;
      if (std::abs(e.qubits[q][1] - complex(1, 0)) < 0.5) idx |= 1;
    }
    basis_index[b] = idx;
  }

  EncodedAction out;
  out.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  for (uint64_t col = 0; col < dim; ++col) {
    StateVector s = run_circuit(c, detail::embed_logical_basis(layout, col));
    double captured = 0;
    for (uint64_t row = 0; row < dim; ++row) {
      complex amp = s.amplitudes()[basis_index[row]];
      out.matrix(row, col) = amp;
      captured += std::norm(amp);
    }
    out.leakage = std::max(out.leakage, 1.0 - captured);
  }
  require(out.leakage <= leak_tol, ErrorCode::LeakageExceeded,
          "circuit leaks out of the encoded subspace");
  return out;
}

/// Global-phase-insensitive closeness: |tr(U^dagger V)| / dim, which is 1
/// exactly when U = V up to a phase.
inline double phase_insensitive_fidelity(const Eigen::MatrixXcd& u,
                                         const Eigen::MatrixXcd& v) {
  require(u.rows() == v.rows() && u.cols() == v.cols(), ErrorCode::SizeMismatch,
          "matrix dimensions differ");
  return std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
}

}  // namespace matchgraph
