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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matchgraph/common.hpp"
#include "matchgraph/graph.hpp"

namespace matchgraph {

using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;

inline bool is_unitary(const Matrix2& u, double tol = kStructuralTol) {
  return (u.adjoint() * u - Matrix2::Identity()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_unitary4(const Matrix4& u, double tol = kStructuralTol) {
  return (u.adjoint() * u - Matrix4::Identity()).cwiseAbs().maxCoeff() <= tol;
}

namespace pauli_mats {
inline Matrix2 I() { return Matrix2::Identity(); }
inline Matrix2 X() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix2 Y() {
  Matrix2 m;
  m << 0, complex(0, -1), complex(0, 1), 0;
  return m;
}
inline Matrix2 Z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}
inline Matrix2 P() {  // diag(1, i), the phase picked up when i-swapping past |0>
  Matrix2 m;
  m << 1, 0, 0, complex(0, 1);
  return m;
}
}  // namespace pauli_mats

inline Matrix4 kron2(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

/// Assembles G(A,B): A on the even-parity block spanned by |00>, |11>,
/// B on the odd block spanned by |01>, |10>.
inline Matrix4 compose_blocks(const Matrix2& a, const Matrix2& b) {
  Matrix4 g = Matrix4::Zero();
  g(0, 0) = a(0, 0);
  g(0, 3) = a(0, 1);
  g(3, 0) = a(1, 0);
  g(3, 3) = a(1, 1);
  g(1, 1) = b(0, 0);
  g(1, 2) = b(0, 1);
  g(2, 1) = b(1, 0);
  g(2, 2) = b(1, 1);
  return g;
}

/// Two-qubit gate G(A,B) with det A = det B, bound to an ordered edge.
/// The first vertex of the edge is the first tensor factor.
struct Matchgate {
  Matrix2 A;
  Matrix2 B;
  std::pair<int, int> edge;

  Matrix4 matrix() const { return compose_blocks(A, B); }
};

inline Matchgate make_matchgate(const Matrix2& a, const Matrix2& b,
                                std::pair<int, int> edge) {
  require(is_unitary(a), ErrorCode::NotUnitary, "A is not unitary");
  require(is_unitary(b), ErrorCode::NotUnitary, "B is not unitary");
  complex da = a.determinant(), db = b.determinant();
  require(std::abs(da - db) <= kStructuralTol, ErrorCode::DeterminantMismatch,
          "det A != det B");
  require(edge.first != edge.second, ErrorCode::DuplicateTarget,
          "edge endpoints must differ");
  return Matchgate{a, b, edge};
}

struct MatchgateDecomposition {
  bool matchgate = false;
  Matrix2 A;
  Matrix2 B;
};

/// True iff U has the G(A,B) block form with det A = det B (tolerance
/// 1e-10); A and B are extracted when the form holds.
inline MatchgateDecomposition is_matchgate(const Matrix4& u) {
  require(is_unitary4(u), ErrorCode::NotUnitary, "input is not unitary");
  double off = 0;
  static const int even_idx[2] = {0, 3};
  static const int odd_idx[2] = {1, 2};
  for (int i : even_idx)
    for (int j : odd_idx) off = std::max({off, std::abs(u(i, j)), std::abs(u(j, i))});
  MatchgateDecomposition d;
  if (off > kRoundTripTol) return d;
  d.A << u(0, 0), u(0, 3), u(3, 0), u(3, 3);
  d.B << u(1, 1), u(1, 2), u(2, 1), u(2, 2);
  if (std::abs(d.A.determinant() - d.B.determinant()) > kRoundTripTol) return d;
  d.matchgate = true;
  return d;
}

// ---------------------------------------------------------------------------
// Named gates.

inline Matrix2 rotation_x_block(double a) {
  Matrix2 m;
  m << std::cos(a), complex(0, std::sin(a)), complex(0, std::sin(a)),
      std::cos(a);
  return m;
}

inline Matrix4 fswap_matrix() {
  return compose_blocks(pauli_mats::Z(), pauli_mats::X());
}

/// exp(i (a/2) (XX + YY)): identity on the even block, an X rotation by a
/// on the odd block.  a = pi/2 gives the i-swap G(I, iX).
inline Matrix4 xy_matrix(double a) {
  return compose_blocks(pauli_mats::I(), rotation_x_block(a));
}

inline Matrix4 iswap_matrix() { return xy_matrix(M_PI / 2); }
inline Matrix4 iswap_dagger_matrix() { return xy_matrix(-M_PI / 2); }

inline Matrix4 g_aa_matrix(const Matrix2& a) {
  require(is_unitary(a), ErrorCode::NotUnitary, "A is not unitary");
  return compose_blocks(a, a);
}

inline Matrix4 xy_hamiltonian_matrix() {
  return kron2(pauli_mats::X(), pauli_mats::X()) +
         kron2(pauli_mats::Y(), pauli_mats::Y());
}

struct NamedGate {
  Matrix4 matrix;
  bool matchgate;  // swap, cz and p_phase are provided for oracle use only
};

/// Looks up a gate by name.  "xy" needs an angle, "g_aa" a 2x2 unitary.
/// p_phase is P = diag(1, i) on the first qubit of the edge.
inline NamedGate named_gate(const std::string& name,
                            std::optional<double> param = std::nullopt,
                            std::optional<Matrix2> mat = std::nullopt) {
  using namespace pauli_mats;
  if (name == "fswap") return {fswap_matrix(), true};
  if (name == "iswap") return {iswap_matrix(), true};
  if (name == "iswap_dagger") return {iswap_dagger_matrix(), true};
  if (name == "xy") {
    require(param.has_value(), ErrorCode::MissingParameter, "xy needs an angle");
    return {xy_matrix(*param), true};
  }
  if (name == "g_aa") {
    require(mat.has_value(), ErrorCode::MissingParameter,
            "g_aa needs a 2x2 unitary");
    return {g_aa_matrix(*mat), true};
  }
  if (name == "swap") return {compose_blocks(I(), X()), false};
  if (name == "cz") {
    Matrix4 m = Matrix4::Identity();
    m(3, 3) = -1;
    return {m, false};
  }
  if (name == "p_phase") return {kron2(P(), I()), false};
  if (name == "xy_hamiltonian") return {xy_hamiltonian_matrix(), false};
  fail(ErrorCode::UnknownGate, "unknown gate '" + name + "'");
}

// ---------------------------------------------------------------------------
// Generating Hamiltonian.

/// Coefficients of H = a_zu Z_u + a_zv Z_v + a_xx XX + a_yy YY + a_xy XY
/// + a_yx YX + a_id I such that exp(iH) equals the gate exactly.
struct MatchgateHamiltonian {
  double zu = 0, zv = 0, xx = 0, yy = 0, xy = 0, yx = 0, id = 0;
};

namespace detail {

// Principal Hermitian log of a 2x2 unitary: eigenphases in (-pi, pi],
// with the phase at -pi snapped to +pi.
inline Matrix2 principal_log(const Matrix2& u) {
  Eigen::ComplexEigenSolver<Matrix2> es(u);
  Matrix2 h = Matrix2::Zero();
  for (int k = 0; k < 2; ++k) {
    double phase = std::arg(es.eigenvalues()(k));
    if (phase <= -M_PI + kStructuralTol) phase = M_PI;
    Eigen::Vector2cd v = es.eigenvectors().col(k);
    v.normalize();
    h += phase * (v * v.adjoint());
  }
  // Symmetrize away eigensolver noise.
  return 0.5 * (h + h.adjoint().eval());
}

}  // namespace detail

/// Hermitian generator of G(A,B) in the matchgate algebra.  Log branches
/// of the two blocks are aligned so that tr a = tr b exactly (adding a
/// 2*pi spectral projector does not change the exponential), which kills
/// any Z(x)Z component.
inline MatchgateHamiltonian gate_to_hamiltonian(const Matchgate& m) {
  Matrix2 a = detail::principal_log(m.A);
  Matrix2 b = detail::principal_log(m.B);
  double tra = a.trace().real(), trb = b.trace().real();
  int k = static_cast<int>(std::llround((trb - tra) / (2 * M_PI)));
  if (k != 0) {
    Eigen::SelfAdjointEigenSolver<Matrix2> es(a);
    // Shift the lowest eigenphase when raising, the highest when lowering.
    int idx = k > 0 ? 0 : 1;
    Eigen::Vector2cd v = es.eigenvectors().col(idx);
    a += (2 * M_PI * k) * (v * v.adjoint());
  }

  Matrix4 h = Matrix4::Zero();
  h(0, 0) = a(0, 0);
  h(0, 3) = a(0, 1);
  h(3, 0) = a(1, 0);
  h(3, 3) = a(1, 1);
  h(1, 1) = b(0, 0);
  h(1, 2) = b(0, 1);
  h(2, 1) = b(1, 0);
  h(2, 2) = b(1, 1);

  using namespace pauli_mats;
  auto coeff = [&](const Matrix4& p) { return (p * h).trace().real() / 4.0; };
  MatchgateHamiltonian out;
  out.zu = coeff(kron2(Z(), I()));
  out.zv = coeff(kron2(I(), Z()));
  out.xx = coeff(kron2(X(), X()));
  out.yy = coeff(kron2(Y(), Y()));
  out.xy = coeff(kron2(X(), Y()));
  out.yx = coeff(kron2(Y(), X()));
  out.id = coeff(Matrix4::Identity());
  return out;
}

inline Matrix4 hamiltonian_matrix(const MatchgateHamiltonian& h) {
  using namespace pauli_mats;
  return h.zu * kron2(Z(), I()) + h.zv * kron2(I(), Z()) +
         h.xx * kron2(X(), X()) + h.yy * kron2(Y(), Y()) +
         h.xy * kron2(X(), Y()) + h.yx * kron2(Y(), X()) +
         h.id * Matrix4::Identity();
}

/// exp(iH) for Hermitian H via eigendecomposition.
inline Matrix4 exp_i_hermitian(const Matrix4& h) {
  Eigen::SelfAdjointEigenSolver<Matrix4> es(h);
  Matrix4 d = Matrix4::Zero();
  for (int k = 0; k < 4; ++k)
    d(k, k) = std::exp(complex(0, es.eigenvalues()(k)));
  return es.eigenvectors() * d * es.eigenvectors().adjoint();
}

/// Physical circuit: ordered matchgates whose edges all exist in the graph.
struct PhysicalCircuit {
  Graph graph;
  std::vector<Matchgate> gates;

  void validate() const {
    for (const auto& g : gates) {
      require(g.edge.first >= 0 && g.edge.first < graph.n() &&
                  g.edge.second >= 0 && g.edge.second < graph.n(),
              ErrorCode::TargetOutOfRange, "gate edge out of range");
      require(graph.has_edge(g.edge.first, g.edge.second),
              ErrorCode::UnsupportedGraph, "gate edge not in graph");
      make_matchgate(g.A, g.B, g.edge);
    }
  }
};

}  // namespace matchgraph
