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
#include <array>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "matchgraph/common.hpp"
#include "matchgraph/graph.hpp"
#include "matchgraph/matchgate.hpp"
#include "matchgraph/pauli.hpp"

namespace matchgraph {

// Efficient simulation of matchgate circuits on paths and cycles: each
// gate conjugates the Jordan-Wigner operators as c_mu -> sum_nu R_mu,nu
// c_nu with R in SO(2n), and single-qubit <Z_k> reduces to an O(n^2) sum
// of product-state Pauli expectations.
//
// Sign conventions, fixed once and frozen by the conjugation-oracle test:
// a gate exp(iH) with H = -(i/4) sum h_mu,nu c_mu c_nu (h real
// antisymmetric) has R = exp(h).  A Pauli term alpha*sigma with
// sigma = s * (-i) c_mu c_nu (mu < nu, s = +-1) contributes
// h_mu,nu = 2*alpha*s.  The nearest-neighbor table (1-based majoranas,
// qubit k): Z_k = -i c_{2k-1} c_{2k};  X_k X_{k+1} = -i c_{2k} c_{2k+1};
// Y_k Y_{k+1} = +i c_{2k-1} c_{2k+2};  X_k Y_{k+1} = -i c_{2k} c_{2k+2};
// Y_k X_{k+1} = +i c_{2k-1} c_{2k+1}.

/// Antisymmetric quadratic generator supported on four majorana indices.
struct QuadraticGenerator {
  int n = 0;
  std::array<int, 4> indices{};  // 0-based majorana indices, increasing
  Eigen::Matrix4d block = Eigen::Matrix4d::Zero();

  Eigen::MatrixXd full() const {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) h(indices[i], indices[j]) = block(i, j);
    return h;
  }
};

/// SO(2n) rotation that acts as `block` on four majorana indices and as
/// the identity elsewhere.
struct SparseRotation {
  int n = 0;
  std::array<int, 4> indices{};
  Eigen::Matrix4d block = Eigen::Matrix4d::Identity();

  Eigen::MatrixXd full() const {
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r(indices[i], indices[j]) = block(i, j);
    return r;
  }
};

struct GateRotation {
  QuadraticGenerator generator;
  SparseRotation rotation;
};

namespace detail {

// Coefficients reordered so the edge reads (first, second) = (u, v) with
// the requested canonical first factor.
inline MatchgateHamiltonian oriented_hamiltonian(const Matchgate& m,
                                                 int canonical_first) {
  MatchgateHamiltonian h = gate_to_hamiltonian(m);
  if (m.edge.first == canonical_first) return h;
  std::swap(h.zu, h.zv);
  std::swap(h.xy, h.yx);
  return h;
}

inline Eigen::Matrix4d antisymmetrize(Eigen::Matrix4d b) {
  return b - Eigen::Matrix4d(b.transpose());
}

}  // namespace detail

/// Rotation for a matchgate on path edge (k, k+1), 0-based qubits.  The
/// generator occupies majorana indices 2k..2k+3.
inline GateRotation gate_rotation(const Matchgate& m, int n) {
  auto [lo, hi] = std::minmax(m.edge.first, m.edge.second);
  require(hi == lo + 1 && hi <= n - 1, ErrorCode::NotNearestNeighbor,
          "gate is not on a path edge (k, k+1)");
  MatchgateHamiltonian h = detail::oriented_hamiltonian(m, lo);

  GateRotation out;
  out.generator.n = n;
  out.generator.indices = {2 * lo, 2 * lo + 1, 2 * lo + 2, 2 * lo + 3};
  Eigen::Matrix4d b = Eigen::Matrix4d::Zero();
  b(0, 1) = 2 * h.zu;   // Z_k
  b(2, 3) = 2 * h.zv;   // Z_{k+1}
  b(1, 2) = 2 * h.xx;   // X_k X_{k+1} = -i c_{2k} c_{2k+1}
  b(0, 3) = -2 * h.yy;  // Y_k Y_{k+1} = +i c_{2k-1} c_{2k+2}
  b(1, 3) = 2 * h.xy;   // X_k Y_{k+1} = -i c_{2k} c_{2k+2}
  b(0, 2) = -2 * h.yx;  // Y_k X_{k+1} = +i c_{2k-1} c_{2k+1}
  out.generator.block = detail::antisymmetrize(b);

  out.rotation.n = n;
  out.rotation.indices = out.generator.indices;
  out.rotation.block = out.generator.block.exp();
  return out;
}

/// Rotations for a matchgate on the wrap edge of an n-cycle, one per
/// parity sector.  The generator occupies majorana indices {1, 2, 2n-1,
/// 2n} (1-based).  Only the four two-qubit couplings flip sign between
/// sectors; the single-qubit Z terms carry no parity string.
inline std::pair<GateRotation, GateRotation> wrap_gate_rotation(
    const Matchgate& m, int n) {
  require(n >= 3, ErrorCode::NotWrapEdge, "wrap edge needs a cycle, n >= 3");
  auto [lo, hi] = std::minmax(m.edge.first, m.edge.second);
  require(lo == 0 && hi == n - 1, ErrorCode::NotWrapEdge,
          "gate is not on the wrap edge (n-1, 0)");
  // Canonical first factor is qubit n-1 (the papers' qubit n).
  MatchgateHamiltonian h = detail::oriented_hamiltonian(m, n - 1);

  auto build = [&](int sector_sign) {
    GateRotation out;
    out.generator.n = n;
    out.generator.indices = {0, 1, 2 * n - 2, 2 * n - 1};
    Eigen::Matrix4d b = Eigen::Matrix4d::Zero();
    b(0, 1) = 2 * h.zv;                // Z_0 (papers' Z_1)
    b(2, 3) = 2 * h.zu;                // Z_{n-1} (papers' Z_n)
    b(0, 3) = sector_sign * 2 * h.xx;  // X_1 X_n = -i c_1 c_{2n} (even)
    b(1, 2) = sector_sign * -2 * h.yy; // Y_1 Y_n = +i c_2 c_{2n-1} (even)
    b(1, 3) = sector_sign * 2 * h.xy;  // Y_1 X_n = -i c_2 c_{2n} (even)
    b(0, 2) = sector_sign * -2 * h.yx; // X_1 Y_n = +i c_1 c_{2n-1} (even)
    out.generator.block = detail::antisymmetrize(b);
    out.rotation.n = n;
    out.rotation.indices = out.generator.indices;
    out.rotation.block = out.generator.block.exp();
    return out;
  };
  return {build(+1), build(-1)};
}

/// R (even-sector) and R' (odd-sector) for a whole circuit; they agree
/// unless a wrap gate occurs.
struct RotationAccumulator {
  int n = 0;
  Eigen::MatrixXd R;
  Eigen::MatrixXd Rprime;

  explicit RotationAccumulator(int n_)
      : n(n_),
        R(Eigen::MatrixXd::Identity(2 * n_, 2 * n_)),
        Rprime(Eigen::MatrixXd::Identity(2 * n_, 2 * n_)) {}
};

namespace detail {

// R <- rot * R, touching only the four rows rot acts on.
inline void left_multiply(Eigen::MatrixXd& r, const SparseRotation& rot) {
  Eigen::Matrix<double, 4, Eigen::Dynamic> rows(4, r.cols());
  for (int i = 0; i < 4; ++i) rows.row(i) = r.row(rot.indices[i]);
  rows = rot.block * rows;
  for (int i = 0; i < 4; ++i) r.row(rot.indices[i]) = rows.row(i);
}

}  // namespace detail

inline RotationAccumulator accumulate(const PhysicalCircuit& c) {
  GraphClass cls = classify(c.graph);
  require(cls == GraphClass::Path || cls == GraphClass::Cycle,
          ErrorCode::UnsupportedGraph,
          "efficient simulation covers paths and cycles; compile instead");
  int n = c.graph.n();
  RotationAccumulator acc(n);
  for (const auto& g : c.gates) {
    auto [lo, hi] = std::minmax(g.edge.first, g.edge.second);
    bool wrap = cls == GraphClass::Cycle && lo == 0 && hi == n - 1;
    if (wrap) {
      auto [even, odd] = wrap_gate_rotation(g, n);
      detail::left_multiply(acc.R, even.rotation);
      detail::left_multiply(acc.Rprime, odd.rotation);
    } else {
      GateRotation rot = gate_rotation(g, n);
      detail::left_multiply(acc.R, rot.rotation);
      detail::left_multiply(acc.Rprime, rot.rotation);
    }
  }
  return acc;
}

inline bool is_special_orthogonal(const Eigen::MatrixXd& r,
                                  double tol = kRoundTripTol) {
  if ((r.transpose() * r - Eigen::MatrixXd::Identity(r.rows(), r.cols()))
          .cwiseAbs()
          .maxCoeff() > tol)
    return false;
  return std::abs(r.fullPivLu().determinant() - 1.0) <= 1e3 * tol;
}

namespace detail {

// M_ab = <psi| c_{a+1} c_{b+1} |psi> and the same with the parity string
// appended; each entry is a product-state Pauli expectation.
struct MajoranaMoments {
  Eigen::MatrixXcd plain;
  Eigen::MatrixXcd with_parity;
};

inline MajoranaMoments majorana_moments(const ProductState& in, int n,
                                        bool parity_version) {
  std::vector<PauliString> cs;
  cs.reserve(2 * n);
  for (int mu = 1; mu <= 2 * n; ++mu) cs.push_back(majorana(mu, n));
  PauliString zall = parity_string(n);

  MajoranaMoments m;
  m.plain.resize(2 * n, 2 * n);
  if (parity_version) m.with_parity.resize(2 * n, 2 * n);
  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b) {
      PauliString prod = cs[a] * cs[b];
      m.plain(a, b) = pauli_expectation(in, prod);
      if (parity_version) m.with_parity(a, b) = pauli_expectation(in, prod * zall);
    }
  return m;
}

inline double contract(const Eigen::MatrixXd& r1, const Eigen::MatrixXd& r2,
                       int k, const Eigen::MatrixXcd& moments) {
  int n2 = static_cast<int>(moments.rows());
  Eigen::VectorXd row1 = r1.row(2 * k).transpose();
  Eigen::VectorXd row2 = r2.row(2 * k + 1).transpose();
  Eigen::VectorXcd t = moments * row2.cast<complex>();
  complex s = row1.cast<complex>().dot(t);  // conjugates, but row1 is real
  (void)n2;
  complex v = complex(0, -1) * s;
  require(std::abs(v.imag()) <= kOracleTol, ErrorCode::SizeMismatch,
          "expectation has a non-negligible imaginary part");
  return v.real();
}

}  // namespace detail

/// <Z_k> on a path:  -i sum_{a,b} R_{2k-1,a} R_{2k,b} <psi|c_a c_b|psi>,
/// the indices running over all 2n majoranas.
inline std::vector<double> expected_z_path(const PhysicalCircuit& c,
                                           const ProductState& in,
                                           const std::vector<int>& ks) {
  require(classify(c.graph) == GraphClass::Path, ErrorCode::UnsupportedGraph,
          "expected_z_path needs a path graph");
  int n = c.graph.n();
  require(in.n() == n, ErrorCode::SizeMismatch, "input size mismatch");
  RotationAccumulator acc = accumulate(c);
  auto moments = detail::majorana_moments(in, n, false);
  std::vector<double> out;
  for (int k : ks) {
    require(k >= 0 && k < n, ErrorCode::IndexOutOfRange, "qubit out of range");
    out.push_back(detail::contract(acc.R, acc.R, k, moments.plain));
  }
  return out;
}

inline double expected_z_path(const PhysicalCircuit& c, const ProductState& in,
                              int k) {
  return expected_z_path(c, in, std::vector<int>{k})[0];
}

/// <Z_k> on a cycle: the even/odd parity sectors evolve under R and R'
/// respectively, and the sector moments come from
/// E+- = (  <c_a c_b> +- <c_a c_b Z_1..Z_n> ) / 2.
inline std::vector<double> expected_z_cycle(const PhysicalCircuit& c,
                                            const ProductState& in,
                                            const std::vector<int>& ks) {
  require(classify(c.graph) == GraphClass::Cycle, ErrorCode::UnsupportedGraph,
          "expected_z_cycle needs a cycle graph");
  int n = c.graph.n();
  require(in.n() == n, ErrorCode::SizeMismatch, "input size mismatch");
  RotationAccumulator acc = accumulate(c);
  auto moments = detail::majorana_moments(in, n, true);
  Eigen::MatrixXcd eplus = 0.5 * (moments.plain + moments.with_parity);
  Eigen::MatrixXcd eminus = 0.5 * (moments.plain - moments.with_parity);
  std::vector<double> out;
  for (int k : ks) {
    require(k >= 0 && k < n, ErrorCode::IndexOutOfRange, "qubit out of range");
    // The parity-sector split is exact, so the two contractions are the
    // sector contributions; their imaginary parts only cancel jointly.
    Eigen::VectorXcd re2 = acc.R.row(2 * k + 1).transpose().cast<complex>();
    Eigen::VectorXcd ro2 = acc.Rprime.row(2 * k + 1).transpose().cast<complex>();
    complex s = acc.R.row(2 * k).transpose().cast<complex>().dot(eplus * re2) +
                acc.Rprime.row(2 * k).transpose().cast<complex>().dot(eminus * ro2);
    complex v = complex(0, -1) * s;
    require(std::abs(v.imag()) <= kOracleTol, ErrorCode::SizeMismatch,
            "expectation has a non-negligible imaginary part");
    out.push_back(v.real());
  }
  return out;
}

inline double expected_z_cycle(const PhysicalCircuit& c, const ProductState& in,
                               int k) {
  return expected_z_cycle(c, in, std::vector<int>{k})[0];
}

/// Dispatches on the graph class.
inline std::vector<double> expected_z(const PhysicalCircuit& c,
                                      const ProductState& in,
                                      const std::vector<int>& ks) {
  switch (classify(c.graph)) {
    case GraphClass::Path: return expected_z_path(c, in, ks);
    case GraphClass::Cycle: return expected_z_cycle(c, in, ks);
    default:
      fail(ErrorCode::UnsupportedGraph,
           "efficient simulation covers paths and cycles; compile instead");
  }
}

}  // namespace matchgraph
