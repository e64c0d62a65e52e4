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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "matchgraph/common.hpp"

namespace matchgraph {

enum class PauliLetter : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_letter_char(PauliLetter l) { return "IXYZ"[static_cast<int>(l)]; }

/// Tensor product of single-qubit Paulis with an overall phase i^k.
struct PauliString {
  std::vector<PauliLetter> letters;
  int phase_power = 0;  // phase = i^phase_power, k in 0..3

  explicit PauliString(int n = 0) : letters(n, PauliLetter::I) {}

  int n() const { return static_cast<int>(letters.size()); }

  complex phase() const {
    static const complex table[4] = {complex(1, 0), complex(0, 1),
                                     complex(-1, 0), complex(0, -1)};
    return table[((phase_power % 4) + 4) % 4];
  }

  std::string str() const {
    std::string s;
    switch (((phase_power % 4) + 4) % 4) {
      case 0: s = "+"; break;
      case 1: s = "+i"; break;
      case 2: s = "-"; break;
      case 3: s = "-i"; break;
    }
    for (auto l : letters) s += pauli_letter_char(l);
    return s;
  }
};

namespace detail {

// product(a, b) = i^k c with letters indexed I,X,Y,Z; XY = iZ and cyclic.
struct PauliProductEntry {
  PauliLetter letter;
  int phase_power;
};

inline PauliProductEntry pauli_product(PauliLetter a, PauliLetter b) {
  static constexpr int kLetter[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int kPhase[4][4] = {
      {0, 0, 0, 0}, {0, 0, 1, 3}, {0, 3, 0, 1}, {0, 1, 3, 0}};
  int ia = static_cast<int>(a), ib = static_cast<int>(b);
  return {static_cast<PauliLetter>(kLetter[ia][ib]), kPhase[ia][ib]};
}

}  // namespace detail

inline PauliString operator*(const PauliString& a, const PauliString& b) {
  require(a.n() == b.n(), ErrorCode::SizeMismatch,
          "pauli strings act on different qubit counts");
  PauliString out(a.n());
  out.phase_power = a.phase_power + b.phase_power;
  for (int q = 0; q < a.n(); ++q) {
    auto e = detail::pauli_product(a.letters[q], b.letters[q]);
    out.letters[q] = e.letter;
    out.phase_power += e.phase_power;
  }
  out.phase_power = ((out.phase_power % 4) + 4) % 4;
  return out;
}

/// Jordan-Wigner operator c_mu on n qubits, mu in 1..2n:
/// c_{2j-1} = Z_1...Z_{j-1} X_j and c_{2j} = Z_1...Z_{j-1} Y_j
/// (qubit j of the papers' 1-based convention is qubit j-1 here).
inline PauliString majorana(int mu, int n) {
  require(mu >= 1 && mu <= 2 * n, ErrorCode::IndexOutOfRange,
          "majorana index out of range");
  int j = (mu + 1) / 2;  // 1-based qubit
  PauliString c(n);
  for (int q = 0; q < j - 1; ++q) c.letters[q] = PauliLetter::Z;
  c.letters[j - 1] = (mu % 2 == 1) ? PauliLetter::X : PauliLetter::Y;
  return c;
}

/// Z_1 Z_2 ... Z_n, the overall parity operator.
inline PauliString parity_string(int n) {
  PauliString p(n);
  for (auto& l : p.letters) l = PauliLetter::Z;
  return p;
}

/// Single-qubit product state, |psi_i> = alpha|0> + beta|1> per qubit.
struct ProductState {
  std::vector<std::array<complex, 2>> qubits;

  ProductState() = default;
  explicit ProductState(int n) : qubits(n, {complex(1, 0), complex(0, 0)}) {}

  static ProductState from_string(const std::string& bits) {
    ProductState s(static_cast<int>(bits.size()));
    const double r = 1.0 / std::sqrt(2.0);
    for (size_t i = 0; i < bits.size(); ++i) {
      switch (bits[i]) {
        case '0': s.qubits[i] = {complex(1, 0), complex(0, 0)}; break;
        case '1': s.qubits[i] = {complex(0, 0), complex(1, 0)}; break;
        case '+': s.qubits[i] = {complex(r, 0), complex(r, 0)}; break;
        case '-': s.qubits[i] = {complex(r, 0), complex(-r, 0)}; break;
        default:
          fail(ErrorCode::ParseError,
               std::string("bad state character '") + bits[i] + "'");
      }
    }
    return s;
  }

  int n() const { return static_cast<int>(qubits.size()); }

  void validate() const {
    for (const auto& q : qubits)
      require(std::abs(std::norm(q[0]) + std::norm(q[1]) - 1.0) <= kRoundTripTol,
              ErrorCode::NotUnitary, "qubit state is not normalized");
  }
};

/// <psi_i| sigma |psi_i> for one qubit.
inline complex single_qubit_expectation(const std::array<complex, 2>& q,
                                        PauliLetter l) {
  const complex a = q[0], b = q[1];
  switch (l) {
    case PauliLetter::I: return std::norm(a) + std::norm(b);
    case PauliLetter::X: return std::conj(a) * b + std::conj(b) * a;
    case PauliLetter::Y:
      return complex(0, -1) * std::conj(a) * b + complex(0, 1) * std::conj(b) * a;
    case PauliLetter::Z: return std::norm(a) - std::norm(b);
  }
  return 0;
}

/// <psi|P|psi> for a product state: the phase times a product of n
/// single-qubit expectations.
inline complex pauli_expectation(const ProductState& in, const PauliString& p) {
  require(in.n() == p.n(), ErrorCode::SizeMismatch,
          "state and operator sizes differ");
  complex out = p.phase();
  for (int q = 0; q < p.n(); ++q) {
    out *= single_qubit_expectation(in.qubits[q], p.letters[q]);
    if (out == complex(0, 0)) return out;
  }
  return out;
}

}  // namespace matchgraph
