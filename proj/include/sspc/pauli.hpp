// Copyright 2026 The SSPC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sspc/linalg.hpp"

namespace sspc {

/// Single-qubit Pauli letter. The numeric value is the canonical base-4
/// digit; with this encoding the phase-free product of two letters is the
/// XOR of their digits (X·Y ∝ Z ↔ 1^2 = 3).
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

inline Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': case '_': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: throw InvalidArgument(std::string("unknown Pauli letter '") + c + "'");
  }
}

inline ComplexMatrix pauli_matrix(Pauli p) {
  ComplexMatrix m(2, 2);
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -kI, kI, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

/// n-qubit Pauli label. Qubit 0 is the leftmost letter and the most
/// significant base-4 digit / tensor factor.
class PauliString {
 public:
  PauliString() = default;

  explicit PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw InvalidArgument("PauliString: length must be >= 1");
  }

  static PauliString parse(std::string_view text) {
    std::vector<Pauli> letters;
    letters.reserve(text.size());
    for (char c : text) letters.push_back(pauli_from_char(c));
    return PauliString(std::move(letters));
  }

  static PauliString from_index(std::size_t index, int n_qubits) {
    if (n_qubits < 1) throw InvalidArgument("PauliString: n_qubits must be >= 1");
    if (index >= pow4(n_qubits)) throw InvalidArgument("PauliString: index out of range");
    std::vector<Pauli> letters(static_cast<std::size_t>(n_qubits));
    for (int q = n_qubits - 1; q >= 0; --q) {
      letters[static_cast<std::size_t>(q)] = static_cast<Pauli>(index & 3u);
      index >>= 2;
    }
    return PauliString(std::move(letters));
  }

  int n_qubits() const { return static_cast<int>(letters_.size()); }
  Pauli operator[](std::size_t q) const { return letters_.at(q); }
  const std::vector<Pauli>& letters() const { return letters_; }

  std::size_t index() const {
    std::size_t k = 0;
    for (Pauli p : letters_) k = (k << 2) | static_cast<std::size_t>(p);
    return k;
  }

  std::string str() const {
    std::string s;
    s.reserve(letters_.size());
    for (Pauli p : letters_) s.push_back(pauli_char(p));
    return s;
  }

  std::size_t weight() const {
    std::size_t w = 0;
    for (Pauli p : letters_) w += p != Pauli::I;
    return w;
  }

  ComplexMatrix matrix() const {
    ComplexMatrix m = pauli_matrix(letters_.front());
    for (std::size_t q = 1; q < letters_.size(); ++q) m = kron(m, pauli_matrix(letters_[q]));
    return m;
  }

  /// Phase-free product (phases are irrelevant for stochastic channels).
  PauliString operator*(const PauliString& other) const {
    if (other.n_qubits() != n_qubits()) throw InvalidArgument("PauliString: length mismatch");
    std::vector<Pauli> out(letters_.size());
    for (std::size_t q = 0; q < out.size(); ++q) {
      out[q] = static_cast<Pauli>(static_cast<int>(letters_[q]) ^ static_cast<int>(other.letters_[q]));
    }
    return PauliString(std::move(out));
  }

  bool operator==(const PauliString&) const = default;

 private:
  std::vector<Pauli> letters_;
};

/// Phase-free product on canonical indices.
constexpr std::size_t pauli_product_index(std::size_t a, std::size_t b) { return a ^ b; }

/// Canonical label of index k for an n-qubit register, e.g. "IXZ".
inline std::string pauli_label(std::size_t index, int n_qubits) {
  return PauliString::from_index(index, n_qubits).str();
}

/// True iff the n-qubit Paulis with canonical indices a and b commute.
inline bool paulis_commute(std::size_t a, std::size_t b, int n_qubits) {
  int anti = 0;
  for (int q = 0; q < n_qubits; ++q) {
    const auto pa = (a >> (2 * q)) & 3u, pb = (b >> (2 * q)) & 3u;
    anti += (pa != 0 && pb != 0 && pa != pb);
  }
  return anti % 2 == 0;
}

/// The 4ⁿ n-qubit Pauli matrices in canonical order (base-4 digits of the
/// position, I=0 X=1 Y=2 Z=3, first qubit most significant).
inline std::vector<ComplexMatrix> pauli_basis(int n_qubits) {
  if (n_qubits <= 0) throw InvalidArgument("pauli_basis: n must be >= 1");
  if (n_qubits > 6) throw InvalidArgument("pauli_basis: n > 6 is outside dense range");
  std::vector<ComplexMatrix> basis{pauli_matrix(Pauli::I), pauli_matrix(Pauli::X),
                                   pauli_matrix(Pauli::Y), pauli_matrix(Pauli::Z)};
  for (int q = 1; q < n_qubits; ++q) {
    std::vector<ComplexMatrix> next;
    next.reserve(basis.size() * 4);
    for (const auto& left : basis) {
      for (int p = 0; p < 4; ++p) next.push_back(kron(left, pauli_matrix(static_cast<Pauli>(p))));
    }
    basis = std::move(next);
  }
  return basis;
}

}  // namespace sspc
