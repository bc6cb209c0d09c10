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

// Single-step parity-check (SSPC) unitaries on a 3-qubit register
// (ancilla, q1, q2) and checks of their measurement semantics.
//
// The ancilla is qubit 0, the most significant tensor factor; this is the
// ordering under which the published 8×8 matrices equal their decomposed
// circuits.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sspc/linalg.hpp"
#include "sspc/pauli.hpp"

namespace sspc {

class StateVector {
 public:
  StateVector(int n_qubits, ComplexVector amplitudes) : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_qubits < 1) throw InvalidArgument("StateVector: n_qubits must be >= 1");
    if (static_cast<std::size_t>(amps_.size()) != pow2(n_qubits)) {
      throw InvalidArgument("StateVector: expected 2^n amplitudes");
    }
    if (std::abs(amps_.norm() - 1.0) > 1e-10) throw InvalidArgument("StateVector: state is not normalized");
  }

  /// Computational basis state; bit string with qubit 0 leftmost, e.g. "01".
  static StateVector basis(std::string_view bits) {
    const int n = static_cast<int>(bits.size());
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(pow2(n)));
    std::size_t k = 0;
    for (char c : bits) {
      if (c != '0' && c != '1') throw InvalidArgument("StateVector::basis: expected 0/1 string");
      k = (k << 1) | static_cast<std::size_t>(c == '1');
    }
    v(static_cast<Eigen::Index>(k)) = 1.0;
    return {n, std::move(v)};
  }

  /// Normalizes the given amplitudes.
  static StateVector normalized(int n_qubits, ComplexVector v) {
    const double nrm = v.norm();
    if (!(nrm > 0.0)) throw InvalidArgument("StateVector: zero vector");
    return {n_qubits, v / nrm};
  }

  /// Normalized complex Gaussian amplitudes (Haar-distributed direction).
  template <typename Rng>
  static StateVector random(int n_qubits, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexVector v(static_cast<Eigen::Index>(pow2(n_qubits)));
    for (auto& a : v) a = Complex(g(rng), g(rng));
    return normalized(n_qubits, std::move(v));
  }

  int n_qubits() const { return n_qubits_; }
  const ComplexVector& amplitudes() const { return amps_; }

 private:
  int n_qubits_;
  ComplexVector amps_;
};

enum class ParityBasis { kXX, kZZ };

inline std::string_view basis_name(ParityBasis b) { return b == ParityBasis::kXX ? "XX" : "ZZ"; }

inline ParityBasis parse_parity_basis(std::string_view s) {
  if (s == "xx" || s == "XX") return ParityBasis::kXX;
  if (s == "zz" || s == "ZZ") return ParityBasis::kZZ;
  throw InvalidArgument("unsupported parity basis '" + std::string(s) + "' (expected xx or zz)");
}

/// Two data qubits checked through ancilla 0. Only this shape is in scope.
struct ParityCheckSpec {
  ParityBasis basis = ParityBasis::kZZ;
  int n_data = 2;
  int ancilla_index = 0;

  void validate() const {
    if (n_data != 2 || ancilla_index != 0) {
      throw InvalidArgument("ParityCheckSpec: only 2 data qubits with ancilla at index 0 are supported");
    }
  }
};

inline ComplexMatrix u_xx() {
  RealMatrix m(8, 8);
  m << 1, 0, 0, 1, 1, 0, 0, -1,
       0, 1, 1, 0, 0, 1, -1, 0,
       0, 1, 1, 0, 0, -1, 1, 0,
       1, 0, 0, 1, -1, 0, 0, 1,
       1, 0, 0, -1, 1, 0, 0, 1,
       0, 1, -1, 0, 0, 1, 1, 0,
       0, -1, 1, 0, 0, 1, 1, 0,
       -1, 0, 0, 1, 1, 0, 0, 1;
  return 0.5 * m.cast<Complex>();
}

inline ComplexMatrix u_zz() {
  RealMatrix m = RealMatrix::Zero(8, 8);
  const int image[8] = {0, 5, 6, 3, 4, 1, 2, 7};  // row r has its 1 in column image[r]
  for (int r = 0; r < 8; ++r) m(r, image[r]) = 1.0;
  return m.cast<Complex>();
}

inline ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

/// Single-qubit gate g on qubit q of an n-qubit register.
inline ComplexMatrix embed(const ComplexMatrix& g, int q, int n_qubits) {
  ComplexMatrix out = q == 0 ? g : ComplexMatrix::Identity(2, 2);
  for (int k = 1; k < n_qubits; ++k) out = kron(out, k == q ? g : ComplexMatrix::Identity(2, 2));
  return out;
}

/// CNOT permutation matrix on an n-qubit register.
inline ComplexMatrix cnot(int control, int target, int n_qubits) {
  if (control == target || control < 0 || target < 0 || control >= n_qubits || target >= n_qubits) {
    throw InvalidArgument("cnot: bad qubit indices");
  }
  const auto dim = static_cast<Eigen::Index>(pow2(n_qubits));
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  const auto bit = [&](int q) { return Eigen::Index{1} << (n_qubits - 1 - q); };
  for (Eigen::Index s = 0; s < dim; ++s) {
    const Eigen::Index out = (s & bit(control)) ? (s ^ bit(target)) : s;
    m(out, s) = 1.0;
  }
  return m;
}

struct GateStep {
  std::string name;
  ComplexMatrix unitary;
};

/// Gate sequence in time order; the SSPC matrix is the product
/// steps.back() ⋯ steps.front().
inline std::vector<GateStep> decomposed_parity_circuit(const ParityCheckSpec& spec) {
  spec.validate();
  if (spec.basis == ParityBasis::kXX) {
    const ComplexMatrix hii = embed(hadamard(), 0, 3);
    return {{"HII", hii}, {"CX(a,q1)", cnot(0, 1, 3)}, {"CX(a,q2)", cnot(0, 2, 3)}, {"HII", hii}};
  }
  return {{"CX(q1,a)", cnot(1, 0, 3)}, {"CX(q2,a)", cnot(2, 0, 3)}};
}

inline ComplexMatrix sequence_product(const std::vector<GateStep>& steps) {
  if (steps.empty()) throw InvalidArgument("sequence_product: empty sequence");
  ComplexMatrix u = steps.front().unitary;
  for (std::size_t i = 1; i < steps.size(); ++i) u = steps[i].unitary * u;
  return u;
}

inline ComplexMatrix sspc_unitary(ParityBasis b) { return b == ParityBasis::kXX ? u_xx() : u_zz(); }

/// The checked two-qubit operator XX or ZZ.
inline ComplexMatrix parity_operator(ParityBasis b) {
  return PauliString::parse(b == ParityBasis::kXX ? "XX" : "ZZ").matrix();
}

struct ProjectionOutcome {
  double probability;
  StateVector state;
};

/// Ancilla outcome m selects the (−1)^m eigenspace: ½(I + (−1)^m P).
inline ProjectionOutcome parity_project(const StateVector& state, const ParityCheckSpec& spec, int ancilla_outcome) {
  spec.validate();
  if (state.n_qubits() != 2) throw InvalidArgument("parity_project: expects a two-qubit data state");
  if (ancilla_outcome != 0 && ancilla_outcome != 1) throw InvalidArgument("parity_project: outcome must be 0 or 1");
  const double sign = ancilla_outcome == 0 ? 1.0 : -1.0;
  const ComplexMatrix proj = 0.5 * (ComplexMatrix::Identity(4, 4) + sign * parity_operator(spec.basis));
  const ComplexVector out = proj * state.amplitudes();
  const double p = out.squaredNorm();
  if (p < 1e-12) {
    throw ImpossibleOutcome("parity_project: outcome " + std::to_string(ancilla_outcome) +
                            " has probability " + std::to_string(p));
  }
  return {p, StateVector::normalized(2, out)};
}

struct ParityVerification {
  bool passed = true;
  std::size_t trials = 0;
  double max_eigen_deviation = 0.0;       ///< max ‖Pψ_out ∓ ψ_out‖_∞
  double max_probability_deviation = 0.0; ///< vs parity_project
  double max_state_deviation = 0.0;       ///< vs parity_project state, phase-free
  double max_normalization_deviation = 0.0;
  ComplexVector worst_state;              ///< witness input with the largest deviation
  double tolerance = 1e-9;

  double max_deviation() const {
    return std::max({max_eigen_deviation, max_probability_deviation, max_state_deviation,
                     max_normalization_deviation});
  }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct TrialDeviation {
  double eigen = 0.0, probability = 0.0, state = 0.0, normalization = 0.0;
  double max() const { return std::max({eigen, probability, state, normalization}); }
};

inline TrialDeviation check_parity_trial(const ComplexMatrix& u, const ParityCheckSpec& spec,
                                         const StateVector& psi) {
  // |0⟩_a ⊗ |ψ⟩ occupies the first four amplitudes.
  ComplexVector in = ComplexVector::Zero(8);
  in.head(4) = psi.amplitudes();
  const ComplexVector out = u * in;
  const ComplexMatrix parity = parity_operator(spec.basis);
  TrialDeviation dev;
  double total = 0.0;
  for (int m = 0; m < 2; ++m) {
    const ComplexVector branch = out.segment(4 * m, 4);
    const double p = branch.squaredNorm();
    total += p;
    const double sign = m == 0 ? 1.0 : -1.0;
    const ComplexMatrix proj = 0.5 * (ComplexMatrix::Identity(4, 4) + sign * parity);
    const ComplexVector expected = proj * psi.amplitudes();
    const double p_expected = expected.squaredNorm();
    dev.probability = std::max(dev.probability, std::abs(p - p_expected));
    if (p < 1e-12) continue;
    const ComplexVector post = branch / std::sqrt(p);
    dev.eigen = std::max(dev.eigen, max_abs(parity * post - sign * post));
    if (p_expected >= 1e-12) {
      const ComplexVector want = expected / std::sqrt(p_expected);
      dev.state = std::max(dev.state, phase_insensitive_distance(post, want));
    } else {
      dev.state = std::max(dev.state, 1.0);
    }
  }
  dev.normalization = std::abs(total - 1.0);
  return dev;
}

}  // namespace detail

/// Run `trials` seeded random data states through u (ancilla starts in |0⟩)
/// and compare the ancilla statistics and post-measurement states with the
/// ideal parity projection.
inline ParityVerification verify_parity_semantics(const ComplexMatrix& u, const ParityCheckSpec& spec,
                                                  std::size_t trials, std::uint64_t seed,
                                                  double tolerance = 1e-9) {
  spec.validate();
  if (u.rows() != 8 || u.cols() != 8 || !is_unitary(u, 1e-10)) {
    throw InvalidArgument("verify_parity_semantics: expects an 8x8 unitary");
  }
  ParityVerification rep;
  rep.trials = trials;
  rep.tolerance = tolerance;
  double worst = -1.0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(detail::splitmix64(seed ^ detail::splitmix64(t)));
    const StateVector psi = StateVector::random(2, rng);
    const auto dev = detail::check_parity_trial(u, spec, psi);
    rep.max_eigen_deviation = std::max(rep.max_eigen_deviation, dev.eigen);
    rep.max_probability_deviation = std::max(rep.max_probability_deviation, dev.probability);
    rep.max_state_deviation = std::max(rep.max_state_deviation, dev.state);
    rep.max_normalization_deviation = std::max(rep.max_normalization_deviation, dev.normalization);
    if (dev.max() > worst) {
      worst = dev.max();
      rep.worst_state = psi.amplitudes();
    }
  }
  rep.passed = rep.max_deviation() <= tolerance;
  return rep;
}

/// Single-state variant, used for eigenstate spot checks.
inline ParityVerification verify_parity_on_state(const ComplexMatrix& u, const ParityCheckSpec& spec,
                                                 const StateVector& psi, double tolerance = 1e-9) {
  spec.validate();
  const auto dev = detail::check_parity_trial(u, spec, psi);
  ParityVerification rep;
  rep.trials = 1;
  rep.tolerance = tolerance;
  rep.max_eigen_deviation = dev.eigen;
  rep.max_probability_deviation = dev.probability;
  rep.max_state_deviation = dev.state;
  rep.max_normalization_deviation = dev.normalization;
  rep.worst_state = psi.amplitudes();
  rep.passed = rep.max_deviation() <= tolerance;
  return rep;
}

/// Throws VerificationFailure (with the witness state) when the check fails.
inline void require_parity_semantics(const ComplexMatrix& u, const ParityCheckSpec& spec, std::size_t trials,
                                     std::uint64_t seed) {
  const auto rep = verify_parity_semantics(u, spec, trials, seed);
  if (!rep.passed) {
    std::string witness;
    for (const auto& a : rep.worst_state) {
      witness += "(" + std::to_string(a.real()) + "," + std::to_string(a.imag()) + ") ";
    }
    throw VerificationFailure("parity semantics violated: max deviation " + std::to_string(rep.max_deviation()) +
                              "; witness state " + witness);
  }
}

/// Ancilla outcome probabilities (p0, p1) for input |0⟩⊗|ψ⟩.
inline std::pair<double, double> ancilla_marginals(const ComplexMatrix& u, const StateVector& psi) {
  ComplexVector in = ComplexVector::Zero(8);
  in.head(4) = psi.amplitudes();
  const ComplexVector out = u * in;
  return {out.head(4).squaredNorm(), out.tail(4).squaredNorm()};
}

/// u maps every X_i and Z_i to ± or ±i times a Pauli string.
inline bool is_clifford(const ComplexMatrix& u, double tolerance = 1e-9) {
  if (!is_unitary(u, tol::kUnitarity)) throw InvalidArgument("is_clifford: input is not unitary");
  const int n = log2_exact(u.rows());
  const auto basis = pauli_basis(n);
  const double d = static_cast<double>(u.rows());
  for (int q = 0; q < n; ++q) {
    for (Pauli p : {Pauli::X, Pauli::Z}) {
      const ComplexMatrix conj = u * embed(pauli_matrix(p), q, n) * u.adjoint();
      std::size_t best = 0;
      Complex best_c = 0.0;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const Complex c = (basis[j] * conj).trace() / d;
        if (std::abs(c) > std::abs(best_c)) {
          best_c = c;
          best = j;
        }
      }
      const Complex phases[4] = {1.0, -1.0, kI, -kI};
      bool phase_ok = false;
      for (const Complex& ph : phases) phase_ok |= std::abs(best_c - ph) <= tolerance;
      if (!phase_ok) return false;
      if (max_abs(conj - best_c * basis[best]) > tolerance) return false;
    }
  }
  return true;
}

}  // namespace sspc
