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

// Quantum channel representations and lossless conversion between them.
//
// Conventions
// -----------
// * Vectorization is column-stacking: vec(ρ)[i + d·j] = ρ(i, j), so
//   vec(AρB) = (Bᵀ ⊗ A) vec(ρ) and a unitary channel has superoperator
//   conj(U) ⊗ U.
// * Choi(a·d + i, b·d + j) = E(|a⟩⟨b|)(i, j), input factor first.
// * PTM R(i, j) = Tr(P_i E(P_j)) / d over the canonical Pauli order.
// * χ is normalized so that E(ρ) = Σ_jk χ(j, k) P_j ρ P_k and Tr χ = 1 for
//   trace-preserving maps; its diagonal is the Pauli error distribution.
// * Kraus operators are taken from the Choi eigendecomposition,
//   A_k = √λ_k · unvec(v_k), largest eigenvalue first.

#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Eigenvalues>

#include "sspc/linalg.hpp"
#include "sspc/pauli.hpp"

namespace sspc {

enum class ChannelKind { kUnitary, kSuperop, kPtm, kChi, kChoi, kKraus };

inline std::string_view kind_name(ChannelKind k) {
  switch (k) {
    case ChannelKind::kUnitary: return "unitary";
    case ChannelKind::kSuperop: return "superop";
    case ChannelKind::kPtm: return "ptm";
    case ChannelKind::kChi: return "chi";
    case ChannelKind::kChoi: return "choi";
    case ChannelKind::kKraus: return "kraus";
  }
  return "?";
}

inline ChannelKind parse_kind(std::string_view s) {
  if (s == "unitary") return ChannelKind::kUnitary;
  if (s == "superop" || s == "superoperator") return ChannelKind::kSuperop;
  if (s == "ptm") return ChannelKind::kPtm;
  if (s == "chi") return ChannelKind::kChi;
  if (s == "choi") return ChannelKind::kChoi;
  if (s == "kraus") return ChannelKind::kKraus;
  throw InvalidArgument("unknown channel kind '" + std::string(s) + "'");
}

/// Collects non-fatal notes (clipped eigenvalues, renormalizations, ...).
struct Diagnostics {
  std::vector<std::string> warnings;
  void warn(std::string msg) { warnings.push_back(std::move(msg)); }
};

inline void warn(Diagnostics* diag, std::string msg) {
  if (diag != nullptr) diag->warn(std::move(msg));
}

/// A channel in one of the supported representations. Immutable once
/// constructed; all factories validate the kind's invariants.
class ChannelRep {
 public:
  static ChannelRep unitary(ComplexMatrix u) {
    const int n = qubits_for_dim(u.rows(), "unitary");
    if (u.rows() != u.cols()) throw InvalidArgument("unitary: matrix must be square");
    check_finite(u);
    const double r = unitarity_residual(u);
    if (r > tol::kUnitarity) {
      throw PhysicalityViolation("unitary: U†U deviates from identity by " + std::to_string(r));
    }
    return ChannelRep(ChannelKind::kUnitary, n, std::move(u));
  }

  static ChannelRep kraus(std::vector<ComplexMatrix> ops) {
    if (ops.empty()) throw InvalidArgument("kraus: empty operator list");
    const auto d = ops.front().rows();
    const int n = qubits_for_dim(d, "kraus");
    for (const auto& a : ops) {
      if (a.rows() != d || a.cols() != d) {
        throw InvalidArgument("kraus: operators must be square and share one dimension");
      }
      check_finite(a);
    }
    return ChannelRep(ChannelKind::kKraus, n, std::move(ops));
  }

  /// For the 4ⁿ × 4ⁿ kinds (superop, ptm, chi, choi).
  static ChannelRep dense(ChannelKind kind, ComplexMatrix m) {
    if (kind == ChannelKind::kUnitary) return unitary(std::move(m));
    if (kind == ChannelKind::kKraus) throw InvalidArgument("dense: kraus needs an operator list");
    if (m.rows() != m.cols()) throw InvalidArgument("channel matrix must be square");
    const int n = qubits_for_dim(isqrt_exact(m.rows()), kind_name(kind));
    check_finite(m);
    if (kind == ChannelKind::kPtm) {
      const double im = max_abs(m.imag());
      if (im > tol::kPtmImaginary) {
        throw PhysicalityViolation("ptm: imaginary part " + std::to_string(im) + " exceeds 1e-10");
      }
      m = m.real().cast<Complex>();
    }
    return ChannelRep(kind, n, std::move(m));
  }

  static ChannelRep ptm(const RealMatrix& r) { return dense(ChannelKind::kPtm, r.cast<Complex>()); }

  ChannelKind kind() const { return kind_; }
  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return Eigen::Index{1} << n_qubits_; }

  /// Payload of every kind except kraus.
  const ComplexMatrix& matrix() const {
    if (kind_ == ChannelKind::kKraus) throw InvalidArgument("matrix(): kraus channel has an operator list");
    return std::get<ComplexMatrix>(payload_);
  }

  const std::vector<ComplexMatrix>& operators() const {
    if (kind_ != ChannelKind::kKraus) throw InvalidArgument("operators(): not a kraus channel");
    return std::get<std::vector<ComplexMatrix>>(payload_);
  }

  /// PTM payload as a real matrix.
  RealMatrix real_matrix() const {
    if (kind_ != ChannelKind::kPtm) throw InvalidArgument("real_matrix(): not a ptm");
    return matrix().real();
  }

 private:
  using Payload = std::variant<ComplexMatrix, std::vector<ComplexMatrix>>;

  ChannelRep(ChannelKind kind, int n, Payload payload)
      : kind_(kind), n_qubits_(n), payload_(std::move(payload)) {}

  static int qubits_for_dim(Eigen::Index d, std::string_view what) {
    try {
      const int n = log2_exact(d);
      if (n < 1) throw InvalidArgument("");
      return n;
    } catch (const InvalidArgument&) {
      throw InvalidArgument(std::string(what) + ": dimension " + std::to_string(d) +
                            " is not 2^n with n >= 1");
    }
  }

  static void check_finite(const ComplexMatrix& m) {
    if (!all_finite(m)) throw InvalidArgument("channel payload has non-finite entries");
  }

  ChannelKind kind_;
  int n_qubits_;
  Payload payload_;
};

namespace detail {

/// Columns are vec(P_j) in canonical order.
inline ComplexMatrix pauli_vec_basis(int n) {
  const auto basis = pauli_basis(n);
  const auto d = basis.front().rows();
  ComplexMatrix b(d * d, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) b.col(static_cast<Eigen::Index>(j)) = vec(basis[j]);
  return b;
}

/// Columns are |P_j⟩⟩ in the Choi ordering: Q(a·d + i, j) = P_j(i, a).
inline ComplexMatrix pauli_choi_basis(int n) {
  const auto basis = pauli_basis(n);
  const auto d = basis.front().rows();
  ComplexMatrix q(d * d, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index i = 0; i < d; ++i) q(a * d + i, static_cast<Eigen::Index>(j)) = basis[j](i, a);
    }
  }
  return q;
}

/// Superoperator ↔ Choi reshuffle; the map is an involution up to index
/// roles so both directions share one loop.
inline ComplexMatrix superop_to_choi(const ComplexMatrix& s, Eigen::Index d) {
  ComplexMatrix c(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) c(a * d + i, b * d + j) = s(i + d * j, a + d * b);
  return c;
}

inline ComplexMatrix choi_to_superop(const ComplexMatrix& c, Eigen::Index d) {
  ComplexMatrix s(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) s(i + d * j, a + d * b) = c(a * d + i, b * d + j);
  return s;
}

inline ComplexMatrix to_superop(const ChannelRep& rep) {
  const auto d = rep.dim();
  const int n = rep.n_qubits();
  switch (rep.kind()) {
    case ChannelKind::kSuperop:
      return rep.matrix();
    case ChannelKind::kUnitary: {
      const auto& u = rep.matrix();
      return kron(u.conjugate(), u);
    }
    case ChannelKind::kKraus: {
      ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
      for (const auto& a : rep.operators()) s += kron(a.conjugate(), a);
      return s;
    }
    case ChannelKind::kPtm: {
      const ComplexMatrix b = pauli_vec_basis(n);
      return b * rep.matrix() * b.adjoint() / static_cast<double>(d);
    }
    case ChannelKind::kChoi:
      return choi_to_superop(rep.matrix(), d);
    case ChannelKind::kChi: {
      const ComplexMatrix q = pauli_choi_basis(n);
      return choi_to_superop(q * rep.matrix() * q.adjoint(), d);
    }
  }
  throw InvalidArgument("to_superop: unknown kind");
}

inline std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi, Eigen::Index d,
                                                  Diagnostics* diag) {
  const ComplexMatrix herm = 0.5 * (choi + choi.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm);
  if (es.info() != Eigen::Success) throw PhysicalityViolation("Choi eigendecomposition failed");
  const RealVector& w = es.eigenvalues();
  const double min_w = w.minCoeff();
  if (min_w < -tol::kPhysicality) {
    throw NotCompletelyPositive(
        "channel is not completely positive: Choi eigenvalue " + std::to_string(min_w) +
            " < -1e-8; check that the matrix type is declared correctly",
        min_w);
  }
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index k = w.size() - 1; k >= 0; --k) {
    const double lambda = w(k);
    if (lambda < 0.0) {
      warn(diag, "clipped Choi eigenvalue " + std::to_string(lambda) + " to 0");
      continue;
    }
    if (lambda <= tol::kKrausCutoff) continue;
    const ComplexVector v = es.eigenvectors().col(k);
    ComplexMatrix a(d, d);
    for (Eigen::Index col = 0; col < d; ++col)
      for (Eigen::Index row = 0; row < d; ++row) a(row, col) = std::sqrt(lambda) * v(col * d + row);
    ops.push_back(std::move(a));
  }
  if (ops.empty()) throw PhysicalityViolation("channel has no Choi eigenvalue above 1e-10");
  return ops;
}

}  // namespace detail

/// Convert a channel to another representation.
///
/// Every kind goes through the superoperator. Kraus output is the Choi
/// eigen-decomposition (unique only up to the Kraus gauge); unitary output
/// requires a rank-one channel whose single operator is unitary within
/// 1e-8, and is returned with the phase of its largest entry removed.
inline ChannelRep convert(const ChannelRep& rep, ChannelKind target, Diagnostics* diag = nullptr) {
  if (rep.kind() == target) return rep;
  const auto d = rep.dim();
  const int n = rep.n_qubits();
  const ComplexMatrix s = detail::to_superop(rep);
  switch (target) {
    case ChannelKind::kSuperop:
      return ChannelRep::dense(ChannelKind::kSuperop, s);
    case ChannelKind::kPtm: {
      const ComplexMatrix b = detail::pauli_vec_basis(n);
      ComplexMatrix r = b.adjoint() * s * b / static_cast<double>(d);
      // Rounding leaves ~1e-17 imaginary residue for Hermiticity-preserving
      // inputs; anything larger is a genuine non-HP map and is rejected.
      return ChannelRep::dense(ChannelKind::kPtm, std::move(r));
    }
    case ChannelKind::kChoi:
      return ChannelRep::dense(ChannelKind::kChoi, detail::superop_to_choi(s, d));
    case ChannelKind::kChi: {
      const ComplexMatrix q = detail::pauli_choi_basis(n);
      const ComplexMatrix chi =
          q.adjoint() * detail::superop_to_choi(s, d) * q / static_cast<double>(d * d);
      return ChannelRep::dense(ChannelKind::kChi, chi);
    }
    case ChannelKind::kKraus:
      return ChannelRep::kraus(detail::kraus_from_choi(detail::superop_to_choi(s, d), d, diag));
    case ChannelKind::kUnitary: {
      auto ops = detail::kraus_from_choi(detail::superop_to_choi(s, d), d, diag);
      if (ops.size() != 1) {
        throw PhysicalityViolation("channel has Kraus rank " + std::to_string(ops.size()) +
                                   "; not a unitary channel");
      }
      ComplexMatrix u = std::move(ops.front());
      Eigen::Index r = 0, c = 0;
      u.cwiseAbs().maxCoeff(&r, &c);
      u *= std::polar(1.0, -std::arg(u(r, c)));
      const double res = unitarity_residual(u);
      if (res > tol::kPhysicality) {
        throw PhysicalityViolation("rank-one channel is not unitary (residual " + std::to_string(res) + ")");
      }
      // Re-unitarize away the O(1e-12) eigen-solver noise so the result
      // passes the strict unitary invariant.
      Eigen::JacobiSVD<ComplexMatrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
      return ChannelRep::unitary(svd.matrixU() * svd.matrixV().adjoint());
    }
  }
  throw InvalidArgument("convert: unknown target kind");
}

inline ChannelRep ptm_from_unitary(const ChannelRep& u) {
  if (u.kind() != ChannelKind::kUnitary) throw InvalidArgument("ptm_from_unitary: input is not a unitary");
  return convert(u, ChannelKind::kPtm);
}

inline ChannelRep ptm_from_unitary(const ComplexMatrix& u) {
  return ptm_from_unitary(ChannelRep::unitary(u));
}

struct TpCheck {
  bool trace_preserving;
  double residual;  ///< ‖Σ A†A − I‖_max
};

inline TpCheck check_tp(const ChannelRep& kraus, double tolerance = tol::kPhysicality) {
  const auto& ops = kraus.operators();
  const auto d = kraus.dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& a : ops) sum += a.adjoint() * a;
  const double r = max_abs(sum - ComplexMatrix::Identity(d, d));
  return {r <= tolerance, r};
}

/// Minimum eigenvalue of the (Hermitian part of the) Choi matrix.
inline double min_choi_eigenvalue(const ChannelRep& rep) {
  const ChannelRep choi = convert(rep, ChannelKind::kChoi);
  const ComplexMatrix h = 0.5 * (choi.matrix() + choi.matrix().adjoint());
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

inline bool is_completely_positive(const ChannelRep& rep, double tolerance = tol::kPhysicality) {
  return min_choi_eigenvalue(rep) >= -tolerance;
}

/// a ∘ b: b is applied first. Both must be PTMs (or both superoperators).
inline ChannelRep compose_ptm(const ChannelRep& a, const ChannelRep& b) {
  if (a.kind() != b.kind() || (a.kind() != ChannelKind::kPtm && a.kind() != ChannelKind::kSuperop)) {
    throw InvalidArgument("compose: both channels must be PTMs (or both superoperators)");
  }
  if (a.n_qubits() != b.n_qubits()) throw InvalidArgument("compose: dimension mismatch");
  return ChannelRep::dense(a.kind(), a.matrix() * b.matrix());
}

/// a ⊗ b with a on the more significant qubits.
inline ChannelRep tensor_ptm(const ChannelRep& a, const ChannelRep& b) {
  if (a.kind() != ChannelKind::kPtm || b.kind() != ChannelKind::kPtm) {
    throw InvalidArgument("tensor_ptm: both channels must be PTMs");
  }
  return ChannelRep::dense(ChannelKind::kPtm, kron(a.matrix(), b.matrix()));
}

inline ChannelRep tensor_ptm(std::span<const ChannelRep> parts) {
  if (parts.empty()) throw InvalidArgument("tensor_ptm: empty list");
  ChannelRep out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = tensor_ptm(out, parts[i]);
  return out;
}

/// Apply a channel to a density matrix through its superoperator.
inline ComplexMatrix apply_channel(const ChannelRep& rep, const ComplexMatrix& rho) {
  if (rho.rows() != rep.dim() || rho.cols() != rep.dim()) throw InvalidArgument("apply_channel: shape mismatch");
  if (rep.kind() == ChannelKind::kKraus) {
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (const auto& a : rep.operators()) out += a * rho * a.adjoint();
    return out;
  }
  return unvec(detail::to_superop(rep) * vec(rho), rep.dim());
}

/// Tr(R_idealᵀ R_noisy) / d².
inline double process_fidelity(const ChannelRep& noisy_ptm, const ChannelRep& ideal_unitary) {
  if (noisy_ptm.kind() != ChannelKind::kPtm) throw InvalidArgument("fidelity: noisy channel must be a PTM");
  if (noisy_ptm.n_qubits() != ideal_unitary.n_qubits()) throw InvalidArgument("fidelity: dimension mismatch");
  const RealMatrix ideal = ptm_from_unitary(ideal_unitary).real_matrix();
  const double d = static_cast<double>(noisy_ptm.dim());
  return (ideal.transpose() * noisy_ptm.real_matrix()).trace() / (d * d);
}

/// (d·F_pro + 1) / (d + 1).
inline double avg_gate_fidelity(const ChannelRep& noisy_ptm, const ChannelRep& ideal_unitary) {
  const double d = static_cast<double>(noisy_ptm.dim());
  return (d * process_fidelity(noisy_ptm, ideal_unitary) + 1.0) / (d + 1.0);
}

}  // namespace sspc
