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

// Stochastic Pauli error channels and the projection of an arbitrary channel
// onto one by keeping only the diagonal of its χ matrix.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "sspc/channel.hpp"
#include "sspc/pauli.hpp"

namespace sspc {

/// p(s) for every n-qubit Pauli label s, stored densely in canonical order.
/// Index 0 (I…I) is the perfection rate.
class PauliErrorChannel {
 public:
  PauliErrorChannel() = default;

  /// Entries in [−1e-12, 0) are clipped to zero. A channel with no
  /// positive weight at all is rejected.
  PauliErrorChannel(int n_qubits, RealVector probs) : n_qubits_(n_qubits), probs_(std::move(probs)) {
    if (n_qubits < 1) throw InvalidArgument("PauliErrorChannel: n_qubits must be >= 1");
    if (static_cast<std::size_t>(probs_.size()) != pow4(n_qubits)) {
      throw InvalidArgument("PauliErrorChannel: expected 4^n probabilities");
    }
    for (Eigen::Index i = 0; i < probs_.size(); ++i) {
      double& p = probs_(i);
      if (!std::isfinite(p)) throw InvalidArgument("PauliErrorChannel: non-finite probability");
      if (p < -1e-12) {
        throw PhysicalityViolation("PauliErrorChannel: probability " + std::to_string(p) + " for " +
                                   pauli_label(static_cast<std::size_t>(i), n_qubits) + " is negative");
      }
      if (p < 0.0) p = 0.0;
    }
    if (!(probs_.maxCoeff() > 0.0)) throw InvalidArgument("PauliErrorChannel: all probabilities are zero");
  }

  static PauliErrorChannel identity(int n_qubits) {
    RealVector p = RealVector::Zero(static_cast<Eigen::Index>(pow4(n_qubits)));
    p(0) = 1.0;
    return {n_qubits, std::move(p)};
  }

  /// Single-qubit channel from (p_i, p_x, p_y, p_z).
  static PauliErrorChannel single(double pi, double px, double py, double pz) {
    RealVector p(4);
    p << pi, px, py, pz;
    return {1, std::move(p)};
  }

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return static_cast<std::size_t>(probs_.size()); }
  const RealVector& probs() const { return probs_; }

  double operator[](std::size_t index) const { return probs_(static_cast<Eigen::Index>(index)); }

  double prob(const PauliString& label) const {
    if (label.n_qubits() != n_qubits_) throw InvalidArgument("PauliErrorChannel: label length mismatch");
    return probs_(static_cast<Eigen::Index>(label.index()));
  }

  double prob(std::string_view label) const { return prob(PauliString::parse(label)); }

  double perfection_rate() const { return probs_(0); }
  double total() const { return probs_.sum(); }

 private:
  int n_qubits_ = 0;
  RealVector probs_;
};

/// a(j, k) = Tr(A_k P_j) / 2ⁿ: row j is the Pauli label, column k the Kraus
/// operator.
struct PauliCoefficientTable {
  int n_qubits = 0;
  ComplexMatrix coeffs;

  /// χ(j, l) = Σ_k a(j, k) a(l, k)*.
  ComplexMatrix chi() const { return coeffs * coeffs.adjoint(); }

  /// Σ_k a(j, k) P_j, i.e. the reconstructed k-th operator.
  ComplexMatrix reconstruct(Eigen::Index k, const std::vector<ComplexMatrix>& basis) const {
    const auto d = basis.front().rows();
    ComplexMatrix a = ComplexMatrix::Zero(d, d);
    for (Eigen::Index j = 0; j < coeffs.rows(); ++j) a += coeffs(j, k) * basis[static_cast<std::size_t>(j)];
    return a;
  }
};

inline PauliCoefficientTable pauli_coefficients(const ChannelRep& kraus) {
  if (kraus.kind() != ChannelKind::kKraus) throw InvalidArgument("pauli_coefficients: input must be a Kraus set");
  const auto tp = check_tp(kraus, 1e-6);
  if (!tp.trace_preserving) {
    throw PhysicalityViolation("pauli_coefficients: Kraus set is not trace preserving (residual " +
                               std::to_string(tp.residual) + ")");
  }
  const int n = kraus.n_qubits();
  const auto basis = pauli_basis(n);
  const auto& ops = kraus.operators();
  const double d = static_cast<double>(kraus.dim());
  PauliCoefficientTable t{n, ComplexMatrix(static_cast<Eigen::Index>(basis.size()),
                                           static_cast<Eigen::Index>(ops.size()))};
  for (std::size_t k = 0; k < ops.size(); ++k) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      t.coeffs(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
          (ops[k] * basis[j]).trace() / d;
    }
  }
  return t;
}

/// ‖χ − diag χ‖_F: the coherent part the projection throws away.
inline double chi_offdiagonal_mass(const PauliCoefficientTable& table) {
  ComplexMatrix chi = table.chi();
  chi.diagonal().setZero();
  return chi.norm();
}

namespace detail {

/// Clip tiny negatives, renormalize within 1e-6, reject anything worse.
inline PauliErrorChannel normalized_pauli_channel(int n, RealVector probs, Diagnostics* diag) {
  constexpr double kClip = 1e-6;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (probs(i) < -kClip) {
      throw PhysicalityViolation("Pauli probability " + std::to_string(probs(i)) + " for " +
                                 pauli_label(static_cast<std::size_t>(i), n) + " is below -1e-6");
    }
    if (probs(i) < 0.0) {
      warn(diag, "clipped Pauli probability " + std::to_string(probs(i)) + " for " +
                     pauli_label(static_cast<std::size_t>(i), n));
      probs(i) = 0.0;
    }
  }
  const double total = probs.sum();
  if (std::abs(total - 1.0) > kClip) {
    throw PhysicalityViolation("Pauli probabilities sum to " + std::to_string(total) +
                               "; channel is not trace preserving");
  }
  if (std::abs(total - 1.0) > 1e-12) {
    warn(diag, "renormalized Pauli probabilities (sum was " + std::to_string(total) + ")");
    probs /= total;
  }
  return {n, std::move(probs)};
}

}  // namespace detail

/// Diagonal of χ: p(s) = Σ_k |a(s, k)|².
inline PauliErrorChannel project_to_pauli_channel(const PauliCoefficientTable& table,
                                                  Diagnostics* diag = nullptr) {
  RealVector p = table.coeffs.cwiseAbs2().rowwise().sum();
  return detail::normalized_pauli_channel(table.n_qubits, std::move(p), diag);
}

inline PauliErrorChannel project_to_pauli_channel(const ChannelRep& kraus, Diagnostics* diag = nullptr) {
  return project_to_pauli_channel(pauli_coefficients(kraus), diag);
}

/// transpose(ideal) · experimental. The ideal PTM of a unitary is
/// orthogonal, so this strips the intended gate and leaves the error channel
/// that acts after it.
inline ChannelRep full_gst_matrix(const ChannelRep& ideal, const ChannelRep& experimental) {
  if (ideal.kind() != ChannelKind::kPtm || experimental.kind() != ChannelKind::kPtm) {
    throw InvalidArgument("full_gst_matrix: both inputs must be PTMs");
  }
  if (ideal.n_qubits() != experimental.n_qubits()) throw InvalidArgument("full_gst_matrix: dimension mismatch");
  return ChannelRep::ptm(ideal.real_matrix().transpose() * experimental.real_matrix());
}

/// Diagonal PTM of a Pauli channel: λ_t = Σ_s p_s (±1 as P_s, P_t commute).
inline ChannelRep ptm_from_pauli_channel(const PauliErrorChannel& ch) {
  const auto n4 = static_cast<Eigen::Index>(ch.size());
  RealMatrix r = RealMatrix::Zero(n4, n4);
  for (Eigen::Index t = 0; t < n4; ++t) {
    double lambda = 0.0;
    for (Eigen::Index s = 0; s < n4; ++s) {
      const bool commute =
          paulis_commute(static_cast<std::size_t>(s), static_cast<std::size_t>(t), ch.n_qubits());
      lambda += (commute ? 1.0 : -1.0) * ch.probs()(s);
    }
    r(t, t) = lambda;
  }
  return ChannelRep::ptm(r);
}

/// Kraus form √p_s P_s (zero-probability labels omitted).
inline ChannelRep kraus_from_pauli_channel(const PauliErrorChannel& ch) {
  const auto basis = pauli_basis(ch.n_qubits());
  std::vector<ComplexMatrix> ops;
  for (std::size_t s = 0; s < ch.size(); ++s) {
    if (ch[s] > 0.0) ops.push_back(std::sqrt(ch[s]) * basis[s]);
  }
  return ChannelRep::kraus(std::move(ops));
}

/// Result of the PTM → Kraus → Pauli-channel pipeline.
struct ErrorAnalysis {
  ChannelRep full_gst;            ///< ideal-inverted PTM
  double min_choi_eigenvalue;     ///< complete-positivity witness
  ChannelRep kraus;               ///< Choi-eigenbasis Kraus set
  TpCheck completeness;           ///< Σ A†A = I check
  PauliCoefficientTable coefficients;
  PauliErrorChannel channel;
  double offdiagonal_mass;        ///< ‖χ − diag χ‖_F
  std::vector<std::string> warnings;
};

/// Ideal + experimental PTM → error channel after the ideal gate.
///
/// Throws NotCompletelyPositive when the full-GST matrix is not CP, and
/// PhysicalityViolation when the extracted Kraus set fails completeness at
/// 1e-6.
inline ErrorAnalysis analyze_gate(const ChannelRep& ideal_ptm, const ChannelRep& experimental_ptm) {
  Diagnostics diag;
  ChannelRep full = full_gst_matrix(ideal_ptm, experimental_ptm);
  const double min_eig = min_choi_eigenvalue(full);
  ChannelRep kraus = convert(full, ChannelKind::kKraus, &diag);
  const TpCheck tp = check_tp(kraus, 1e-6);
  PauliCoefficientTable table = pauli_coefficients(kraus);
  PauliErrorChannel ch = project_to_pauli_channel(table, &diag);
  const double off = chi_offdiagonal_mass(table);
  return {std::move(full), min_eig, std::move(kraus), tp, std::move(table), std::move(ch), off,
          std::move(diag.warnings)};
}

}  // namespace sspc
