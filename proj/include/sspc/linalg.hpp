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

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "sspc/error.hpp"

namespace sspc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

namespace tol {
inline constexpr double kPhysicality = 1e-8;
inline constexpr double kRoundTrip = 1e-9;
inline constexpr double kUnitarity = 1e-10;
inline constexpr double kKrausCutoff = 1e-10;
inline constexpr double kPtmImaginary = 1e-10;
}  // namespace tol

/// 2^n with overflow guard for the register sizes this library handles.
inline std::size_t pow2(int n) {
  if (n < 0 || n > 30) throw InvalidArgument("pow2: exponent out of range");
  return std::size_t{1} << n;
}

inline std::size_t pow4(int n) {
  if (n < 0 || n > 15) throw InvalidArgument("pow4: exponent out of range");
  return std::size_t{1} << (2 * n);
}

/// Largest absolute entry; zero for empty matrices.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

inline ComplexMatrix kron(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) throw InvalidArgument("kron: empty factor list");
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

/// ‖U†U − I‖_max.
inline double unitarity_residual(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return INFINITY;
  const auto n = u.rows();
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(n, n));
}

inline bool is_unitary(const ComplexMatrix& u, double tolerance = tol::kUnitarity) {
  return u.rows() == u.cols() && unitarity_residual(u) <= tolerance;
}

inline bool is_hermitian(const ComplexMatrix& h, double tolerance = 1e-12) {
  return h.rows() == h.cols() && max_abs(h - h.adjoint()) <= tolerance;
}

/// min over θ of max_ij |a_ij − e^{iθ} b_ij|.
///
/// The optimal phase for the Frobenius norm, arg Tr(b†a), is used as the
/// starting point and refined by a golden-section search on the max-norm,
/// which is what the equality checks are stated in.
inline double phase_insensitive_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("phase_insensitive_distance: shape mismatch");
  }
  const Complex overlap = (b.adjoint() * a).trace();
  const double theta0 = std::abs(overlap) > 0.0 ? std::arg(overlap) : 0.0;
  auto dist = [&](double theta) { return max_abs(a - std::polar(1.0, theta) * b); };
  double lo = theta0 - 0.5, hi = theta0 + 0.5;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = dist(x1), f2 = dist(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - g * (hi - lo); f1 = dist(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + g * (hi - lo); f2 = dist(x2);
    }
  }
  return std::min({dist(theta0), f1, f2});
}

/// Column-stacking vectorization: vec(ρ)[i + d·j] = ρ(i, j).
inline ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

inline ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows) {
  if (rows <= 0 || v.size() % rows != 0) throw InvalidArgument("unvec: bad shape");
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, v.size() / rows);
}

/// Integer square root for dimension bookkeeping (d² → d).
inline Eigen::Index isqrt_exact(Eigen::Index n) {
  auto r = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (r * r != n) throw InvalidArgument("dimension is not a perfect square");
  return r;
}

/// log2 of a power-of-two dimension, or throws.
inline int log2_exact(Eigen::Index d) {
  if (d <= 0) throw InvalidArgument("dimension must be positive");
  int n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  if ((Eigen::Index{1} << n) != d) throw InvalidArgument("dimension is not a power of two");
  return n;
}

}  // namespace sspc
