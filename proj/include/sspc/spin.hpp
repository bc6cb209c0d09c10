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

// Two-nucleus one-electron spin register: Hamiltonians, control operators,
// transition analysis and piecewise-constant propagation.
//
// Units: Hamiltonians in MHz, slot durations in ns, U = exp(−i·2π·H·t).
// Tensor order is electron ⊗ nucleus 1 ⊗ nucleus 2.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "sspc/channel.hpp"
#include "sspc/linalg.hpp"

namespace sspc {

struct SpinSystemSpec {
  double gamma_e = 27.97;  ///< GHz/T, magnitude is used
  double gamma_n = 17.23;  ///< MHz/T
  double b0 = 1.33;        ///< T
  double a1 = 95.0;        ///< MHz
  double a2 = 9.0;         ///< MHz
  double b1_max = 1e-3;    ///< T

  static SpinSystemSpec lab() { return {}; }

  /// Lab constants with the electron term reduced 1000× and the nuclear
  /// and hyperfine terms 10×: γ_eB₀ ≈ 37.2 MHz, A₁ = 9.5 MHz, A₂ = 0.9 MHz.
  static SpinSystemSpec desk() { return {0.02797, 1.723, 1.33, 9.5, 0.9, 0.05}; }

  double electron_zeeman() const { return std::abs(gamma_e) * 1000.0 * b0; }  ///< MHz
  double nuclear_zeeman() const { return std::abs(gamma_n) * b0; }            ///< MHz
  double electron_gyro() const { return std::abs(gamma_e) * 1000.0; }         ///< MHz/T
  double nuclear_gyro() const { return std::abs(gamma_n); }                   ///< MHz/T
  double combination_line() const { return a1 + a2 + nuclear_zeeman(); }     ///< MHz

  void validate(Diagnostics* diag = nullptr) const {
    for (double v : {gamma_e, gamma_n, b0, a1, a2, b1_max}) {
      if (!std::isfinite(v)) throw InvalidArgument("SpinSystemSpec: non-finite field");
    }
    if (!(b0 > 0.0)) throw InvalidArgument("SpinSystemSpec: b0 must be positive");
    if (!(b1_max > 0.0)) throw InvalidArgument("SpinSystemSpec: b1_max must be positive");
    if (gamma_e == 0.0) throw InvalidArgument("SpinSystemSpec: gamma_e must be nonzero");
    if (electron_zeeman() < 10.0 * std::max(std::abs(a1), std::abs(a2))) {
      warn(diag, "electron Zeeman splitting is not large compared to the hyperfine couplings");
    }
  }
};

/// ½·Pauli on each factor of the 8-dimensional register.
struct SpinOperators {
  std::array<ComplexMatrix, 3> s, i1, i2;  ///< x, y, z components

  SpinOperators() {
    const Pauli axes[3] = {Pauli::X, Pauli::Y, Pauli::Z};
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    for (int k = 0; k < 3; ++k) {
      const ComplexMatrix half = 0.5 * pauli_matrix(axes[k]);
      s[k] = kron(kron(half, id), id);
      i1[k] = kron(kron(id, half), id);
      i2[k] = kron(kron(id, id), half);
    }
  }

  ComplexMatrix s_dot_i1() const { return s[0] * i1[0] + s[1] * i1[1] + s[2] * i1[2]; }
  ComplexMatrix s_dot_i2() const { return s[0] * i2[0] + s[1] * i2[1] + s[2] * i2[2]; }

  static ComplexMatrix raising(const std::array<ComplexMatrix, 3>& c) { return c[0] + kI * c[1]; }
};

inline ComplexMatrix drift_hamiltonian(const SpinSystemSpec& spec) {
  spec.validate();
  const SpinOperators op;
  return -spec.electron_zeeman() * op.s[2] - spec.nuclear_zeeman() * (op.i1[2] + op.i2[2]) +
         spec.a1 * op.s_dot_i1() + spec.a2 * op.s_dot_i2();
}

/// Secular part of the drift: diagonal in the computational basis.
inline ComplexMatrix ising_hamiltonian(const SpinSystemSpec& spec) {
  spec.validate();
  const SpinOperators op;
  return -spec.electron_zeeman() * op.s[2] - spec.nuclear_zeeman() * op.i1[2] -
         spec.nuclear_zeeman() * op.i2[2] + spec.a1 * op.s[2] * op.i1[2] + spec.a2 * op.s[2] * op.i2[2];
}

struct ControlTerm {
  std::string name;
  ComplexMatrix op;                   ///< MHz per T of amplitude
  std::optional<double> carrier_mhz;  ///< none: amplitude enters directly
  double phase = 0.0;                 ///< rad; factor cos(2π·f·t − phase)
  int group = 0;                      ///< terms sharing a physical field
};

/// Time-dependent factor of a control at time t (ns).
inline double carrier_factor(const ControlTerm& c, double t_ns) {
  if (!c.carrier_mhz) return 1.0;
  return std::cos(2.0 * std::numbers::pi * *c.carrier_mhz * t_ns * 1e-3 - c.phase);
}

struct Transition {
  int lower = 0;  ///< eigenvalue index, ascending order
  int upper = 0;
  double frequency = 0.0;  ///< MHz, λ_upper − λ_lower
  std::string tag;         ///< ESR, NMR1, NMR2 or forbidden
  double strength = 0.0;   ///< largest |⟨upper|O₊|lower⟩|² over single-spin raising/lowering
};

/// Every eigenvalue pair, sorted by frequency. Tags follow the single-spin
/// raising operator with the largest matrix element; below 0.25 the pair is
/// tagged forbidden.
inline std::vector<Transition> transition_frequencies(const ComplexMatrix& h) {
  if (h.rows() != 8 || h.cols() != 8 || !is_hermitian(h, 1e-9)) {
    throw InvalidArgument("transition_frequencies: expects an 8x8 Hermitian matrix");
  }
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const auto& lambda = es.eigenvalues();
  const ComplexMatrix& v = es.eigenvectors();
  const SpinOperators op;
  const std::array<std::pair<const char*, ComplexMatrix>, 3> raise = {
      std::pair{"ESR", SpinOperators::raising(op.s)}, std::pair{"NMR1", SpinOperators::raising(op.i1)},
      std::pair{"NMR2", SpinOperators::raising(op.i2)}};
  std::vector<Transition> out;
  for (int a = 0; a < 8; ++a) {
    for (int b = a + 1; b < 8; ++b) {
      Transition t{a, b, lambda(b) - lambda(a), "forbidden", 0.0};
      for (const auto& [name, rp] : raise) {
        const double up = std::norm(v.col(b).dot(rp * v.col(a)));
        const double down = std::norm(v.col(a).dot(rp * v.col(b)));
        const double s = std::max(up, down);
        if (s > t.strength) {
          t.strength = s;
          if (s >= 0.25) t.tag = name;
        }
      }
      if (t.strength < 0.25) t.tag = "forbidden";
      out.push_back(std::move(t));
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Transition& x, const Transition& y) { return x.frequency < y.frequency; });
  return out;
}

/// Allowed (non-forbidden) single-flip frequencies, sorted and deduplicated
/// within `tolerance`.
inline std::vector<double> single_flip_frequencies(const ComplexMatrix& h, double tolerance = 1e-6) {
  std::vector<double> f;
  for (const auto& t : transition_frequencies(h)) {
    if (t.tag == "forbidden") continue;
    if (f.empty() || t.frequency - f.back() > tolerance) f.push_back(t.frequency);
  }
  return f;
}

/// Non-modulated: four direct controls γ_e·S_{x,y}, γ_n·(I₁+I₂)_{x,y}.
/// Modulated: the combined transverse x field γ_e·S_x + γ_n·(I₁+I₂)_x,
/// one cosine and one sine quadrature per single-flip line of the drift.
inline std::vector<ControlTerm> control_operators(const SpinSystemSpec& spec, bool modulated) {
  spec.validate();
  const SpinOperators op;
  const double ge = spec.electron_gyro();
  const double gn = spec.nuclear_gyro();
  if (!modulated) {
    return {{"Bx_e", -ge * op.s[0], std::nullopt, 0.0, 0},
            {"By_e", -ge * op.s[1], std::nullopt, 0.0, 1},
            {"Bx_n", -gn * (op.i1[0] + op.i2[0]), std::nullopt, 0.0, 2},
            {"By_n", -gn * (op.i1[1] + op.i2[1]), std::nullopt, 0.0, 3}};
  }
  const ComplexMatrix c = -ge * op.s[0] - gn * (op.i1[0] + op.i2[0]);
  std::vector<ControlTerm> out;
  for (double f : single_flip_frequencies(drift_hamiltonian(spec))) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", f);
    out.push_back({std::string("cos@") + buf, c, f, 0.0, 0});
    out.push_back({std::string("sin@") + buf, c, f, std::numbers::pi / 2.0, 0});
  }
  return out;
}

/// Amplitudes in T, one row per control and one column per slot.
struct PulseSchedule {
  double dt = 10.0;  ///< ns
  RealMatrix amplitudes;
  std::vector<std::string> names;
  std::vector<std::optional<double>> carriers_mhz;
  std::vector<double> phases;
  std::vector<int> groups;

  static PulseSchedule zeros(const std::vector<ControlTerm>& controls, std::size_t n_slots, double dt_ns) {
    PulseSchedule s;
    s.dt = dt_ns;
    s.amplitudes = RealMatrix::Zero(static_cast<Eigen::Index>(controls.size()), static_cast<Eigen::Index>(n_slots));
    for (const auto& c : controls) {
      s.names.push_back(c.name);
      s.carriers_mhz.push_back(c.carrier_mhz);
      s.phases.push_back(c.phase);
      s.groups.push_back(c.group);
    }
    return s;
  }

  std::size_t n_controls() const { return static_cast<std::size_t>(amplitudes.rows()); }
  std::size_t n_slots() const { return static_cast<std::size_t>(amplitudes.cols()); }
  double total_time() const { return dt * static_cast<double>(n_slots()); }  ///< ns
  double slot_midpoint(std::size_t j) const { return (static_cast<double>(j) + 0.5) * dt; }

  double factor(std::size_t k, std::size_t j) const {
    if (!carriers_mhz[k]) return 1.0;
    return std::cos(2.0 * std::numbers::pi * *carriers_mhz[k] * slot_midpoint(j) * 1e-3 - phases[k]);
  }

  /// Field of control group g in slot j (T).
  RealVector group_waveform(int g) const {
    RealVector w = RealVector::Zero(static_cast<Eigen::Index>(n_slots()));
    for (std::size_t k = 0; k < n_controls(); ++k) {
      if (groups[k] != g) continue;
      for (std::size_t j = 0; j < n_slots(); ++j) w(static_cast<Eigen::Index>(j)) += amplitudes(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) * factor(k, j);
    }
    return w;
  }

  std::vector<int> distinct_groups() const {
    std::vector<int> g = groups;
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
  }

  void validate(std::optional<double> b1_max = std::nullopt) const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("PulseSchedule: dt must be positive");
    if (n_slots() == 0) throw InvalidArgument("PulseSchedule: at least one slot is required");
    const std::size_t k = n_controls();
    if (names.size() != k || carriers_mhz.size() != k || phases.size() != k || groups.size() != k) {
      throw InvalidArgument("PulseSchedule: control metadata does not match the amplitude rows");
    }
    if (!amplitudes.allFinite()) throw InvalidArgument("PulseSchedule: non-finite amplitude");
    if (b1_max && amplitudes.size() > 0 && amplitudes.cwiseAbs().maxCoeff() > *b1_max * (1.0 + 1e-12)) {
      throw InvalidArgument("PulseSchedule: amplitude exceeds b1_max");
    }
  }
};

namespace detail {

/// Eigendecomposition of one slot Hamiltonian and its propagator.
struct SlotPropagator {
  RealVector lambda;
  ComplexMatrix v;
  ComplexMatrix u;
};

inline SlotPropagator slot_propagator(const ComplexMatrix& h, double dt_ns) {
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  SlotPropagator s{es.eigenvalues(), es.eigenvectors(), {}};
  const double theta = 2.0 * std::numbers::pi * dt_ns * 1e-3;
  ComplexVector phase(s.lambda.size());
  for (Eigen::Index a = 0; a < phase.size(); ++a) phase(a) = std::exp(-kI * theta * s.lambda(a));
  s.u = s.v * phase.asDiagonal() * s.v.adjoint();
  return s;
}

inline ComplexMatrix slot_hamiltonian(const ComplexMatrix& drift, const std::vector<ComplexMatrix>& ops,
                                      const PulseSchedule& sched, std::size_t j) {
  ComplexMatrix h = drift;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const double a = sched.amplitudes(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) * sched.factor(k, j);
    if (a != 0.0) h += a * ops[k];
  }
  return h;
}

inline void check_propagation_inputs(const ComplexMatrix& drift, const std::vector<ComplexMatrix>& ops,
                                     const PulseSchedule& sched) {
  sched.validate();
  if (!is_hermitian(drift, 1e-9)) throw InvalidArgument("propagate: drift is not Hermitian");
  if (ops.size() != sched.n_controls()) throw InvalidArgument("propagate: control count mismatch");
  for (const auto& c : ops) {
    if (c.rows() != drift.rows() || c.cols() != drift.cols()) throw InvalidArgument("propagate: control dimension mismatch");
    if (!is_hermitian(c, 1e-9)) throw InvalidArgument("propagate: control operator is not Hermitian");
  }
}

}  // namespace detail

inline std::vector<ComplexMatrix> control_matrices(const std::vector<ControlTerm>& controls) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(controls.size());
  for (const auto& c : controls) ops.push_back(c.op);
  return ops;
}

/// U(T) = U_n ⋯ U_1 with U_j = exp(−i·2π·H_j·dt).
inline ComplexMatrix propagate(const ComplexMatrix& drift, const std::vector<ComplexMatrix>& ops,
                               const PulseSchedule& sched) {
  detail::check_propagation_inputs(drift, ops, sched);
  ComplexMatrix u = ComplexMatrix::Identity(drift.rows(), drift.cols());
  for (std::size_t j = 0; j < sched.n_slots(); ++j) {
    u = detail::slot_propagator(detail::slot_hamiltonian(drift, ops, sched, j), sched.dt).u * u;
  }
  return u;
}

inline ComplexMatrix propagate(const ComplexMatrix& drift, const std::vector<ControlTerm>& controls,
                               const PulseSchedule& sched) {
  return propagate(drift, control_matrices(controls), sched);
}

/// exp(−i·2π·H·t) for time t in ns.
inline ComplexMatrix evolve(const ComplexMatrix& h, double t_ns) {
  if (!is_hermitian(h, 1e-9)) throw InvalidArgument("evolve: Hamiltonian is not Hermitian");
  return detail::slot_propagator(h, t_ns).u;
}

}  // namespace sspc
