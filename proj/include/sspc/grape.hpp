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

// Gradient ascent pulse engineering with exact slot derivatives and a
// box-projected limited-memory quasi-Newton update.

#pragma once

#include <cstdint>
#include <deque>
#include <random>
#include <vector>

#include "sspc/spin.hpp"

namespace sspc {

enum class GrapeInit {
  kRandom,    ///< uniform in ±init_scale·b1_max
  kResonant,  ///< π-pulse tones on the allowed transitions the target exchanges, plus the random term
};

struct GrapeOptions {
  std::size_t n_slots = 1000;
  double dt = 10.0;  ///< ns
  std::size_t max_iter = 500;
  double target_fidelity = 0.999;  ///< stop once reached; converged flag threshold
  double gradient_tol = 1e-10;     ///< projected-gradient stop (normalized units)
  std::optional<double> b1_max;    ///< overrides SpinSystemSpec::b1_max
  bool modulated = false;
  std::uint64_t seed = 20240607;
  GrapeInit init = GrapeInit::kRandom;
  double init_scale = 0.0;         ///< random initial term, fraction of b1_max
  std::size_t segment_slots = 1;   ///< slots sharing one amplitude parameter
  std::size_t memory = 12;         ///< quasi-Newton history length
};

struct GrapeResult {
  PulseSchedule schedule;
  double fidelity = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> history;  ///< fidelity after each accepted step, starting with the initial point
};

/// |Tr(W†U)|² / d².
inline double gate_fidelity(const ComplexMatrix& target, const ComplexMatrix& u) {
  const double d = static_cast<double>(u.rows());
  return std::norm((target.adjoint() * u).trace()) / (d * d);
}

/// Fidelity and exact gradient of a fixed drift/control/target triple as a
/// function of the amplitude matrix (K × n_slots, in T).
class GrapeObjective {
 public:
  GrapeObjective(ComplexMatrix drift, std::vector<ControlTerm> controls, ComplexMatrix target, PulseSchedule shape)
      : drift_(std::move(drift)), controls_(std::move(controls)), ops_(control_matrices(controls_)),
        target_(std::move(target)), shape_(std::move(shape)) {
    if (!is_unitary(target_, 1e-9)) throw InvalidArgument("grape: target is not unitary");
    if (target_.rows() != drift_.rows()) throw InvalidArgument("grape: target dimension does not match the drift");
    detail::check_propagation_inputs(drift_, ops_, shape_);
  }

  const PulseSchedule& shape() const { return shape_; }
  const std::vector<ControlTerm>& controls() const { return controls_; }
  const ComplexMatrix& drift() const { return drift_; }
  const ComplexMatrix& target() const { return target_; }

  PulseSchedule with(const RealMatrix& amplitudes) const {
    PulseSchedule s = shape_;
    s.amplitudes = amplitudes;
    return s;
  }

  double fidelity(const RealMatrix& amplitudes) const {
    return gate_fidelity(target_, propagate(drift_, ops_, with(amplitudes)));
  }

  /// Returns f and writes ∂f/∂u_kj into grad.
  double fidelity_and_gradient(const RealMatrix& amplitudes, RealMatrix& grad) const {
    const PulseSchedule s = with(amplitudes);
    const std::size_t n = s.n_slots();
    const std::size_t k_count = s.n_controls();
    const Eigen::Index d = drift_.rows();
    const double theta = 2.0 * std::numbers::pi * s.dt * 1e-3;

    std::vector<detail::SlotPropagator> slots;
    slots.reserve(n);
    std::vector<ComplexMatrix> prefix;  // prefix[j] = U_j ⋯ U_1, prefix[0] = I
    prefix.reserve(n + 1);
    prefix.push_back(ComplexMatrix::Identity(d, d));
    for (std::size_t j = 0; j < n; ++j) {
      slots.push_back(detail::slot_propagator(detail::slot_hamiltonian(drift_, ops_, s, j), s.dt));
      prefix.push_back(slots.back().u * prefix.back());
    }
    const Complex tau = (target_.adjoint() * prefix.back()).trace();
    const double dd = static_cast<double>(d * d);

    grad.setZero(static_cast<Eigen::Index>(k_count), static_cast<Eigen::Index>(n));
    ComplexMatrix back = target_.adjoint();  // W† U_n ⋯ U_{j+1}
    ComplexMatrix g(d, d);
    for (std::size_t jj = n; jj-- > 0;) {
      const auto& sp = slots[jj];
      // Daleckii–Krein kernel of exp(−iθH).
      for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
          const double la = sp.lambda(a), lb = sp.lambda(b);
          const double x = 0.5 * theta * (la - lb);
          const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
          g(a, b) = -kI * theta * std::exp(-kI * 0.5 * theta * (la + lb)) * sinc;
        }
      }
      // dτ = Tr(M' ∘ᵀ (G ∘ V†CV)) with M' = V†·prefix·back·V.
      const ComplexMatrix mp = sp.v.adjoint() * prefix[jj] * back * sp.v;
      const ComplexMatrix p = mp.transpose().cwiseProduct(g);
      const ComplexMatrix q = sp.v.conjugate() * p * sp.v.transpose();  // dτ_k = Σ q ∘ C_k
      for (std::size_t k = 0; k < k_count; ++k) {
        const double fac = s.factor(k, jj);
        if (fac == 0.0) continue;
        const Complex dtau = q.cwiseProduct(ops_[k]).sum();
        grad(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(jj)) =
            2.0 * (std::conj(tau) * dtau).real() / dd * fac;
      }
      back = back * sp.u;
    }
    return std::norm(tau) / dd;
  }

 private:
  ComplexMatrix drift_;
  std::vector<ControlTerm> controls_;
  std::vector<ComplexMatrix> ops_;
  ComplexMatrix target_;
  PulseSchedule shape_;
};

namespace detail {

/// Amplitudes from normalized parameters z ∈ [−1, 1]^(K·segments).
inline RealMatrix expand_parameters(const RealVector& z, std::size_t k_count, std::size_t n_slots,
                                    std::size_t seg, double b1) {
  const std::size_t n_seg = (n_slots + seg - 1) / seg;
  RealMatrix u(static_cast<Eigen::Index>(k_count), static_cast<Eigen::Index>(n_slots));
  for (std::size_t k = 0; k < k_count; ++k) {
    for (std::size_t j = 0; j < n_slots; ++j) {
      u(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = b1 * z(static_cast<Eigen::Index>(k * n_seg + j / seg));
    }
  }
  return u;
}

inline RealVector reduce_gradient(const RealMatrix& grad, std::size_t seg, double b1) {
  const auto k_count = static_cast<std::size_t>(grad.rows());
  const auto n_slots = static_cast<std::size_t>(grad.cols());
  const std::size_t n_seg = (n_slots + seg - 1) / seg;
  RealVector g = RealVector::Zero(static_cast<Eigen::Index>(k_count * n_seg));
  for (std::size_t k = 0; k < k_count; ++k) {
    for (std::size_t j = 0; j < n_slots; ++j) {
      g(static_cast<Eigen::Index>(k * n_seg + j / seg)) += b1 * grad(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
    }
  }
  return g;
}

inline RealVector project_box(RealVector z) { return z.cwiseMax(-1.0).cwiseMin(1.0); }

/// Component i is pinned when it sits on a bound and ascent points outward.
inline std::vector<bool> free_mask(const RealVector& z, const RealVector& g) {
  std::vector<bool> free(static_cast<std::size_t>(z.size()));
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const bool pinned = (z(i) >= 1.0 && g(i) > 0.0) || (z(i) <= -1.0 && g(i) < 0.0);
    free[static_cast<std::size_t>(i)] = !pinned;
  }
  return free;
}

inline RealVector masked(RealVector v, const std::vector<bool>& free) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!free[static_cast<std::size_t>(i)]) v(i) = 0.0;
  }
  return v;
}

}  // namespace detail

/// Constant-envelope tones, one per allowed transition (a, b) of the drift
/// with |⟨b|W|a⟩|² ≥ ½, each sized for a π rotation over the whole schedule
/// under the rotating-wave approximation. Direct controls carry
/// B·cos(2πft); carrier controls at f with zero phase carry B.
inline RealMatrix resonant_guess(const ComplexMatrix& target, const SpinSystemSpec& spec,
                                 const std::vector<ControlTerm>& controls, std::size_t n_slots, double dt_ns) {
  const ComplexMatrix h = drift_hamiltonian(spec);
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const ComplexMatrix& v = es.eigenvectors();
  const double total_us = static_cast<double>(n_slots) * dt_ns * 1e-3;
  RealMatrix u = RealMatrix::Zero(static_cast<Eigen::Index>(controls.size()), static_cast<Eigen::Index>(n_slots));
  for (const auto& t : transition_frequencies(h)) {
    if (t.tag == "forbidden") continue;
    if (std::norm(v.col(t.upper).dot(target * v.col(t.lower))) < 0.5) continue;
    const bool electron = t.tag == "ESR";
    for (std::size_t k = 0; k < controls.size(); ++k) {
      const auto& c = controls[k];
      const bool direct_match = !c.carrier_mhz && c.group == (electron ? 0 : 2);
      const bool carrier_match = c.carrier_mhz && std::abs(*c.carrier_mhz - t.frequency) < 1e-6 && c.phase == 0.0;
      if (!direct_match && !carrier_match) continue;
      const double coupling = std::abs(v.col(t.upper).dot(c.op * v.col(t.lower)));
      if (coupling < 1e-12) continue;
      const double amp = 1.0 / (2.0 * coupling * total_us);
      for (std::size_t j = 0; j < n_slots; ++j) {
        const double tj = (static_cast<double>(j) + 0.5) * dt_ns;
        const double f = direct_match ? std::cos(2.0 * std::numbers::pi * t.frequency * tj * 1e-3) : 1.0;
        u(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) += amp * f;
      }
    }
  }
  return u;
}

/// Maximizes gate_fidelity(target, propagate(...)). Best-so-far fidelity is
/// non-decreasing: a step is kept only if it passes the Armijo test.
inline GrapeResult grape_optimize(const ComplexMatrix& target, const SpinSystemSpec& spec, const GrapeOptions& opts) {
  spec.validate();
  if (opts.n_slots == 0 || !(opts.dt > 0.0)) throw InvalidArgument("grape: n_slots and dt must be positive");
  if (opts.segment_slots == 0) throw InvalidArgument("grape: segment_slots must be positive");
  const double b1 = opts.b1_max.value_or(spec.b1_max);
  if (!(b1 > 0.0)) throw InvalidArgument("grape: b1_max must be positive");
  if (target.rows() != 8 || target.cols() != 8) throw InvalidArgument("grape: target must be 8x8");

  const auto controls = control_operators(spec, opts.modulated);
  const GrapeObjective obj(drift_hamiltonian(spec), controls, target,
                           PulseSchedule::zeros(controls, opts.n_slots, opts.dt));
  const std::size_t k_count = controls.size();
  const std::size_t seg = opts.segment_slots;
  const std::size_t n_seg = (opts.n_slots + seg - 1) / seg;

  RealVector z = RealVector::Zero(static_cast<Eigen::Index>(k_count * n_seg));
  if (opts.init == GrapeInit::kResonant) {
    const RealMatrix guess = resonant_guess(target, spec, controls, opts.n_slots, opts.dt);
    for (std::size_t k = 0; k < k_count; ++k) {
      for (std::size_t j = 0; j < opts.n_slots; j += seg) {
        z(static_cast<Eigen::Index>(k * n_seg + j / seg)) = guess(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) / b1;
      }
    }
  }
  if (opts.init_scale > 0.0) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> uni(-opts.init_scale, opts.init_scale);
    for (auto& v : z) v += uni(rng);
  }
  z = detail::project_box(z);

  // Ascent on f: g is ∇f in normalized parameters.
  const auto evaluate = [&](const RealVector& zz, RealVector& gout) {
    RealMatrix grad;
    const double f = obj.fidelity_and_gradient(detail::expand_parameters(zz, k_count, opts.n_slots, seg, b1), grad);
    gout = detail::reduce_gradient(grad, seg, b1);
    return f;
  };
  const auto value = [&](const RealVector& zz) {
    return obj.fidelity(detail::expand_parameters(zz, k_count, opts.n_slots, seg, b1));
  };

  GrapeResult res;
  RealVector g;
  double f = evaluate(z, g);
  res.history.push_back(f);
  std::deque<std::pair<RealVector, RealVector>> mem;  // (s, y) pairs for −f

  std::size_t it = 0;
  while (it < opts.max_iter && f < opts.target_fidelity) {
    const auto free = detail::free_mask(z, g);
    const RealVector gf = detail::masked(g, free);
    if (gf.lpNorm<Eigen::Infinity>() <= opts.gradient_tol) break;

    // Two-loop recursion on φ = −f, restricted to free components.
    RealVector q = -gf;
    std::vector<double> alpha(mem.size());
    for (std::size_t i = mem.size(); i-- > 0;) {
      const auto& [s, y] = mem[i];
      const double rho = 1.0 / y.dot(s);
      alpha[i] = rho * detail::masked(s, free).dot(q);
      q -= alpha[i] * detail::masked(y, free);
    }
    if (!mem.empty()) {
      const auto& [s, y] = mem.back();
      q *= s.dot(y) / y.dot(y);
    }
    for (std::size_t i = 0; i < mem.size(); ++i) {
      const auto& [s, y] = mem[i];
      const double rho = 1.0 / y.dot(s);
      const double beta = rho * detail::masked(y, free).dot(q);
      q += (alpha[i] - beta) * detail::masked(s, free);
    }
    RealVector dir = -detail::masked(q, free);  // ascent direction on f
    double step = 1.0;
    if (mem.empty() || dir.dot(gf) <= 0.0) {
      mem.clear();
      dir = gf;
      step = 0.1 / std::max(dir.lpNorm<Eigen::Infinity>(), 1e-300);
    }

    bool accepted = false;
    RealVector z_new, g_new;
    double f_new = f;
    for (int tries = 0; tries < 40; ++tries) {
      z_new = detail::project_box(z + step * dir);
      const RealVector dz = z_new - z;
      const double f_try = value(z_new);
      if (f_try >= f + 1e-4 * g.dot(dz) && f_try > f) {
        f_new = evaluate(z_new, g_new);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (mem.empty()) break;
      mem.clear();
      continue;
    }
    const RealVector s = z_new - z;
    const RealVector y = g - g_new;  // ∇φ_new − ∇φ_old
    if (s.dot(y) > 1e-12 * s.norm() * y.norm()) {
      mem.emplace_back(s, y);
      if (mem.size() > opts.memory) mem.pop_front();
    }
    z = std::move(z_new);
    g = std::move(g_new);
    f = f_new;
    ++it;
    res.history.push_back(f);
  }

  res.schedule = obj.with(detail::expand_parameters(z, k_count, opts.n_slots, seg, b1));
  res.fidelity = f;
  res.iterations = it;
  res.converged = f >= opts.target_fidelity;
  return res;
}

}  // namespace sspc
