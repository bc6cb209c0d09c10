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

#include <gtest/gtest.h>

#include <random>

#include "sspc/grape.hpp"
#include "sspc/sspc_gates.hpp"

namespace sspc {
namespace {

RealMatrix random_amplitudes(std::size_t k, std::size_t n, double scale, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  RealMatrix a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = u(rng);
  return a;
}

void expect_gradient_matches_differences(bool modulated) {
  const auto spec = SpinSystemSpec::desk();
  const auto controls = control_operators(spec, modulated);
  const std::size_t n = 30;
  const GrapeObjective obj(drift_hamiltonian(spec), controls, u_zz(), PulseSchedule::zeros(controls, n, 10.0));
  const RealMatrix amps = random_amplitudes(controls.size(), n, spec.b1_max, 77);
  RealMatrix grad;
  const double f0 = obj.fidelity_and_gradient(amps, grad);
  EXPECT_NEAR(f0, obj.fidelity(amps), 1e-14);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Eigen::Index> pick(0, amps.size() - 1);
  const double h = 1e-7;
  for (int probe = 0; probe < 20; ++probe) {
    const Eigen::Index i = pick(rng);
    RealMatrix up = amps, dn = amps;
    up.data()[i] += h;
    dn.data()[i] -= h;
    const double fd = (obj.fidelity(up) - obj.fidelity(dn)) / (2.0 * h);
    const double an = grad.data()[i];
    const double scale = std::max(std::abs(fd), 1e-3 * grad.cwiseAbs().maxCoeff());
    EXPECT_LE(std::abs(an - fd) / scale, 1e-4) << "entry " << i << " analytic " << an << " fd " << fd;
  }
}

TEST(GrapeGradient, DirectControlsMatchFiniteDifferences) { expect_gradient_matches_differences(false); }

TEST(GrapeGradient, ModulatedControlsMatchFiniteDifferences) { expect_gradient_matches_differences(true); }

TEST(GrapeFidelity, PhaseInvariantAndBounded) {
  const ComplexMatrix w = u_xx();
  EXPECT_NEAR(gate_fidelity(w, w), 1.0, 1e-14);
  EXPECT_NEAR(gate_fidelity(w, std::polar(1.0, 0.7) * w), 1.0, 1e-14);
  EXPECT_LE(gate_fidelity(w, u_zz()), 1.0);
}

TEST(GrapeOptimize, DriftTargetIsReachedWithoutIterations) {
  const auto spec = SpinSystemSpec::desk();
  GrapeOptions opts;
  opts.n_slots = 50;
  opts.dt = 10.0;
  const ComplexMatrix target = evolve(drift_hamiltonian(spec), 500.0);
  const auto r = grape_optimize(target, spec, opts);
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.fidelity, 1.0, 1e-10);
}

TEST(GrapeOptimize, HistoryIsMonotoneAndBoxRespected) {
  const auto spec = SpinSystemSpec::desk();
  GrapeOptions opts;
  opts.n_slots = 100;
  opts.max_iter = 8;
  opts.init_scale = 0.5;
  opts.target_fidelity = 0.9999;
  const auto r = grape_optimize(u_zz(), spec, opts);
  ASSERT_GE(r.history.size(), 2u);
  for (std::size_t i = 1; i < r.history.size(); ++i) EXPECT_GE(r.history[i], r.history[i - 1]);
  EXPECT_LE(r.schedule.amplitudes.cwiseAbs().maxCoeff(), spec.b1_max * (1.0 + 1e-12));
  EXPECT_NEAR(r.fidelity, r.history.back(), 1e-12);
  EXPECT_LE(r.iterations, 8u);
}

TEST(GrapeOptimize, SeedMakesRunsReproducible) {
  const auto spec = SpinSystemSpec::desk();
  GrapeOptions opts;
  opts.n_slots = 60;
  opts.max_iter = 3;
  opts.init_scale = 0.3;
  const auto a = grape_optimize(u_zz(), spec, opts);
  const auto b = grape_optimize(u_zz(), spec, opts);
  EXPECT_EQ(a.fidelity, b.fidelity);
  EXPECT_EQ(a.schedule.amplitudes, b.schedule.amplitudes);
}

TEST(GrapeOptimize, RejectsBadOptions) {
  const auto spec = SpinSystemSpec::desk();
  GrapeOptions opts;
  opts.n_slots = 0;
  EXPECT_THROW(grape_optimize(u_zz(), spec, opts), InvalidArgument);
  opts.n_slots = 10;
  EXPECT_THROW(grape_optimize(ComplexMatrix::Identity(4, 4), spec, opts), InvalidArgument);
  EXPECT_THROW(grape_optimize(ComplexMatrix(2.0 * ComplexMatrix::Identity(8, 8)), spec, opts), InvalidArgument);
}

}  // namespace
}  // namespace sspc
