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

#include "sspc/clock.hpp"
#include "sspc/spectrum.hpp"

namespace sspc {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Clock, OddAWorkedCase) {
  const auto s = clock_solve(33.1, 698.1, {true, false}, 0.01);
  EXPECT_EQ(s.a, 6981);
  EXPECT_EQ(s.b, 331);
  EXPECT_NEAR(s.total_time, 231.0711, 1e-3);
  EXPECT_LE(s.residual, 1e-4);
}

TEST(Clock, ParityIsRespected) {
  const auto s = clock_solve(10.0, 30.0, {true, true}, 1e-6);
  EXPECT_EQ(s.a, 3);
  EXPECT_EQ(s.b, 1);
  const auto e = clock_solve(10.0, 30.0, {false, false}, 1e-6);
  EXPECT_EQ(e.a, 3);
  const auto even_b = clock_solve(10.0, 30.0, {true, false}, 1e-6);
  EXPECT_EQ(even_b.a, 3);
  EXPECT_EQ(even_b.b, 1);
}

TEST(Clock, BothOddSmallestSolution) {
  // t_a = π/95 µs, t_b = π/9 µs: 95·t_a = 9·t_b = π µs exactly.
  const auto s = clock_solve(1e3 * kPi / 95.0, 1e3 * kPi / 9.0, {true, true}, 0.01);
  EXPECT_EQ(s.a, 95);
  EXPECT_EQ(s.b, 9);
  EXPECT_NEAR(s.total_time, kPi, 1e-9);
}

TEST(Clock, NoSolutionWithinBound) {
  // Even multiples only: a odd and b odd with t_a = 2·t_b cannot match.
  EXPECT_THROW(clock_solve(2.0, 1.0, {true, true}, 0.01, 1000), NoSolution);
  EXPECT_THROW(clock_solve(-1.0, 1.0, {}, 0.01), InvalidArgument);
  EXPECT_THROW(clock_solve(1.0, 1.0, {}, 0.0), InvalidArgument);
}

TEST(Clock, ReportedFiguresAreFlagged) {
  const auto s = clock_solve(33.1, 698.1, {true, false}, 0.01);
  EXPECT_TRUE(compare_with_reported(s, 33.1, 6981, 231.07).matches);
  const auto d = compare_with_reported(s, 349.06, 887, 309.06);
  EXPECT_FALSE(d.matches);
  EXPECT_NE(d.message.find("309.616"), std::string::npos);
}

TEST(Spectrum, SineToneAppearsInItsBin) {
  const std::size_t n = 1000;
  const double dt = 10.0;  // ns, 0.1 MHz bins
  RealVector x(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) x(static_cast<Eigen::Index>(j)) = std::cos(2.0 * kPi * 3.2 * j * dt * 1e-3);
  const auto cs = sequence_spectrum(x, dt);
  ASSERT_EQ(cs.peaks.size(), 1u);
  EXPECT_EQ(cs.peaks[0].bin, 32u);
  EXPECT_NEAR(cs.peaks[0].frequency, 3.2, 1e-12);
  EXPECT_NEAR(cs.peaks[0].magnitude, 0.5, 1e-9);
  EXPECT_THROW(sequence_spectrum(RealVector::Zero(8), dt), InvalidArgument);
}

TEST(Spectrum, AssignmentUsesOneBinTolerance) {
  const auto spec = SpinSystemSpec::desk();
  const auto controls = control_operators(spec, false);
  auto sched = PulseSchedule::zeros(controls, 1000, 10.0);
  for (std::size_t j = 0; j < 1000; ++j) {
    sched.amplitudes(0, static_cast<Eigen::Index>(j)) = 0.01 * std::cos(2.0 * kPi * 5.0 * sched.slot_midpoint(j) * 1e-3);
  }
  const auto ps = pulse_spectrum(sched);
  EXPECT_NEAR(ps.resolution, 0.1, 1e-12);
  const auto hit = assign_peaks(ps, {5.05});
  ASSERT_EQ(hit.size(), 1u);
  EXPECT_TRUE(hit[0].explained);
  EXPECT_EQ(hit[0].group, 0);
  const auto miss = assign_peaks(ps, {5.3});
  EXPECT_FALSE(miss[0].explained);
}

TEST(Spectrum, ReferenceLinesIncludeCombinationLine) {
  const auto spec = SpinSystemSpec::desk();
  const auto lines = reference_lines(drift_hamiltonian(spec), spec);
  EXPECT_EQ(lines.size(), 29u);
  EXPECT_DOUBLE_EQ(lines.back(), spec.combination_line());
}

}  // namespace
}  // namespace sspc
