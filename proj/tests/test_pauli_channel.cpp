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

#include "sspc/pauli_channel.hpp"
#include "test_util.hpp"

namespace sspc {
namespace {

ErrorAnalysis tutorial_x() {
  return analyze_gate(ChannelRep::ptm(test::sqrtx_ideal()), ChannelRep::ptm(test::sqrtx_experimental()));
}
ErrorAnalysis tutorial_y() {
  return analyze_gate(ChannelRep::ptm(test::sqrty_ideal()), ChannelRep::ptm(test::sqrty_experimental()));
}

TEST(PauliCoefficients, IdentityKraus) {
  const auto t = pauli_coefficients(ChannelRep::kraus({ComplexMatrix::Identity(2, 2)}));
  EXPECT_NEAR(std::abs(t.coeffs(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_LT(t.coeffs.bottomRows(3).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PauliCoefficients, ReconstructionAndNormalization) {
  std::mt19937_64 rng(23);
  for (int n = 1; n <= 3; ++n) {
    const ChannelRep k = test::random_cptp(n, 3, rng);
    const auto t = pauli_coefficients(k);
    const auto basis = pauli_basis(n);
    for (Eigen::Index c = 0; c < t.coeffs.cols(); ++c) {
      EXPECT_LT(max_abs(t.reconstruct(c, basis) - k.operators()[static_cast<std::size_t>(c)]), 1e-10);
    }
    EXPECT_NEAR(t.coeffs.cwiseAbs2().sum(), 1.0, 1e-6);
  }
}

TEST(PauliCoefficients, RejectsNonTracePreservingSet) {
  EXPECT_THROW(pauli_coefficients(ChannelRep::kraus({ComplexMatrix(0.9 * ComplexMatrix::Identity(2, 2))})),
               PhysicalityViolation);
}

TEST(PauliCoefficients, DominantTutorialOperatorMatchesPublishedMagnitudes) {
  // The leading Kraus operator is fixed up to a global phase, so compare
  // coefficient magnitudes.
  const auto an = tutorial_x();
  const Eigen::VectorXcd a = an.coefficients.coeffs.col(0);
  EXPECT_NEAR(std::abs(a(0)), std::abs(Complex(-0.98633, 0.01309)), 2e-4);
  EXPECT_NEAR(std::abs(a(1)), std::abs(Complex(-0.00046, -0.00713)), 2e-4);
  EXPECT_NEAR(std::abs(a(2)), std::abs(Complex(0.00719, 0.01287)), 2e-4);
  EXPECT_NEAR(std::abs(a(3)), std::abs(Complex(0.0035, -0.01309)), 2e-4);
}

TEST(Projection, TutorialSqrtX) {
  const auto an = tutorial_x();
  EXPECT_NEAR(an.channel.prob("I"), 0.973023, 1e-4);
  EXPECT_NEAR(an.channel.prob("X"), 0.020194, 1e-4);
  EXPECT_NEAR(an.channel.prob("Y"), 0.001325, 1e-4);
  EXPECT_NEAR(an.channel.prob("Z"), 0.005458, 1e-4);
  EXPECT_NEAR(an.channel.total(), 1.0, 1e-6);
  EXPECT_GT(an.offdiagonal_mass, 0.0);
}

TEST(Projection, TutorialSqrtY) {
  const auto an = tutorial_y();
  EXPECT_NEAR(an.channel.prob("I"), 0.97787447, 1e-4);
  EXPECT_NEAR(an.channel.prob("X"), 0.00671927, 1e-4);
  EXPECT_NEAR(an.channel.prob("Y"), 0.01240868, 1e-4);
  EXPECT_NEAR(an.channel.prob("Z"), 0.00299758, 1e-4);
}

TEST(Projection, PerfectionRateDoesNotExceedAverageFidelity) {
  for (const auto& an : {tutorial_x(), tutorial_y()}) {
    const double f = avg_gate_fidelity(an.full_gst, ChannelRep::unitary(ComplexMatrix::Identity(2, 2)));
    EXPECT_LE(an.channel.perfection_rate(), f);
  }
}

TEST(Projection, EqualsChiDiagonal) {
  std::mt19937_64 rng(29);
  const ChannelRep k = test::random_cptp(2, 3, rng);
  const auto ch = project_to_pauli_channel(k);
  const ComplexMatrix chi = convert(k, ChannelKind::kChi).matrix();
  for (Eigen::Index s = 0; s < 16; ++s) EXPECT_NEAR(ch.probs()(s), chi(s, s).real(), 1e-10);
}

TEST(Projection, InvariantUnderKrausGauge) {
  std::mt19937_64 rng(31);
  const ChannelRep k = convert(test::random_cptp(2, 4, rng), ChannelKind::kKraus);
  const auto& ops = k.operators();
  const ComplexMatrix mix = test::random_unitary(static_cast<Eigen::Index>(ops.size()), rng);
  std::vector<ComplexMatrix> mixed;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    ComplexMatrix b = ComplexMatrix::Zero(4, 4);
    for (std::size_t j = 0; j < ops.size(); ++j) b += mix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * ops[j];
    mixed.push_back(b);
  }
  const auto a = project_to_pauli_channel(k);
  const auto b = project_to_pauli_channel(ChannelRep::kraus(mixed));
  EXPECT_LT((a.probs() - b.probs()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Projection, PauliChannelIsAFixedPoint) {
  RealVector p(16);
  p << 0.9, 0.01, 0.0, 0.02, 0.005, 0.0, 0.01, 0.0, 0.015, 0.0, 0.0, 0.01, 0.02, 0.0, 0.01, 0.0;
  const PauliErrorChannel ch(2, p);
  const auto back = project_to_pauli_channel(kraus_from_pauli_channel(ch));
  EXPECT_LT((back.probs() - p).cwiseAbs().maxCoeff(), 1e-12);
  const auto via_ptm = project_to_pauli_channel(convert(ptm_from_pauli_channel(ch), ChannelKind::kKraus));
  EXPECT_LT((via_ptm.probs() - p).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Projection, IdentityChannel) {
  const auto ch = project_to_pauli_channel(ChannelRep::kraus({ComplexMatrix::Identity(4, 4)}));
  EXPECT_DOUBLE_EQ(ch.perfection_rate(), 1.0);
  EXPECT_DOUBLE_EQ(ch.total(), 1.0);
}

TEST(Projection, NegativeProbabilitiesAreClippedOrRejected) {
  Diagnostics diag;
  RealVector p(4);
  p << 1.0 + 5e-7, 0.0, -5e-7, 0.0;
  const auto ch = detail::normalized_pauli_channel(1, p, &diag);
  EXPECT_EQ(ch.prob("Y"), 0.0);
  EXPECT_FALSE(diag.warnings.empty());
  p << 1.0 + 1e-5, 0.0, -1e-5, 0.0;
  EXPECT_THROW(detail::normalized_pauli_channel(1, p, nullptr), PhysicalityViolation);
}

TEST(FullGst, IdealPairGivesIdentityAndTutorialEntry) {
  const ChannelRep ideal = ChannelRep::ptm(test::sqrtx_ideal());
  EXPECT_LT(max_abs(full_gst_matrix(ideal, ideal).real_matrix() - RealMatrix::Identity(4, 4)), 1e-15);
  const RealMatrix f = full_gst_matrix(ideal, ChannelRep::ptm(test::sqrtx_experimental())).real_matrix();
  EXPECT_NEAR(f(1, 1), 0.9864307, 1e-12);
  EXPECT_THROW(full_gst_matrix(ideal, ChannelRep::ptm(RealMatrix::Identity(16, 16))), InvalidArgument);
}

TEST(PauliErrorChannel, ConstructionRules) {
  RealVector p(4);
  p << 1.0, -1e-13, 0.0, 0.0;
  EXPECT_EQ(PauliErrorChannel(1, p).prob("X"), 0.0);
  p << 1.0, -1e-9, 0.0, 0.0;
  EXPECT_THROW(PauliErrorChannel(1, p), PhysicalityViolation);
  EXPECT_THROW(PauliErrorChannel(1, RealVector::Zero(4)), InvalidArgument);
  EXPECT_THROW(PauliErrorChannel(2, RealVector::Ones(4)), InvalidArgument);
}

}  // namespace
}  // namespace sspc
