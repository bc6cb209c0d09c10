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

#include "sspc/sspc_gates.hpp"

namespace sspc {
namespace {

const ComplexMatrix kId8 = ComplexMatrix::Identity(8, 8);

TEST(SspcMatrices, LiteralEntries) {
  const ComplexMatrix zz = u_zz();
  EXPECT_EQ(zz(1, 5), Complex(1.0));
  for (int c = 0; c < 8; ++c) {
    if (c != 5) {
      EXPECT_EQ(zz(1, c), Complex(0.0));
    }
  }
  const ComplexMatrix xx = u_xx();
  for (Eigen::Index i = 0; i < 8; ++i) {
    for (Eigen::Index j = 0; j < 8; ++j) {
      const double v = std::abs(xx(i, j));
      EXPECT_TRUE(v == 0.0 || v == 0.5);
    }
  }
  EXPECT_EQ(xx(0, 7), Complex(-0.5));
  EXPECT_EQ(xx(7, 0), Complex(-0.5));
}

TEST(SspcMatrices, UnitaryInvolutions) {
  for (const auto& u : {u_xx(), u_zz()}) {
    EXPECT_LT(unitarity_residual(u), 1e-12);
    EXPECT_LT(max_abs(u * u - kId8), 1e-12);
  }
}

TEST(SspcMatrices, EqualDecomposedProducts) {
  const auto xx = decomposed_parity_circuit({ParityBasis::kXX});
  const auto zz = decomposed_parity_circuit({ParityBasis::kZZ});
  EXPECT_EQ(xx.size(), 4u);
  EXPECT_EQ(zz.size(), 2u);
  EXPECT_LT(max_abs(sequence_product(xx) - u_xx()), 1e-12);
  EXPECT_LT(max_abs(sequence_product(zz) - u_zz()), 1e-12);
}

TEST(SspcMatrices, AreClifford) {
  EXPECT_TRUE(is_clifford(u_xx()));
  EXPECT_TRUE(is_clifford(u_zz()));
  ComplexMatrix t = ComplexMatrix::Identity(2, 2);
  t(1, 1) = std::polar(1.0, std::numbers::pi / 4.0);
  EXPECT_FALSE(is_clifford(embed(t, 0, 3)));
  EXPECT_THROW(is_clifford(ComplexMatrix(2.0 * kId8)), InvalidArgument);
}

TEST(ParityCheckSpec, OnlyTwoDataQubitsWithLeadingAncilla) {
  EXPECT_THROW(decomposed_parity_circuit({ParityBasis::kZZ, 3, 0}), InvalidArgument);
  EXPECT_THROW(decomposed_parity_circuit({ParityBasis::kZZ, 2, 1}), InvalidArgument);
  EXPECT_THROW(parse_parity_basis("yy"), InvalidArgument);
}

TEST(ParityProject, BellStateIsXxEigenstate) {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  const StateVector bell(2, v);
  const auto r = parity_project(bell, {ParityBasis::kXX}, 0);
  EXPECT_NEAR(r.probability, 1.0, 1e-12);
  EXPECT_LT(phase_insensitive_distance(r.state.amplitudes(), v), 1e-12);
  EXPECT_THROW(parity_project(bell, {ParityBasis::kXX}, 1), ImpossibleOutcome);
}

TEST(ParityProject, OddBasisStateUnderZz) {
  const auto r = parity_project(StateVector::basis("01"), {ParityBasis::kZZ}, 1);
  EXPECT_NEAR(r.probability, 1.0, 1e-12);
  EXPECT_LT(max_abs(r.state.amplitudes() - StateVector::basis("01").amplitudes()), 1e-12);
}

TEST(ParityProject, GeneralStateUnderXxMatchesClosedForm) {
  ComplexVector v(4);
  v << Complex(0.3, 0.1), Complex(-0.2, 0.5), Complex(0.4, -0.3), Complex(0.1, 0.2);
  const StateVector psi = StateVector::normalized(2, v);
  const ComplexVector a = psi.amplitudes();
  const auto r = parity_project(psi, {ParityBasis::kXX}, 0);
  // (α+δ)/√2 |0̂⟩ + (β+γ)/√2 |1̂⟩ with |0̂⟩ = (|00⟩+|11⟩)/√2, |1̂⟩ = (|01⟩+|10⟩)/√2.
  ComplexVector want(4);
  const Complex c0 = (a(0) + a(3)) / 2.0, c1 = (a(1) + a(2)) / 2.0;
  want << c0, c1, c1, c0;
  EXPECT_NEAR(r.probability, want.squaredNorm(), 1e-12);
  EXPECT_LT(phase_insensitive_distance(r.state.amplitudes(), want / want.norm()), 1e-12);
}

TEST(VerifyParity, BothSspcGatesPassOnRandomStates) {
  for (auto b : {ParityBasis::kXX, ParityBasis::kZZ}) {
    const auto rep = verify_parity_semantics(sspc_unitary(b), {b}, 100, 1234);
    EXPECT_TRUE(rep.passed) << basis_name(b);
    EXPECT_LT(rep.max_deviation(), 1e-9);
  }
}

TEST(VerifyParity, IdentityFailsWithWitness) {
  const auto rep = verify_parity_semantics(kId8, {ParityBasis::kZZ}, 20, 1);
  EXPECT_FALSE(rep.passed);
  EXPECT_EQ(rep.worst_state.size(), 4);
  EXPECT_THROW(require_parity_semantics(kId8, {ParityBasis::kZZ}, 20, 1), VerificationFailure);
}

TEST(VerifyParity, IsDeterministicForFixedSeed) {
  const auto a = verify_parity_semantics(kId8, {ParityBasis::kXX}, 10, 99);
  const auto b = verify_parity_semantics(kId8, {ParityBasis::kXX}, 10, 99);
  EXPECT_EQ(a.max_deviation(), b.max_deviation());
  EXPECT_EQ(a.worst_state, b.worst_state);
}

TEST(VerifyParity, ZzSendsOddInputToAncillaOne) {
  const auto [p0, p1] = ancilla_marginals(u_zz(), StateVector::basis("10"));
  EXPECT_NEAR(p0, 0.0, 1e-15);
  EXPECT_NEAR(p1, 1.0, 1e-15);
}

TEST(VerifyParity, MarginalsSumToOne) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto psi = StateVector::random(2, rng);
    const auto [p0, p1] = ancilla_marginals(u_xx(), psi);
    EXPECT_NEAR(p0 + p1, 1.0, 1e-12);
  }
}

TEST(VerifyParity, EigenstatesAreUnchanged) {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexVector plus(4), minus(4);
  plus << s, 0, 0, s;    // XX = +1
  minus << 0, s, -s, 0;  // XX = −1
  for (const auto& v : {plus, minus}) {
    const auto rep = verify_parity_on_state(u_xx(), {ParityBasis::kXX}, StateVector(2, v), 1e-10);
    EXPECT_TRUE(rep.passed);
    ComplexVector in = ComplexVector::Zero(8);
    in.head(4) = v;
    const ComplexVector out = u_xx() * in;
    const int branch = out.head(4).squaredNorm() > 0.5 ? 0 : 1;
    EXPECT_LT(phase_insensitive_distance(ComplexVector(out.segment(4 * branch, 4)), v), 1e-10);
  }
}

TEST(StateVector, Validation) {
  EXPECT_THROW(StateVector(2, ComplexVector::Ones(4)), InvalidArgument);
  EXPECT_THROW(StateVector(2, ComplexVector::Zero(3)), InvalidArgument);
  EXPECT_THROW(StateVector::basis("0a"), InvalidArgument);
}

}  // namespace
}  // namespace sspc
