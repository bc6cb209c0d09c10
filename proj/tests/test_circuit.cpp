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

#include "sspc/circuit.hpp"
#include "test_util.hpp"

namespace sspc {
namespace {

PauliErrorChannel random_channel(int n, std::mt19937_64& rng, double identity_weight = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealVector p(static_cast<Eigen::Index>(pow4(n)));
  for (auto& v : p) v = u(rng);
  p(0) += identity_weight;
  return {n, p / p.sum()};
}

/// Σ over label tuples with matching product, by exhaustive enumeration.
RealVector brute_force(const std::vector<PauliErrorChannel>& layers) {
  const int n = layers.front().n_qubits();
  const std::size_t size = pow4(n);
  RealVector out = RealVector::Zero(static_cast<Eigen::Index>(size));
  std::vector<std::size_t> idx(layers.size(), 0);
  while (true) {
    std::size_t label = 0;
    double w = 1.0;
    for (std::size_t l = 0; l < layers.size(); ++l) {
      label ^= idx[l];
      w *= layers[l][idx[l]];
    }
    out(static_cast<Eigen::Index>(label)) += w;
    std::size_t l = 0;
    while (l < idx.size() && ++idx[l] == size) idx[l++] = 0;
    if (l == idx.size()) break;
  }
  return out;
}

TEST(TensorLayer, IdentitiesAndProductRule) {
  const auto id2 = tensor_layer({PauliErrorChannel::identity(1), PauliErrorChannel::identity(1)});
  EXPECT_EQ(id2.n_qubits(), 2);
  EXPECT_DOUBLE_EQ(id2.perfection_rate(), 1.0);
  const auto h = PauliErrorChannel::single(0.97, 0.02, 0.004, 0.006);
  const auto hii = tensor_layer({h, PauliErrorChannel::identity(1), PauliErrorChannel::identity(1)});
  EXPECT_DOUBLE_EQ(hii.prob("XII"), 0.02);
  EXPECT_DOUBLE_EQ(hii.prob("IXI"), 0.0);
  const double p = 0.00375;
  const auto pf = PauliErrorChannel::single(1 - p, 0, 0, p);
  const auto three = tensor_layer({pf, pf, pf});
  EXPECT_NEAR(three.prob("ZZZ"), p * p * p, 1e-18);
  EXPECT_NEAR(three.prob("III"), std::pow(1 - p, 3), 1e-15);
  EXPECT_THROW(tensor_layer(std::span<const PauliErrorChannel>{}), InvalidArgument);
}

TEST(Accumulate, TwoSingleQubitLayersFollowTheProductFormula) {
  const auto a = PauliErrorChannel::single(0.9, 0.05, 0.03, 0.02);
  const auto b = PauliErrorChannel::single(0.8, 0.1, 0.06, 0.04);
  const LayeredCircuit c(1, {{"a", a}, {"b", b}});
  const auto out = accumulate(c);
  EXPECT_NEAR(out.perfection_rate(), 0.9 * 0.8 + 0.05 * 0.1 + 0.03 * 0.06 + 0.02 * 0.04, 1e-15);
  // P_X = p_i2 p_x1 + p_x2 p_i1 + p_y2 p_z1 + p_z2 p_y1
  EXPECT_NEAR(accumulated_error(c, "X"), 0.8 * 0.05 + 0.1 * 0.9 + 0.06 * 0.02 + 0.04 * 0.03, 1e-15);
}

TEST(Accumulate, TutorialCircuit) {
  const auto x = PauliErrorChannel::single(0.973023, 0.020194, 0.001325, 0.005458);
  const auto y = PauliErrorChannel::single(0.97787447, 0.00671927, 0.01240868, 0.00299758);
  const LayeredCircuit c(1, {{"SX", x}, {"SY", y}});
  const auto trace = per_step_trace(c);
  ASSERT_EQ(trace.size(), 2u);
  EXPECT_NEAR(trace[0].perfection_rate, 0.973023, 1e-12);
  EXPECT_NEAR(trace[1].perfection_rate, 0.9517, 5e-4);
}

TEST(Accumulate, SingleLayerAndIdentityCircuits) {
  std::mt19937_64 rng(37);
  const auto ch = random_channel(2, rng);
  EXPECT_LT((accumulate(LayeredCircuit(2, {{"only", ch}})).probs() - ch.probs()).cwiseAbs().maxCoeff(), 0.0 + 1e-18);
  const LayeredCircuit id(2, {{"a", PauliErrorChannel::identity(2)}, {"b", PauliErrorChannel::identity(2)}});
  for (const auto& t : per_step_trace(id)) EXPECT_DOUBLE_EQ(t.perfection_rate, 1.0);
  EXPECT_DOUBLE_EQ(accumulated_error(id, "XI"), 0.0);
}

TEST(Accumulate, MatchesBruteForceEnumeration) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<PauliErrorChannel> layers;
    std::vector<CircuitLayer> cl;
    for (int l = 0; l < 3; ++l) {
      layers.push_back(random_channel(2, rng));
      cl.push_back({"L", layers.back()});
    }
    const RealVector want = brute_force(layers);
    const auto got = accumulate(LayeredCircuit(2, cl));
    EXPECT_LT((got.probs() - want).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Accumulate, TransformPathMatchesDirectConvolution) {
  std::mt19937_64 rng(43);
  for (int n = 1; n <= 3; ++n) {
    const auto a = random_channel(n, rng), b = random_channel(n, rng);
    const auto d = convolve(a, b, ConvolutionMethod::kDirect);
    const auto t = convolve(a, b, ConvolutionMethod::kTransform);
    EXPECT_LT((d.probs() - t.probs()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Accumulate, MatchesDenseSuperoperatorOracle) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<CircuitLayer> cl;
    ComplexMatrix s = ComplexMatrix::Identity(16, 16);
    for (int l = 0; l < 3; ++l) {
      const auto ch = random_channel(2, rng);
      cl.push_back({"L", ch});
      s = convert(kraus_from_pauli_channel(ch), ChannelKind::kSuperop).matrix() * s;
    }
    const ComplexMatrix chi = convert(ChannelRep::dense(ChannelKind::kSuperop, s), ChannelKind::kChi).matrix();
    const auto got = accumulate(LayeredCircuit(2, cl));
    EXPECT_LT((got.probs() - chi.diagonal().real()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Accumulate, IsInvariantUnderLayerReordering) {
  std::mt19937_64 rng(53);
  const auto a = random_channel(2, rng), b = random_channel(2, rng), c = random_channel(2, rng);
  const auto abc = accumulate(LayeredCircuit(2, {{"a", a}, {"b", b}, {"c", c}}));
  const auto cab = accumulate(LayeredCircuit(2, {{"c", c}, {"a", a}, {"b", b}}));
  EXPECT_LT((abc.probs() - cab.probs()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Accumulate, OutputIsNormalized) {
  std::mt19937_64 rng(59);
  std::vector<CircuitLayer> cl;
  for (int l = 0; l < 6; ++l) cl.push_back({"L", random_channel(3, rng)});
  const auto out = accumulate(LayeredCircuit(3, cl));
  EXPECT_NEAR(out.total(), 1.0, 1e-9);
  EXPECT_GE(out.probs().minCoeff(), 0.0);
}

TEST(Trace, DecaysWhenEveryLayerIsMostlyIdentity) {
  std::mt19937_64 rng(61);
  std::vector<CircuitLayer> cl;
  for (int l = 0; l < 6; ++l) cl.push_back({"L", random_channel(2, rng, 40.0)});
  const auto trace = per_step_trace(LayeredCircuit(2, cl));
  for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LE(trace[i].perfection_rate, trace[i - 1].perfection_rate);
}

TEST(Trace, FourLayerPhaseFlipCircuit) {
  const double p = 0.0085;
  const auto pf = PauliErrorChannel::single(1 - p, 0, 0, p);
  const auto layer = tensor_layer({pf, pf, pf});
  const LayeredCircuit c(3, {{"HII", layer}, {"CX1", layer}, {"CX2", layer}, {"HII", layer}});
  const double final_rate = per_step_trace(c).back().perfection_rate;
  // Every label tuple whose phase-free product is the identity contributes.
  const double single = (1.0 + std::pow(1.0 - 2.0 * p, 4)) / 2.0;
  EXPECT_NEAR(final_rate, std::pow(single, 3), 1e-12);
  EXPECT_NEAR(final_rate, 0.9026, 2e-3);
}

TEST(LayeredCircuit, RejectsMismatchedRegisters) {
  EXPECT_THROW(LayeredCircuit(2, {{"a", PauliErrorChannel::identity(1)}}), InvalidArgument);
  EXPECT_THROW(LayeredCircuit(2, {}), InvalidArgument);
  const LayeredCircuit c(1, {{"a", PauliErrorChannel::identity(1)}});
  EXPECT_THROW(accumulated_error(c, "XX"), InvalidArgument);
}

}  // namespace
}  // namespace sspc
