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

// Parametric Pauli noise, fidelity calibration and the decomposed versus
// single-step parity-check comparison.

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sspc/circuit.hpp"
#include "sspc/sspc_gates.hpp"

namespace sspc {

enum class NoiseModel { kPhaseFlip, kBitFlip, kDepolarizing };

inline std::string_view model_name(NoiseModel m) {
  switch (m) {
    case NoiseModel::kPhaseFlip: return "phase_flip";
    case NoiseModel::kBitFlip: return "bit_flip";
    case NoiseModel::kDepolarizing: return "depolarizing";
  }
  return "?";
}

inline NoiseModel parse_model(std::string_view s) {
  if (s == "phase_flip") return NoiseModel::kPhaseFlip;
  if (s == "bit_flip") return NoiseModel::kBitFlip;
  if (s == "depolarizing") return NoiseModel::kDepolarizing;
  throw InvalidArgument("unknown noise model '" + std::string(s) + "'");
}

struct NoiseSpec {
  NoiseModel model = NoiseModel::kPhaseFlip;
  double p = 0.0;
  bool per_qubit = true;

  void validate() const {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("NoiseSpec: p must lie in [0, 1], got " + std::to_string(p));
  }
};

inline PauliErrorChannel single_qubit_channel(NoiseModel model, double p) {
  switch (model) {
    case NoiseModel::kPhaseFlip: return PauliErrorChannel::single(1.0 - p, 0.0, 0.0, p);
    case NoiseModel::kBitFlip: return PauliErrorChannel::single(1.0 - p, p, 0.0, 0.0);
    case NoiseModel::kDepolarizing: return PauliErrorChannel::single(1.0 - p, p / 3.0, p / 3.0, p / 3.0);
  }
  throw InvalidArgument("single_qubit_channel: unknown model");
}

/// per_qubit: tensor of identical single-qubit channels. Otherwise p is
/// spread uniformly over the non-identity strings built from the model's
/// letters (Z for phase_flip, X for bit_flip, any for depolarizing).
inline PauliErrorChannel make_channel(const NoiseSpec& spec, int n_qubits) {
  spec.validate();
  if (n_qubits < 1 || n_qubits > 6) throw InvalidArgument("make_channel: n_qubits must lie in 1..6");
  if (spec.per_qubit) {
    std::vector<PauliErrorChannel> parts(static_cast<std::size_t>(n_qubits), single_qubit_channel(spec.model, spec.p));
    return tensor_layer(parts);
  }
  const std::size_t size = pow4(n_qubits);
  std::vector<std::size_t> support;
  for (std::size_t s = 1; s < size; ++s) {
    bool ok = true;
    for (int q = 0; q < n_qubits && ok; ++q) {
      const auto letter = static_cast<Pauli>((s >> (2 * (n_qubits - 1 - q))) & 3u);
      if (spec.model == NoiseModel::kPhaseFlip) ok = letter == Pauli::I || letter == Pauli::Z;
      if (spec.model == NoiseModel::kBitFlip) ok = letter == Pauli::I || letter == Pauli::X;
    }
    if (ok) support.push_back(s);
  }
  RealVector probs = RealVector::Zero(static_cast<Eigen::Index>(size));
  probs(0) = 1.0 - spec.p;
  for (std::size_t s : support) probs(static_cast<Eigen::Index>(s)) = spec.p / static_cast<double>(support.size());
  return {n_qubits, std::move(probs)};
}

/// Average gate fidelity of the noise channel relative to the identity.
inline double noise_fidelity(const NoiseSpec& spec, int n_qubits) {
  const ChannelRep ptm = ptm_from_pauli_channel(make_channel(spec, n_qubits));
  const auto dim = static_cast<Eigen::Index>(pow2(n_qubits));
  return avg_gate_fidelity(ptm, ChannelRep::unitary(ComplexMatrix::Identity(dim, dim)));
}

/// Smallest p in [0, 1] with noise_fidelity(p) = target, by bisection to 1e-10.
inline double calibrate_p(double target_fidelity, NoiseModel model, int n_qubits, bool per_qubit = true) {
  if (!(target_fidelity > 0.0 && target_fidelity <= 1.0)) {
    throw InvalidArgument("calibrate_p: target fidelity must lie in (0, 1]");
  }
  const auto fid = [&](double p) { return noise_fidelity({model, p, per_qubit}, n_qubits); };
  if (target_fidelity >= 1.0) return 0.0;
  // Fidelity decreases from 1 at p = 0; the bracket end is the first
  // grid point whose fidelity drops below the target.
  double lo = 0.0;
  double hi = -1.0;
  double prev = fid(0.0);
  for (int k = 1; k <= 64; ++k) {
    const double p = static_cast<double>(k) / 64.0;
    const double f = fid(p);
    if (f > prev + 1e-12) break;  // monotone region ends
    if (f <= target_fidelity) {
      hi = p;
      break;
    }
    lo = p;
    prev = f;
  }
  if (hi < 0.0) {
    throw NoSolution("calibrate_p: fidelity " + std::to_string(target_fidelity) + " is not reachable by " +
                     std::string(model_name(model)));
  }
  double f_lo = fid(lo);
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    const double f = fid(mid);
    if (f > f_lo + 1e-12) throw NoSolution("calibrate_p: fidelity is not monotone in p");
    if (f > target_fidelity) {
      lo = mid;
      f_lo = f;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct ComparisonReport {
  NoiseSpec decomposed_noise;
  NoiseSpec sspc_noise;
  std::optional<NoiseSpec> measurement_noise;
  LayeredCircuit decomposed;
  LayeredCircuit sspc;
  PauliErrorChannel decomposed_channel;
  PauliErrorChannel sspc_channel;
  std::vector<TraceEntry> decomposed_trace;
  std::vector<TraceEntry> sspc_trace;

  double decomposed_perfection() const { return decomposed_channel.perfection_rate(); }
  double sspc_perfection() const { return sspc_channel.perfection_rate(); }
  double ratio() const { return sspc_perfection() / decomposed_perfection(); }
};

/// Three-qubit XX parity check: four decomposed gate layers versus one
/// SSPC layer. A measurement-noise layer is appended to both when given.
inline ComparisonReport compare_decomposed_vs_sspc(const NoiseSpec& decomposed_noise, const NoiseSpec& sspc_noise,
                                                   const std::optional<NoiseSpec>& measurement_noise = std::nullopt) {
  constexpr int kQubits = 3;
  const PauliErrorChannel dch = make_channel(decomposed_noise, kQubits);
  const PauliErrorChannel sch = make_channel(sspc_noise, kQubits);
  std::vector<CircuitLayer> dlayers;
  for (const auto& step : decomposed_parity_circuit({ParityBasis::kXX})) dlayers.push_back({step.name, dch});
  std::vector<CircuitLayer> slayers{{"SSPC_XX", sch}};
  if (measurement_noise) {
    const PauliErrorChannel mch = make_channel(*measurement_noise, kQubits);
    dlayers.push_back({"MEAS", mch});
    slayers.push_back({"MEAS", mch});
  }
  LayeredCircuit dc(kQubits, std::move(dlayers));
  LayeredCircuit sc(kQubits, std::move(slayers));
  auto dtrace = per_step_trace(dc);
  auto strace = per_step_trace(sc);
  auto dacc = accumulate(dc);
  auto sacc = accumulate(sc);
  return {decomposed_noise, sspc_noise, measurement_noise, std::move(dc), std::move(sc),
          std::move(dacc), std::move(sacc), std::move(dtrace), std::move(strace)};
}

}  // namespace sspc
