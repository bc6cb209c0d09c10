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

// Accumulation of per-layer Pauli error channels through a layered circuit.
//
// Error labels are NOT conjugated through the ideal gates between layers:
// the accumulated distribution is the convolution of the layer
// distributions over the phase-free Pauli group, which in canonical indices
// is plain XOR. This reproduces the recursive expansion
//   P_I = p_i2·p_i1 + p_x2·p_x1 + p_y2·p_y1 + p_z2·p_z1
// and differs from a Clifford-propagating circuit-noise simulator.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sspc/pauli_channel.hpp"

namespace sspc {

struct CircuitLayer {
  std::string name;
  PauliErrorChannel channel;
};

class LayeredCircuit {
 public:
  LayeredCircuit(int n_qubits, std::vector<CircuitLayer> layers)
      : n_qubits_(n_qubits), layers_(std::move(layers)) {
    if (n_qubits < 1) throw InvalidArgument("LayeredCircuit: n_qubits must be >= 1");
    if (layers_.empty()) throw InvalidArgument("LayeredCircuit: at least one layer is required");
    for (const auto& l : layers_) {
      if (l.channel.n_qubits() != n_qubits_) {
        throw InvalidArgument("LayeredCircuit: layer '" + l.name + "' acts on " +
                              std::to_string(l.channel.n_qubits()) + " qubits, register has " +
                              std::to_string(n_qubits_));
      }
    }
  }

  int n_qubits() const { return n_qubits_; }
  const std::vector<CircuitLayer>& layers() const { return layers_; }
  std::size_t depth() const { return layers_.size(); }

 private:
  int n_qubits_;
  std::vector<CircuitLayer> layers_;
};

/// probs[s₁s₂…] = Π probs_part[s_part]; the first part occupies the most
/// significant qubits.
inline PauliErrorChannel tensor_layer(std::span<const PauliErrorChannel> parts) {
  if (parts.empty()) throw InvalidArgument("tensor_layer: empty part list");
  RealVector p = parts.front().probs();
  int n = parts.front().n_qubits();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    p = Eigen::kroneckerProduct(p, parts[i].probs()).eval();
    n += parts[i].n_qubits();
  }
  return {n, std::move(p)};
}

inline PauliErrorChannel tensor_layer(std::initializer_list<PauliErrorChannel> parts) {
  return tensor_layer(std::span<const PauliErrorChannel>(parts.begin(), parts.size()));
}

enum class ConvolutionMethod {
  kAuto,       ///< direct for n <= 4, transform above
  kDirect,     ///< O(16ⁿ) pair sum
  kTransform,  ///< Walsh–Hadamard over (Z₂×Z₂)ⁿ, O(n·4ⁿ)
};

namespace detail {

inline RealVector xor_convolve_direct(const RealVector& a, const RealVector& b) {
  const auto n = a.size();
  RealVector out = RealVector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a(i) == 0.0) continue;
    for (Eigen::Index j = 0; j < n; ++j) out(i ^ j) += a(i) * b(j);
  }
  return out;
}

/// In-place unnormalized Walsh–Hadamard transform; its characters are
/// exactly the ±1 characters of the XOR group.
inline void walsh_hadamard(RealVector& v) {
  const auto n = v.size();
  for (Eigen::Index h = 1; h < n; h <<= 1) {
    for (Eigen::Index i = 0; i < n; i += 2 * h) {
      for (Eigen::Index j = i; j < i + h; ++j) {
        const double x = v(j), y = v(j + h);
        v(j) = x + y;
        v(j + h) = x - y;
      }
    }
  }
}

}  // namespace detail

/// Distribution of the phase-free product of two independent Pauli errors.
inline PauliErrorChannel convolve(const PauliErrorChannel& a, const PauliErrorChannel& b,
                                  ConvolutionMethod method = ConvolutionMethod::kAuto) {
  if (a.n_qubits() != b.n_qubits()) throw InvalidArgument("convolve: register mismatch");
  if (method == ConvolutionMethod::kAuto) {
    method = a.n_qubits() <= 4 ? ConvolutionMethod::kDirect : ConvolutionMethod::kTransform;
  }
  if (method == ConvolutionMethod::kDirect) {
    return {a.n_qubits(), detail::xor_convolve_direct(a.probs(), b.probs())};
  }
  RealVector fa = a.probs(), fb = b.probs();
  detail::walsh_hadamard(fa);
  detail::walsh_hadamard(fb);
  RealVector prod = fa.cwiseProduct(fb);
  detail::walsh_hadamard(prod);
  prod /= static_cast<double>(prod.size());
  // The inverse transform can leave −1e-17 residue on exact zeros.
  prod = prod.cwiseMax(0.0);
  return {a.n_qubits(), std::move(prod)};
}

/// Accumulated Pauli error distribution after all layers. Layers are
/// folded left to right, so the reduction order (and the floating-point
/// result) is fixed.
inline PauliErrorChannel accumulate(const LayeredCircuit& circuit,
                                    ConvolutionMethod method = ConvolutionMethod::kAuto) {
  PauliErrorChannel acc = circuit.layers().front().channel;
  for (std::size_t l = 1; l < circuit.depth(); ++l) acc = convolve(acc, circuit.layers()[l].channel, method);
  return acc;
}

struct TraceEntry {
  std::string layer;
  double perfection_rate;
};

/// Entry k is P_I after layers 1..k.
inline std::vector<TraceEntry> per_step_trace(const LayeredCircuit& circuit,
                                              ConvolutionMethod method = ConvolutionMethod::kAuto) {
  std::vector<TraceEntry> trace;
  trace.reserve(circuit.depth());
  PauliErrorChannel acc = circuit.layers().front().channel;
  trace.push_back({circuit.layers().front().name, acc.perfection_rate()});
  for (std::size_t l = 1; l < circuit.depth(); ++l) {
    acc = convolve(acc, circuit.layers()[l].channel, method);
    trace.push_back({circuit.layers()[l].name, acc.perfection_rate()});
  }
  return trace;
}

inline double accumulated_error(const LayeredCircuit& circuit, const PauliString& label) {
  if (label.n_qubits() != circuit.n_qubits()) throw InvalidArgument("accumulated_error: label length mismatch");
  return accumulate(circuit).prob(label);
}

inline double accumulated_error(const LayeredCircuit& circuit, std::string_view label) {
  return accumulated_error(circuit, PauliString::parse(label));
}

}  // namespace sspc
