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

// Perfection rate of a three-qubit XX parity check: four noisy gates
// versus one noisy single-step gate at the same per-gate fidelity.

#include <cstdio>

#include "sspc/sspc.hpp"

int main() {
  const double p = sspc::calibrate_p(0.99, sspc::NoiseModel::kPhaseFlip, 3);
  std::printf("per-qubit phase flip for 99%% gate fidelity: p = %.6f\n", p);
  const sspc::NoiseSpec noise{sspc::NoiseModel::kPhaseFlip, p, true};
  const auto r = sspc::compare_decomposed_vs_sspc(noise, noise);
  std::printf("decomposed:");
  for (const auto& t : r.decomposed_trace) std::printf("  %s %.5f", t.layer.c_str(), t.perfection_rate);
  std::printf("\nsingle-step: %.5f\nratio: %.4f\n", r.sspc_perfection(), r.ratio());
  return 0;
}
