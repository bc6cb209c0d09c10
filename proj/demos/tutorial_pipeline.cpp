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

// Analyze two single-qubit gates and accumulate their Pauli errors.

#include <cstdio>

#include "sspc/sspc.hpp"

int main() {
  using sspc::RealMatrix;
  RealMatrix sx_ideal(4, 4), sx_exp(4, 4);
  sx_ideal << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
  sx_exp << 1, 0, 0, 0, 8.86e-04, 0.9864307, 0.0196069, 0.0404753, 0.0143302, 0.0103946, 0.0185571, -0.9569604,
      -0.0278189, -0.0312292, 0.9486933, 0.0084777;
  RealMatrix sy_ideal(4, 4), sy_exp(4, 4);
  sy_ideal << 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0;
  sy_exp << 1, 0, 0, 0, -0.00995, 0.0317816, 0.0360635, 0.9617441, -0.0015329, 0.0423713, 0.9805663, -0.0148585,
      -0.0090296, -0.9691875, 0.0085467, 0.0140323;

  const auto ax = sspc::analyze_gate(sspc::ChannelRep::ptm(sx_ideal), sspc::ChannelRep::ptm(sx_exp));
  const auto ay = sspc::analyze_gate(sspc::ChannelRep::ptm(sy_ideal), sspc::ChannelRep::ptm(sy_exp));
  for (const auto* a : {&ax, &ay}) {
    std::printf("kraus=%zu  completeness residual=%.2e  p=(%.6f, %.6f, %.6f, %.6f)\n", a->kraus.operators().size(),
                a->completeness.residual, a->channel.prob("I"), a->channel.prob("X"), a->channel.prob("Y"),
                a->channel.prob("Z"));
  }

  const sspc::LayeredCircuit circuit(1, {{"sqrt(X)", ax.channel}, {"sqrt(Y)", ay.channel}});
  for (const auto& step : sspc::per_step_trace(circuit)) {
    std::printf("after %-8s P_I = %.6f\n", step.layer.c_str(), step.perfection_rate);
  }
  return 0;
}
