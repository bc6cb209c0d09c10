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

// Magnitude spectrum of control waveforms and peak detection.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "sspc/spin.hpp"

namespace sspc {

struct SpectrumPeak {
  std::size_t bin = 0;
  double frequency = 0.0;  ///< MHz
  double magnitude = 0.0;
};

struct ChannelSpectrum {
  int group = 0;
  std::vector<double> frequency;  ///< MHz, bins 0..n/2
  std::vector<double> magnitude;  ///< |DFT| / n
  std::vector<SpectrumPeak> peaks;
};

struct PulseSpectrum {
  double resolution = 0.0;  ///< MHz, 1/(n·dt)
  std::vector<ChannelSpectrum> channels;
};

/// One-sided spectrum of a real sequence sampled every dt ns. Peaks are
/// interior local maxima strictly above their left neighbour, not below
/// their right one, and above mean + 5σ of the magnitudes.
inline ChannelSpectrum sequence_spectrum(const RealVector& samples, double dt_ns, int group = 0) {
  const auto n = static_cast<std::size_t>(samples.size());
  if (n < 16) throw InvalidArgument("pulse_spectrum: at least 16 slots are required");
  if (!(dt_ns > 0.0)) throw InvalidArgument("pulse_spectrum: dt must be positive");
  Eigen::FFT<double> fft;
  std::vector<double> in(samples.data(), samples.data() + n);
  std::vector<std::complex<double>> out;
  fft.fwd(out, in);
  ChannelSpectrum cs;
  cs.group = group;
  const double df = 1e3 / (static_cast<double>(n) * dt_ns);
  for (std::size_t m = 0; m <= n / 2; ++m) {
    cs.frequency.push_back(static_cast<double>(m) * df);
    cs.magnitude.push_back(std::abs(out[m]) / static_cast<double>(n));
  }
  const std::size_t len = cs.magnitude.size();
  double mean = 0.0;
  for (double v : cs.magnitude) mean += v;
  mean /= static_cast<double>(len);
  double var = 0.0;
  for (double v : cs.magnitude) var += (v - mean) * (v - mean);
  const double threshold = mean + 5.0 * std::sqrt(var / static_cast<double>(len));
  for (std::size_t m = 1; m + 1 < len; ++m) {
    const double v = cs.magnitude[m];
    if (v > threshold && v > cs.magnitude[m - 1] && v >= cs.magnitude[m + 1]) {
      cs.peaks.push_back({m, cs.frequency[m], v});
    }
  }
  return cs;
}

/// Spectrum of the summed field of each control group.
inline PulseSpectrum pulse_spectrum(const PulseSchedule& schedule) {
  schedule.validate();
  PulseSpectrum ps;
  ps.resolution = 1e3 / schedule.total_time();
  for (int g : schedule.distinct_groups()) {
    ps.channels.push_back(sequence_spectrum(schedule.group_waveform(g), schedule.dt, g));
  }
  return ps;
}

struct PeakAssignment {
  SpectrumPeak peak;
  int group = 0;
  double nearest_line = 0.0;  ///< MHz
  double distance = 0.0;      ///< MHz
  bool explained = false;     ///< distance ≤ one bin
};

/// Matches every detected peak to the nearest reference line.
inline std::vector<PeakAssignment> assign_peaks(const PulseSpectrum& spectrum, const std::vector<double>& lines) {
  std::vector<PeakAssignment> out;
  for (const auto& ch : spectrum.channels) {
    for (const auto& p : ch.peaks) {
      PeakAssignment a{p, ch.group, 0.0, INFINITY, false};
      for (double l : lines) {
        if (std::abs(p.frequency - l) < a.distance) {
          a.distance = std::abs(p.frequency - l);
          a.nearest_line = l;
        }
      }
      a.explained = a.distance <= spectrum.resolution * (1.0 + 1e-9);
      out.push_back(a);
    }
  }
  return out;
}

/// All eigenvalue differences of h plus A₁ + A₂ + γ_nB₀.
inline std::vector<double> reference_lines(const ComplexMatrix& h, const SpinSystemSpec& spec) {
  std::vector<double> lines;
  for (const auto& t : transition_frequencies(h)) lines.push_back(t.frequency);
  lines.push_back(spec.combination_line());
  return lines;
}

}  // namespace sspc
