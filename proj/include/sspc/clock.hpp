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

// Drift-clock timing: integer rotation counts (a, b) with a·t_a ≈ b·t_b.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "sspc/error.hpp"

namespace sspc {

struct ClockParity {
  bool odd_a = false;
  bool odd_b = false;
};

struct ClockSolution {
  std::int64_t a = 0;
  std::int64_t b = 0;
  double total_time = 0.0;  ///< µs, a·t_a
  double residual = 0.0;    ///< (a·t_a − b·t_b)², input units squared
};

/// Loop order: a ascending over values allowed by the parity; b is the
/// integer of the required parity nearest to a·t_a/t_b. The first feasible
/// a minimizes a·t_a. Times are in ns.
inline ClockSolution clock_solve(double t_a, double t_b, ClockParity parity, double error,
                                 std::int64_t search_bound = 100000) {
  if (!(t_a > 0.0) || !(t_b > 0.0) || !std::isfinite(t_a) || !std::isfinite(t_b)) {
    throw InvalidArgument("clock_solve: periods must be positive");
  }
  if (!(error > 0.0)) throw InvalidArgument("clock_solve: error must be positive");
  if (search_bound < 1) throw InvalidArgument("clock_solve: search bound must be >= 1");
  const std::int64_t a_step = parity.odd_a ? 2 : 1;
  for (std::int64_t a = 1; a <= search_bound; a += a_step) {
    const double ideal = static_cast<double>(a) * t_a / t_b;
    std::int64_t b;
    if (parity.odd_b) {
      b = 2 * std::llround((ideal - 1.0) / 2.0) + 1;
      if (b < 1) b = 1;
    } else {
      b = std::max<std::int64_t>(1, std::llround(ideal));
    }
    const double mismatch = static_cast<double>(a) * t_a - static_cast<double>(b) * t_b;
    if (mismatch * mismatch <= error * error) {
      return {a, b, static_cast<double>(a) * t_a * 1e-3, mismatch * mismatch};
    }
  }
  throw NoSolution("clock_solve: no (a, b) with a <= " + std::to_string(search_bound) +
                   " satisfies the timing constraint");
}

/// Solver output set against a published (a, total) pair.
struct ClockDiscrepancy {
  bool matches = true;
  std::string message;
};

inline ClockDiscrepancy compare_with_reported(const ClockSolution& sol, double t_a,
                                              std::optional<std::int64_t> reported_a,
                                              std::optional<double> reported_total_us, double time_tol_us = 0.01) {
  ClockDiscrepancy out;
  if (reported_a && *reported_a != sol.a) {
    out.matches = false;
    out.message += "solver a=" + std::to_string(sol.a) + " differs from reported a=" + std::to_string(*reported_a) + "; ";
  }
  if (reported_a && reported_total_us) {
    const double implied = static_cast<double>(*reported_a) * t_a * 1e-3;
    if (std::abs(implied - *reported_total_us) > time_tol_us) {
      out.matches = false;
      out.message += "reported a times t_a is " + std::to_string(implied) + " us, not the reported " +
                     std::to_string(*reported_total_us) + " us; ";
    }
  }
  if (reported_total_us && std::abs(sol.total_time - *reported_total_us) > time_tol_us) {
    out.matches = false;
    out.message += "solver total " + std::to_string(sol.total_time) + " us differs from reported " +
                   std::to_string(*reported_total_us) + " us; ";
  }
  if (out.matches) out.message = "consistent with the reported figures";
  return out;
}

}  // namespace sspc
