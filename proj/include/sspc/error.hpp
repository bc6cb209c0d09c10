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

#pragma once

#include <stdexcept>
#include <string>

namespace sspc {

/// Malformed arguments: bad dimensions, out-of-range parameters, bad labels.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The input does not describe a physical object (non-unitary "unitary",
/// negative probabilities beyond the clipping threshold, ...).
class PhysicalityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Choi matrix has an eigenvalue below the complete-positivity threshold.
class NotCompletelyPositive : public PhysicalityViolation {
 public:
  NotCompletelyPositive(const std::string& what, double min_eigenvalue)
      : PhysicalityViolation(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// Post-selection on a measurement outcome that has (numerically) zero
/// probability.
class ImpossibleOutcome : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A verification routine found a deviation above its tolerance.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search (bisection, exhaustive scan) found nothing within its bounds.
class NoSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File or format level problems (unparseable JSON, missing "kind", ...).
class FormatError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace sspc
