// Copyright 2026 The Storplan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STORPLAN_ERRORS_HPP
#define STORPLAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace storplan {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A performance-curve evaluation produced a non-finite or invalid value.
class CurveEvalError : public Error {
 public:
  CurveEvalError(const std::string& curve, const std::string& what)
      : Error("curve '" + curve + "': " + what), curve_(curve) {}
  const std::string& curve() const { return curve_; }

 private:
  std::string curve_;
};

/// A cooling load exceeds what the chiller can deliver at the operating point.
class CapacityExceededError : public Error {
 public:
  CapacityExceededError(double deficit_kw, const std::string& what)
      : Error(what), deficit_kw_(deficit_kw) {}
  double deficit_kw() const { return deficit_kw_; }

 private:
  double deficit_kw_ = 0.0;
};

/// A storage control violates a rate or state-of-charge limit. `limit()`
/// names the binding bound.
class InfeasibleControlError : public Error {
 public:
  InfeasibleControlError(const std::string& limit, const std::string& what)
      : Error(what), limit_(limit) {}
  const std::string& limit() const { return limit_; }

 private:
  std::string limit_;
};

/// A timestamp falls outside the periods a tariff defines.
class TariffCoverageError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data or configuration (bad CSV row, unknown config key...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// The part-load curve bends the wrong way for outer linearization; the
/// commitment (MILP) mode handles such machines instead.
class NonConvexCurveError : public Error {
 public:
  using Error::Error;
};

/// An optimization problem was diagnosed infeasible before or during solve.
class InfeasibleProblemError : public Error {
 public:
  explicit InfeasibleProblemError(const std::string& what, int step = -1)
      : Error(what), step_(step) {}
  /// Offending time step when known, -1 otherwise.
  int step() const { return step_; }

 private:
  int step_ = -1;
};

/// The bundled solver gave up (iteration or node limit).
class SolverLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace storplan

#endif  // STORPLAN_ERRORS_HPP
