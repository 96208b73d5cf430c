/*
 * Copyright 2026 The nulldist Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nulldist {

// Singular metric, failed root finding, non-finite intermediate values.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an operation is asked for a spacetime family or time function
// it has no closed form for.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A geodesic left the chart domain (e.g. t <= 0 on a GRW chart with I = (0, inf)).
class DomainEscapeError : public std::runtime_error {
 public:
  DomainEscapeError(const std::string& what, double exit_fraction)
      : std::runtime_error(what), exit_fraction_(exit_fraction) {}

  /// Affine parameter in [0, 1] at which the geodesic crossed the boundary.
  double exit_fraction() const noexcept { return exit_fraction_; }

 private:
  double exit_fraction_;
};

// A curve failed structural or causal validation.
class CurveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfNeighborhoodError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An experiment's standing hypothesis does not hold; the data is still reported.
class HypothesisNotMet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parse or validation failure in an experiment config; carries the 1-based
// line number the problem was found on (0 when not tied to a line).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace nulldist
