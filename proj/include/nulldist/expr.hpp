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

#include <string>
#include <string_view>

namespace nulldist {

/// One-variable function of the time coordinate drawn from a fixed whitelist:
/// `const c`, `t`, `t^2`, `exp(t)`.
///
/// Used both as a GRW warping factor f(t) and as a profile phi(t) for time
/// functions of the form tau = phi(t). Everything a caller needs is closed
/// form: value, derivative, inverse, the natural interval I and the conformal
/// time u(t) = integral of dt / f(t).
class ScalarExpr {
 public:
  enum class Kind { Constant, Linear, Quadratic, Exponential };

  static ScalarExpr constant(double c);
  static ScalarExpr linear() { return ScalarExpr(Kind::Linear, 0.0); }
  static ScalarExpr quadratic() { return ScalarExpr(Kind::Quadratic, 0.0); }
  static ScalarExpr exponential() { return ScalarExpr(Kind::Exponential, 0.0); }

  /// Parses one of the whitelisted spellings. Throws std::invalid_argument.
  static ScalarExpr parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  double constant_value() const noexcept { return c_; }
  std::string to_string() const;

  double value(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;

  /// Solves value(t) = v on the natural interval. Throws for constants or
  /// values outside the range.
  double inverse(double v) const;

  /// Open interval I on which the expression is a valid positive warping factor.
  double interval_lower() const;
  double interval_upper() const;
  bool in_interval(double t) const { return t > interval_lower() && t < interval_upper(); }

  /// Limit of value(t) as t decreases to interval_lower().
  double limit_at_lower() const;

  /// Conformal time u(t) and its inverse; u ranges over (conformal_lower, conformal_upper).
  double conformal_time(double t) const;
  double from_conformal_time(double u) const;
  double conformal_lower() const;
  double conformal_upper() const;

  friend bool operator==(const ScalarExpr&, const ScalarExpr&) = default;

 private:
  ScalarExpr(Kind kind, double c) : kind_(kind), c_(c) {}

  Kind kind_;
  double c_;
};

}  // namespace nulldist
