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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "nulldist/expr.hpp"
#include "nulldist/geometry.hpp"

namespace nulldist {

enum class TimeFunctionKind { CoordinateT, PhiOfT, CosmologicalGRW, Custom };

/// A scalar field tau meant to increase along future causal curves.
///
/// Built-in kinds depend on the time coordinate only (tau = phi(t)) and carry
/// a closed-form differential; Custom wraps an arbitrary evaluator, which may
/// or may not actually be a time function.
class TimeFunction {
 public:
  static TimeFunction coordinate_t();
  static TimeFunction phi_of_t(ScalarExpr phi);
  /// tau_g = t on a GRW spacetime whose interval is (0, b). Throws UnsupportedError otherwise.
  static TimeFunction cosmological(const Spacetime& st);
  static TimeFunction custom(std::string name, std::function<double(const Point&)> value,
                             std::function<Vector(const Point&)> differential = {});

  TimeFunctionKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const ScalarField& field() const { return field_; }
  bool has_closed_gradient() const { return static_cast<bool>(field_.differential); }

  double operator()(const Point& p) const { return field_.value(p); }

  /// phi such that tau = phi(t); nullopt for Custom. Identity is `t`.
  std::optional<ScalarExpr> profile() const;
  /// Coordinate time t with tau(t, .) = level. Throws UnsupportedError for Custom.
  double coordinate_time_of_level(double level) const;

 private:
  TimeFunction(TimeFunctionKind kind, std::string name, ScalarField field, std::optional<ScalarExpr> phi)
      : kind_(kind), name_(std::move(name)), field_(std::move(field)), phi_(std::move(phi)) {}

  TimeFunctionKind kind_;
  std::string name_;
  ScalarField field_;
  std::optional<ScalarExpr> phi_;
};

struct MonotonicityOptions {
  int steps_per_curve = 8;
  double step = 0.05;
  /// Velocities stay this far inside the future cone.
  double margin = 0.05;
};

struct MonotonicityReport {
  int trials = 0;
  int increments = 0;
  /// Smallest observed (tau(x_{k+1}) - tau(x_k)) / step.
  double min_rate = 0.0;
  bool violation = false;
  std::optional<Point> violation_at;
};

/// Walks random future-directed causal polylines and records the smallest
/// rate of increase of tau. Report-only; a nonpositive rate flags a violation.
MonotonicityReport monotonicity_probe(const Spacetime& st, const TimeFunction& tau, int trials,
                                      std::uint64_t seed, const MonotonicityOptions& options = {});

struct AntiLipschitzEstimate {
  double constant = 0.0;
  std::size_t point_index = 0;
  Vector direction;

  /// False is the NotTemporalOnSample signal.
  bool temporal_on_sample() const { return constant > 0.0; }
};

/// min over region points p and future causal directions X (unit in the
/// coordinate Euclidean metric) of g(grad f, X). A positive value certifies
/// g(grad f, X) >= C |X| on the sample. Requires grid >= 8.
AntiLipschitzEstimate anti_lipschitz_constant(const Spacetime& st, const TimeFunction& f,
                                              std::span<const Point> region, int grid);

}  // namespace nulldist
