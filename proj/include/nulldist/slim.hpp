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

#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "nulldist/curves.hpp"
#include "nulldist/geometry.hpp"
#include "nulldist/timefns.hpp"

namespace nulldist {

/// eta_eps(v, w) = -(1 - eps) v0 w0 + sum_i vi wi. Requires 0 < eps < 1.
double eta_eps_inner(double eps, const Vector& v, const Vector& w);

/// Diagonal matrix of eta_eps; eps = 0 gives the Minkowski metric.
Matrix eta_eps_matrix(double eps, int dim);

/// Normal coordinates centered at a point, aligned so that grad f maps to
/// -C e_0 and the initial velocity of a level-set curve maps to e_1.
class NormalChart {
 public:
  /// Frame: e_0 = -grad f / C, e_1 = the g-normalized part of `velocity`
  /// orthogonal to e_0, then coordinate axes by Gram-Schmidt in g.
  /// Throws PreconditionError if grad f is not timelike at the center.
  static NormalChart build(const Spacetime& st, const TimeFunction& f, const Point& center,
                           const Vector& velocity, int exp_steps = 32);

  const Point& center() const { return center_; }
  /// Columns are the frame vectors in spacetime coordinates.
  const Matrix& frame() const { return frame_; }
  /// sqrt(-g(grad f, grad f)) at the center.
  double c() const { return c_; }
  int dimension() const { return static_cast<int>(frame_.cols()); }

  /// exp_center(E y). Throws DomainEscapeError when the geodesic leaves the chart.
  Point from_chart(const Vector& y) const;
  /// Inverse of from_chart by fixed-point iteration with E^-1. Throws NumericalError
  /// if it does not converge.
  Vector to_chart(const Point& x) const;
  /// Central-difference Jacobian of from_chart at y.
  Matrix jacobian(const Vector& y, double h = 1e-5) const;
  /// J^T g J: the metric expressed in chart coordinates.
  Matrix pullback_metric(const Vector& y, double h = 1e-5) const;

 private:
  NormalChart(const Spacetime& st, Point center, Matrix frame, double c, int steps)
      : st_(&st), center_(std::move(center)), frame_(std::move(frame)), inverse_(frame_.inverse()), c_(c), steps_(steps) {}

  const Spacetime* st_;
  Point center_;
  Matrix frame_;
  Matrix inverse_;
  double c_;
  int steps_;
};

struct ConeDominationReport {
  double max_f = 0.0;
  Vector argmax_point;      // chart coordinates
  Vector argmax_direction;  // unit Euclidean
  int points = 0;
  int directions = 0;
  int escapes = 0;
  bool pass = false;  // max_f < 0
};

/// Samples F(y, v) = v^T (G(y) - eta_eps) v with G the pulled back metric,
/// over y in the closed Euclidean ball of `radius` (origin plus three
/// spherical shells of `point_grid` points) and v in the unit sphere
/// intersected with the eta_eps cone (sphere samples, the cone boundary and
/// the time axis). Points whose geodesic leaves the chart count as F = +inf.
ConeDominationReport verify_cone_domination(const Spacetime& st, const NormalChart& chart, double eps,
                                            double radius, int point_grid, int dir_grid);

struct CertifiedRadius {
  double radius = 0.0;
  ConeDominationReport report;  // at `radius`
};

/// Largest radius in (0, r_max] on which verify_cone_domination passes,
/// found by bisection.
CertifiedRadius certify_radius(const Spacetime& st, const NormalChart& chart, double eps, double r_max,
                               int point_grid, int dir_grid, int iterations = 8);

/// (|x|^2 - (1 - eps) t^2) / (2 sqrt(1 - eps) (|x| - sqrt(1 - eps) t)) for
/// q = (t, x). Accepts eps in [0, 1). Throws DegenerateConfigurationError
/// when |x| = 0 or the denominator vanishes (below 1e-12).
double t_star(double t, double x_norm, double eps);
double t_star(const Vector& q, double eps);

/// Unit-speed curve in a level set of f, with its initial coordinate velocity.
struct LevelSetCurve {
  std::function<Point(double)> at;
  Vector initial_velocity;
};

/// Straight line in the level set of tau = phi(t) through p (a geodesic of the
/// induced flat metric), unit speed in that metric.
LevelSetCurve level_set_line(const Spacetime& st, const Point& p, const Vector& spatial_direction);

enum class ApexSide { Future, Past };

struct SlimZigzag {
  PiecewiseCausalCurve curve;
  double null_length = 0.0;
  double t_star = 0.0;
  Vector q_chart;
  Vector r_chart;
  /// eta_eps(D, D) for the two chart displacements [0, r] and [r, q].
  double residual_first = 0.0;
  double residual_second = 0.0;
};

struct SlimOptions {
  ApexSide apex = ApexSide::Future;
  int samples_per_segment = 8;
};

/// Two eta_eps-null chart segments 0 -> r_s -> q_s = chart(gamma(s)) mapped
/// back through the chart. Throws OutOfNeighborhoodError when |q_s| exceeds
/// `radius`.
SlimZigzag build_slim_zigzag(const Spacetime& st, const TimeFunction& f, const NormalChart& chart,
                             const LevelSetCurve& gamma, double s, double eps, double radius,
                             const SlimOptions& options = {});

struct RatioRow {
  double eps = 0.0;
  double s = 0.0;
  double t_star_over_s = 0.0;
  double ratio = 0.0;  // null length / s
  double residual = 0.0;  // max |eta_eps| over both chart segments
};

struct RatioLimit {
  double eps = 0.0;
  double radius = 0.0;
  double target = 0.0;  // C / sqrt(1 - eps)
  double extrapolated = 0.0;
  double last = 0.0;
  bool extrapolation_used = false;
};

struct RatioTable {
  double c = 0.0;
  std::vector<RatioRow> rows;
  std::vector<RatioLimit> limits;
  /// Limits extrapolated to eps = 0; should approach C.
  double diagonal = 0.0;
};

struct RatioOptions {
  int point_grid = 16;
  int dir_grid = 32;
  double r_max = 0.5;
  SlimOptions slim;
};

/// Builds the zigzag for every (eps, s). s_list must be decreasing and
/// positive, eps_list decreasing inside (0, 1).
RatioTable ratio_table(const Spacetime& st, const TimeFunction& f, const Point& p,
                       const Vector& spatial_direction, std::span<const double> s_list,
                       std::span<const double> eps_list, const RatioOptions& options = {});

/// Value at 0 of the polynomial through (x_i, y_i) (Neville).
double extrapolate_to_zero(std::span<const double> x, std::span<const double> y);

/// CSV with header epsilon,s,t_star_over_s,ratio.
void write_ratio_csv(std::ostream& os, const RatioTable& table);

}  // namespace nulldist
