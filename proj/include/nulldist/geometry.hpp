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

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "nulldist/expr.hpp"

namespace nulldist {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Default relative tolerance for causal classification.
inline constexpr double kCausalTolerance = 1e-9;

/// A point in the single global chart of a spacetime. Coordinate 0 is time.
struct Point {
  std::uint32_t chart_id = 0;
  Vector coords;

  Point() = default;
  explicit Point(Vector c, std::uint32_t chart = 0) : chart_id(chart), coords(std::move(c)) {}
  Point(std::initializer_list<double> c);

  int size() const { return static_cast<int>(coords.size()); }
  double time() const { return coords[0]; }

  /// Exact coordinate equality.
  friend bool operator==(const Point& a, const Point& b);
};

struct TangentVector {
  Point base;
  Vector components;
};

enum class CausalType { Timelike, Null, Spacelike, Zero };
enum class TimeDirection { Future, Past, None };

struct CausalClass {
  CausalType type = CausalType::Zero;
  TimeDirection direction = TimeDirection::None;

  bool causal() const { return type == CausalType::Timelike || type == CausalType::Null; }
  friend bool operator==(const CausalClass&, const CausalClass&) = default;
};

std::string to_string(CausalClass c);
std::string to_string(TimeDirection d);

/// Riemannian factor of a GRW product: Euclidean R^n or a flat torus.
class SpatialFactor {
 public:
  static SpatialFactor euclidean(int n);
  static SpatialFactor flat_torus(std::vector<double> sides);

  bool is_torus() const { return torus_; }
  int dimension() const { return n_; }
  const std::vector<double>& sides() const { return sides_; }

  /// Shortest displacement from `from` to `to`; nearest image on the torus.
  Vector displacement(const Vector& from, const Vector& to) const;
  double distance(const Vector& a, const Vector& b) const { return displacement(a, b).norm(); }
  /// The lattice image of `to` closest to `from`; exactly `to` when no wrap occurs.
  Vector nearest_image(const Vector& from, const Vector& to) const;
  /// Infinite for Euclidean space; half the diagonal for a flat torus.
  double diameter() const;

 private:
  SpatialFactor(int n, bool torus, std::vector<double> sides)
      : n_(n), torus_(torus), sides_(std::move(sides)) {}

  int n_;
  bool torus_;
  std::vector<double> sides_;
};

using MetricField = std::function<Matrix(const Point&)>;
using VectorField = std::function<Vector(const Point&)>;

/// A time-oriented Lorentzian manifold covered by one chart.
///
/// Built-in families carry closed forms for the metric, Christoffel symbols
/// and a conformally flat "causal chart": identity for Minkowski and
/// (u(t), x) with u the conformal time for GRW. Custom metrics fall back to
/// finite differences.
class Spacetime {
 public:
  enum class Family { Minkowski, GRW, Custom };

  static Spacetime minkowski(int spatial_dimension);
  static Spacetime grw(ScalarExpr scale_factor, SpatialFactor spatial);
  static Spacetime custom(int dimension, MetricField metric, VectorField orientation,
                          std::function<bool(const Point&)> domain = {});

  Family family() const { return family_; }
  int dimension() const { return dim_; }
  int spatial_dimension() const { return dim_ - 1; }
  const ScalarExpr& scale_factor() const;
  const SpatialFactor& spatial() const { return spatial_; }

  Matrix metric_at(const Point& p) const;
  /// The time orientation field, stored un-normalized (d/dt for built-ins).
  TangentVector orientation_at(const Point& p) const;
  bool in_domain(const Point& p) const;

  /// Christoffel symbols of the second kind: result[a](b, c) = Gamma^a_{bc}.
  std::vector<Matrix> christoffel_at(const Point& p) const;

  bool has_flat_causal_chart() const { return family_ != Family::Custom; }
  /// Chart in which causal cones are those of -du^2 + |dx|^2.
  Vector to_causal_chart(const Point& p) const;
  Point from_causal_chart(const Vector& chart) const;
  double causal_time_lower() const;
  double causal_time_upper() const;

  std::string describe() const;

 private:
  Spacetime(Family family, int dim, std::optional<ScalarExpr> f, SpatialFactor spatial)
      : family_(family), dim_(dim), scale_(std::move(f)), spatial_(std::move(spatial)) {}

  Family family_;
  int dim_;
  std::optional<ScalarExpr> scale_;
  SpatialFactor spatial_;
  MetricField custom_metric_;
  VectorField custom_orientation_;
  std::function<bool(const Point&)> custom_domain_;
};

/// g_p(X, Y). Throws std::invalid_argument when the base points differ.
double inner(const Spacetime& st, const TangentVector& x, const TangentVector& y);

/// sqrt(|g(X, X)|).
double lorentz_norm(const Spacetime& st, const TangentVector& x);

/// Classifies components `x` against metric `g` and orientation `theta`.
CausalClass classify(const Matrix& g, const Vector& x, const Vector& theta,
                     double tol = kCausalTolerance);

CausalClass causal_class(const Spacetime& st, const TangentVector& x,
                         double tol = kCausalTolerance);

/// Causal class of the chord from a to b. For built-in families the chord is
/// taken in the causal chart, where straight lines are what the curve
/// constructions produce; custom metrics use the metric at the midpoint.
CausalClass chord_class(const Spacetime& st, const Point& a, const Point& b,
                        double tol = kCausalTolerance);

/// A scalar field with an optional closed-form differential.
struct ScalarField {
  std::function<double(const Point&)> value;
  std::function<Vector(const Point&)> differential;
};

enum class GradientMode { Auto, FiniteDifference };

/// Central-difference differential of `f` at p (ignores any closed form).
Vector finite_difference_differential(const ScalarField& f, const Point& p, double step);

/// g^{-1} df at p. Uses the closed-form differential when the field has one
/// and mode is Auto. Throws NumericalError on a singular metric.
TangentVector gradient(const Spacetime& st, const ScalarField& f, const Point& p,
                       double step = 1e-6, GradientMode mode = GradientMode::Auto);

struct ExpResult {
  Point point;
  Vector velocity;
  /// Parallel transport of the input frame (identity when none was given).
  Matrix frame;
};

/// Geodesic from base(X) with initial velocity X at affine parameter 1.
///
/// Classical RK4 with `steps` equal steps; exact straight line on Minkowski.
/// Throws DomainEscapeError carrying the exit fraction if the geodesic leaves
/// the chart domain.
ExpResult exp_map(const Spacetime& st, const TangentVector& x, int steps,
                  const std::optional<Matrix>& frame = std::nullopt);

struct Signature {
  int negative = 0;
  int positive = 0;
  int zero = 0;
};

Signature signature_at(const Spacetime& st, const Point& p, double tol = 1e-12);

/// Axis-aligned coordinate box used for random sampling.
struct SampleBox {
  Vector lower;
  Vector upper;
};

/// A representative compact region inside the chart domain.
SampleBox default_sample_box(const Spacetime& st);

}  // namespace nulldist
