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

#include "nulldist/geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "nulldist/errors.hpp"

namespace nulldist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix minkowski_metric(int dim) {
  Matrix g = Matrix::Identity(dim, dim);
  g(0, 0) = -1.0;
  return g;
}

Vector time_axis(int dim) {
  Vector e = Vector::Zero(dim);
  e[0] = 1.0;
  return e;
}

}  // namespace

Point::Point(std::initializer_list<double> c) : coords(static_cast<Eigen::Index>(c.size())) {
  Eigen::Index i = 0;
  for (double v : c) coords[i++] = v;
}

bool operator==(const Point& a, const Point& b) {
  return a.chart_id == b.chart_id && a.coords.size() == b.coords.size() &&
         (a.coords.array() == b.coords.array()).all();
}

std::string to_string(TimeDirection d) {
  switch (d) {
    case TimeDirection::Future: return "Future";
    case TimeDirection::Past: return "Past";
    case TimeDirection::None: return "None";
  }
  return "?";
}

std::string to_string(CausalClass c) {
  const char* type = "Zero";
  switch (c.type) {
    case CausalType::Timelike: type = "Timelike"; break;
    case CausalType::Null: type = "Null"; break;
    case CausalType::Spacelike: type = "Spacelike"; break;
    case CausalType::Zero: type = "Zero"; break;
  }
  return std::string(type) + "/" + to_string(c.direction);
}

// --- SpatialFactor ----------------------------------------------------------

SpatialFactor SpatialFactor::euclidean(int n) {
  if (n < 1) throw std::invalid_argument("spatial dimension must be at least 1");
  return SpatialFactor(n, false, {});
}

SpatialFactor SpatialFactor::flat_torus(std::vector<double> sides) {
  if (sides.empty()) throw std::invalid_argument("torus needs at least one side length");
  for (double s : sides) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("torus side lengths must be positive");
  }
  const int n = static_cast<int>(sides.size());
  return SpatialFactor(n, true, std::move(sides));
}

Vector SpatialFactor::displacement(const Vector& from, const Vector& to) const {
  Vector d = to - from;
  if (torus_) {
    for (int i = 0; i < n_; ++i) {
      const double side = sides_[static_cast<std::size_t>(i)];
      d[i] -= side * std::round(d[i] / side);
    }
  }
  return d;
}

Vector SpatialFactor::nearest_image(const Vector& from, const Vector& to) const {
  Vector image = to;
  if (torus_) {
    for (int i = 0; i < n_; ++i) {
      const double side = sides_[static_cast<std::size_t>(i)];
      image[i] = to[i] - side * std::round((to[i] - from[i]) / side);
    }
  }
  return image;
}

double SpatialFactor::diameter() const {
  if (!torus_) return kInf;
  double sum = 0.0;
  for (double s : sides_) sum += s * s;
  return 0.5 * std::sqrt(sum);
}

// --- Spacetime --------------------------------------------------------------

Spacetime Spacetime::minkowski(int spatial_dimension) {
  return Spacetime(Family::Minkowski, spatial_dimension + 1, std::nullopt,
                   SpatialFactor::euclidean(spatial_dimension));
}

Spacetime Spacetime::grw(ScalarExpr scale_factor, SpatialFactor spatial) {
  const int dim = spatial.dimension() + 1;
  return Spacetime(Family::GRW, dim, scale_factor, std::move(spatial));
}

Spacetime Spacetime::custom(int dimension, MetricField metric, VectorField orientation,
                            std::function<bool(const Point&)> domain) {
  if (dimension < 2) throw std::invalid_argument("spacetime dimension must be at least 2");
  if (!metric || !orientation) throw std::invalid_argument("custom spacetime needs metric and orientation");
  Spacetime st(Family::Custom, dimension, std::nullopt, SpatialFactor::euclidean(dimension - 1));
  st.custom_metric_ = std::move(metric);
  st.custom_orientation_ = std::move(orientation);
  st.custom_domain_ = std::move(domain);
  return st;
}

const ScalarExpr& Spacetime::scale_factor() const {
  if (!scale_) throw UnsupportedError("scale factor requested on a non-GRW spacetime");
  return *scale_;
}

Matrix Spacetime::metric_at(const Point& p) const {
  switch (family_) {
    case Family::Minkowski: return minkowski_metric(dim_);
    case Family::GRW: {
      Matrix g = Matrix::Zero(dim_, dim_);
      const double f = scale_->value(p.time());
      g(0, 0) = -1.0;
      for (int i = 1; i < dim_; ++i) g(i, i) = f * f;
      return g;
    }
    case Family::Custom: return custom_metric_(p);
  }
  return {};
}

TangentVector Spacetime::orientation_at(const Point& p) const {
  if (family_ == Family::Custom) return {p, custom_orientation_(p)};
  return {p, time_axis(dim_)};
}

bool Spacetime::in_domain(const Point& p) const {
  if (p.size() != dim_ || !p.coords.allFinite()) return false;
  switch (family_) {
    case Family::Minkowski: return true;
    case Family::GRW: return scale_->in_interval(p.time());
    case Family::Custom: return custom_domain_ ? custom_domain_(p) : true;
  }
  return false;
}

std::vector<Matrix> Spacetime::christoffel_at(const Point& p) const {
  std::vector<Matrix> gamma(static_cast<std::size_t>(dim_), Matrix::Zero(dim_, dim_));
  if (family_ == Family::Minkowski) return gamma;
  if (family_ == Family::GRW) {
    const double t = p.time();
    const double f = scale_->value(t);
    const double df = scale_->derivative(t);
    for (int i = 1; i < dim_; ++i) {
      gamma[0](i, i) = f * df;
      gamma[static_cast<std::size_t>(i)](0, i) = df / f;
      gamma[static_cast<std::size_t>(i)](i, 0) = df / f;
    }
    return gamma;
  }
  // Gamma^a_{bc} = 1/2 g^{ad} (d_b g_dc + d_c g_db - d_d g_bc), central differences.
  constexpr double h = 1e-5;
  std::vector<Matrix> dg(static_cast<std::size_t>(dim_));
  for (int k = 0; k < dim_; ++k) {
    Point plus = p, minus = p;
    plus.coords[k] += h;
    minus.coords[k] -= h;
    dg[static_cast<std::size_t>(k)] = (custom_metric_(plus) - custom_metric_(minus)) / (2.0 * h);
  }
  const Eigen::FullPivLU<Matrix> lu(custom_metric_(p));
  if (!lu.isInvertible()) throw NumericalError("singular metric while computing Christoffel symbols");
  const Matrix ginv = lu.inverse();
  for (int a = 0; a < dim_; ++a) {
    for (int b = 0; b < dim_; ++b) {
      for (int c = 0; c < dim_; ++c) {
        double sum = 0.0;
        for (int d = 0; d < dim_; ++d) {
          const auto ub = static_cast<std::size_t>(b);
          const auto uc = static_cast<std::size_t>(c);
          const auto ud = static_cast<std::size_t>(d);
          sum += ginv(a, d) * (dg[ub](d, c) + dg[uc](d, b) - dg[ud](b, c));
        }
        gamma[static_cast<std::size_t>(a)](b, c) = 0.5 * sum;
      }
    }
  }
  return gamma;
}

Vector Spacetime::to_causal_chart(const Point& p) const {
  if (family_ == Family::Custom) throw UnsupportedError("custom spacetimes have no flat causal chart");
  Vector u = p.coords;
  if (family_ == Family::GRW) u[0] = scale_->conformal_time(p.time());
  return u;
}

Point Spacetime::from_causal_chart(const Vector& chart) const {
  if (family_ == Family::Custom) throw UnsupportedError("custom spacetimes have no flat causal chart");
  Point p(chart);
  if (family_ == Family::GRW) p.coords[0] = scale_->from_conformal_time(chart[0]);
  return p;
}

double Spacetime::causal_time_lower() const {
  return family_ == Family::GRW ? scale_->conformal_lower() : -kInf;
}

double Spacetime::causal_time_upper() const {
  return family_ == Family::GRW ? scale_->conformal_upper() : kInf;
}

std::string Spacetime::describe() const {
  std::ostringstream os;
  switch (family_) {
    case Family::Minkowski: os << "Minkowski(" << dim_ - 1 << ")"; break;
    case Family::GRW: {
      os << "GRW(f=" << scale_->to_string() << ", ";
      if (spatial_.is_torus()) {
        os << "torus[";
        for (std::size_t i = 0; i < spatial_.sides().size(); ++i) os << (i ? "," : "") << spatial_.sides()[i];
        os << "]";
      } else {
        os << "R^" << spatial_.dimension();
      }
      os << ")";
      break;
    }
    case Family::Custom: os << "Custom(" << dim_ << ")"; break;
  }
  return os.str();
}

// --- pairings and classification -------------------------------------------

double inner(const Spacetime& st, const TangentVector& x, const TangentVector& y) {
  if (!(x.base == y.base)) throw std::invalid_argument("inner: vectors live at different base points");
  if (x.components.size() != st.dimension() || y.components.size() != st.dimension()) {
    throw std::invalid_argument("inner: component count does not match the spacetime dimension");
  }
  return x.components.dot(st.metric_at(x.base) * y.components);
}

double lorentz_norm(const Spacetime& st, const TangentVector& x) {
  return std::sqrt(std::abs(inner(st, x, x)));
}

CausalClass classify(const Matrix& g, const Vector& x, const Vector& theta, double tol) {
  const double norm = x.norm();
  if (norm < tol) return {CausalType::Zero, TimeDirection::None};
  const double q = x.dot(g * x);
  CausalType type;
  if (std::abs(q) < tol * norm * norm) {
    type = CausalType::Null;
  } else if (q < 0.0) {
    type = CausalType::Timelike;
  } else {
    return {CausalType::Spacelike, TimeDirection::None};
  }
  const double pairing = x.dot(g * theta);
  return {type, pairing < 0.0 ? TimeDirection::Future : TimeDirection::Past};
}

CausalClass causal_class(const Spacetime& st, const TangentVector& x, double tol) {
  return classify(st.metric_at(x.base), x.components, st.orientation_at(x.base).components, tol);
}

CausalClass chord_class(const Spacetime& st, const Point& a, const Point& b, double tol) {
  if (st.has_flat_causal_chart()) {
    const Vector delta = st.to_causal_chart(b) - st.to_causal_chart(a);
    return classify(minkowski_metric(st.dimension()), delta, time_axis(st.dimension()), tol);
  }
  const Point mid(0.5 * (a.coords + b.coords), a.chart_id);
  return classify(st.metric_at(mid), b.coords - a.coords, st.orientation_at(mid).components, tol);
}

// --- gradients -------------------------------------------------------------

Vector finite_difference_differential(const ScalarField& f, const Point& p, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  Vector df(p.coords.size());
  for (Eigen::Index k = 0; k < p.coords.size(); ++k) {
    Point plus = p, minus = p;
    plus.coords[k] += step;
    minus.coords[k] -= step;
    df[k] = (f.value(plus) - f.value(minus)) / (2.0 * step);
  }
  return df;
}

TangentVector gradient(const Spacetime& st, const ScalarField& f, const Point& p, double step,
                       GradientMode mode) {
  const Vector df = (mode == GradientMode::Auto && f.differential)
                        ? f.differential(p)
                        : finite_difference_differential(f, p, step);
  const Matrix g = st.metric_at(p);
  if (st.family() != Spacetime::Family::Custom) {
    // Diagonal metrics invert in closed form.
    Vector grad = df.array() / g.diagonal().array();
    if (!grad.allFinite()) throw NumericalError("gradient: singular metric");
    return {p, grad};
  }
  const Eigen::FullPivLU<Matrix> lu(g);
  if (!lu.isInvertible()) throw NumericalError("gradient: singular metric");
  return {p, lu.solve(df)};
}

// --- geodesics -------------------------------------------------------------

namespace {

struct GeodesicState {
  Vector x;
  Vector v;
  Matrix frame;
};

GeodesicState geodesic_rhs(const Spacetime& st, const GeodesicState& s) {
  const Point p(s.x);
  const auto gamma = st.christoffel_at(p);
  const int dim = st.dimension();
  GeodesicState d{s.v, Vector::Zero(dim), Matrix::Zero(dim, s.frame.cols())};
  for (int a = 0; a < dim; ++a) {
    const Matrix& ga = gamma[static_cast<std::size_t>(a)];
    d.v[a] = -s.v.dot(ga * s.v);
    d.frame.row(a) = -(s.v.transpose() * ga) * s.frame;
  }
  return d;
}

GeodesicState axpy(const GeodesicState& s, double h, const GeodesicState& d) {
  return {s.x + h * d.x, s.v + h * d.v, s.frame + h * d.frame};
}

double locate_exit(const Spacetime& st, const Vector& x0, const Vector& v, double h) {
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (st.in_domain(Point(Vector(x0 + mid * h * v)))) lo = mid;
    else hi = mid;
  }
  return hi;
}

}  // namespace

ExpResult exp_map(const Spacetime& st, const TangentVector& x, int steps,
                  const std::optional<Matrix>& frame) {
  if (steps < 1) throw std::invalid_argument("exp_map needs at least one step");
  const int dim = st.dimension();
  if (x.components.size() != dim || x.base.size() != dim) {
    throw std::invalid_argument("exp_map: dimension mismatch");
  }
  if (!st.in_domain(x.base)) throw DomainEscapeError("exp_map: base point outside the chart domain", 0.0);
  Matrix e = frame ? *frame : Matrix::Identity(dim, dim);

  if (st.family() == Spacetime::Family::Minkowski) {
    return {Point(Vector(x.base.coords + x.components), x.base.chart_id), x.components, e};
  }

  GeodesicState s{x.base.coords, x.components, e};
  const double h = 1.0 / steps;
  for (int k = 0; k < steps; ++k) {
    const double s0 = k * h;
    auto inside = [&](const GeodesicState& y) { return st.in_domain(Point(y.x)); };
    auto escape = [&]() {
      const double frac = s0 + h * locate_exit(st, s.x, s.v, h);
      return DomainEscapeError("exp_map: geodesic left the chart domain", std::min(1.0, frac));
    };
    const GeodesicState k1 = geodesic_rhs(st, s);
    const GeodesicState y2 = axpy(s, 0.5 * h, k1);
    if (!inside(y2)) throw escape();
    const GeodesicState k2 = geodesic_rhs(st, y2);
    const GeodesicState y3 = axpy(s, 0.5 * h, k2);
    if (!inside(y3)) throw escape();
    const GeodesicState k3 = geodesic_rhs(st, y3);
    const GeodesicState y4 = axpy(s, h, k3);
    if (!inside(y4)) throw escape();
    const GeodesicState k4 = geodesic_rhs(st, y4);
    GeodesicState next{s.x + (h / 6.0) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
                       s.v + (h / 6.0) * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v),
                       s.frame + (h / 6.0) * (k1.frame + 2.0 * k2.frame + 2.0 * k3.frame + k4.frame)};
    if (!inside(next)) throw escape();
    s = std::move(next);
  }
  return {Point(s.x, x.base.chart_id), s.v, s.frame};
}

Signature signature_at(const Spacetime& st, const Point& p, double tol) {
  const Eigen::SelfAdjointEigenSolver<Matrix> solver(st.metric_at(p), Eigen::EigenvaluesOnly);
  Signature sig;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double ev = solver.eigenvalues()[i];
    if (ev < -tol) ++sig.negative;
    else if (ev > tol) ++sig.positive;
    else ++sig.zero;
  }
  return sig;
}

SampleBox default_sample_box(const Spacetime& st) {
  const int dim = st.dimension();
  SampleBox box{Vector::Constant(dim, -1.0), Vector::Constant(dim, 1.0)};
  if (st.family() == Spacetime::Family::GRW) {
    if (std::isfinite(st.scale_factor().interval_lower())) {
      box.lower[0] = 0.5;
      box.upper[0] = 1.5;
    }
    if (st.spatial().is_torus()) {
      for (int i = 1; i < dim; ++i) {
        box.lower[i] = 0.0;
        box.upper[i] = st.spatial().sides()[static_cast<std::size_t>(i - 1)];
      }
    }
  }
  return box;
}

}  // namespace nulldist
