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

#include "nulldist/slim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "nulldist/csv.hpp"
#include "nulldist/errors.hpp"
#include "nulldist/kernels.hpp"
#include "nulldist/sampling.hpp"

namespace nulldist {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_eps_closed(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1)");
}

double eta_quadratic(double eps, const Vector& v) {
  return -(1.0 - eps) * v[0] * v[0] + v.tail(v.size() - 1).squaredNorm();
}

}  // namespace

double eta_eps_inner(double eps, const Vector& v, const Vector& w) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (v.size() != w.size() || v.size() < 1) throw std::invalid_argument("eta_eps_inner: size mismatch");
  return -(1.0 - eps) * v[0] * w[0] + v.tail(v.size() - 1).dot(w.tail(w.size() - 1));
}

Matrix eta_eps_matrix(double eps, int dim) {
  Matrix m = Matrix::Identity(dim, dim);
  m(0, 0) = -(1.0 - eps);
  return m;
}

NormalChart NormalChart::build(const Spacetime& st, const TimeFunction& f, const Point& center,
                               const Vector& velocity, int exp_steps) {
  const int dim = st.dimension();
  const Matrix g = st.metric_at(center);
  auto ip = [&](const Vector& a, const Vector& b) { return a.dot(g * b); };

  const TangentVector grad = gradient(st, f.field(), center);
  const double gg = ip(grad.components, grad.components);
  if (!(gg < 0.0)) throw PreconditionError("gradient of f is not timelike at the chart center");
  const double c = std::sqrt(-gg);

  std::vector<Vector> basis;
  std::vector<double> signs;
  auto add = [&](Vector u) {
    for (std::size_t k = 0; k < basis.size(); ++k) u -= (ip(u, basis[k]) / signs[k]) * basis[k];
    const double nu = ip(u, u);
    if (std::abs(nu) < 1e-10) return false;
    basis.push_back(u / std::sqrt(std::abs(nu)));
    signs.push_back(nu < 0.0 ? -1.0 : 1.0);
    return true;
  };
  add(-grad.components / c);
  if (velocity.size() == dim && dim > 1) {
    if (!add(velocity) || signs.back() < 0.0) {
      throw PreconditionError("curve velocity must be spacelike and orthogonal to grad f");
    }
  }
  for (int i = 0; i < dim && static_cast<int>(basis.size()) < dim; ++i) add(Vector::Unit(dim, i));
  if (static_cast<int>(basis.size()) != dim) throw NumericalError("could not complete the orthonormal frame");

  Matrix frame(dim, dim);
  for (int a = 0; a < dim; ++a) frame.col(a) = basis[static_cast<std::size_t>(a)];
  return NormalChart(st, center, std::move(frame), c, exp_steps);
}

Point NormalChart::from_chart(const Vector& y) const {
  return exp_map(*st_, TangentVector{center_, frame_ * y}, steps_).point;
}

Vector NormalChart::to_chart(const Point& x) const {
  Vector y = inverse_ * (x.coords - center_.coords);
  double last = kInf;
  for (int it = 0; it < 100; ++it) {
    const Vector r = x.coords - from_chart(y).coords;
    const double rn = r.norm();
    if (rn == 0.0) return y;
    if (!(rn < last)) break;
    last = rn;
    y += inverse_ * r;
  }
  if (!(last <= 1e-12 * (1.0 + x.coords.norm()))) {
    throw NumericalError("to_chart did not converge");
  }
  return y;
}

Matrix NormalChart::jacobian(const Vector& y, double h) const {
  const int dim = dimension();
  Matrix j(dim, dim);
  for (int a = 0; a < dim; ++a) {
    Vector yp = y;
    Vector ym = y;
    yp[a] += h;
    ym[a] -= h;
    j.col(a) = (from_chart(yp).coords - from_chart(ym).coords) / (2.0 * h);
  }
  return j;
}

Matrix NormalChart::pullback_metric(const Vector& y, double h) const {
  const Matrix j = jacobian(y, h);
  return j.transpose() * st_->metric_at(from_chart(y)) * j;
}

ConeDominationReport verify_cone_domination(const Spacetime& st, const NormalChart& chart, double eps,
                                            double radius, int point_grid, int dir_grid) {
  (void)st;
  check_eps_closed(eps);
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (point_grid < 16 || dir_grid < 16) throw std::invalid_argument("grids must have at least 16 points");
  const int dim = chart.dimension();

  std::vector<Vector> dirs;
  for (const Vector& v : sphere_directions(dim, dir_grid)) {
    if (eta_quadratic(eps, v) <= 0.0) dirs.push_back(v);
  }
  const double bt = 1.0 / std::sqrt(2.0 - eps);
  const double bx = std::sqrt((1.0 - eps) / (2.0 - eps));
  for (const Vector& w : sphere_directions(dim - 1, dir_grid)) {
    Vector b(dim);
    b[0] = bt;
    b.tail(dim - 1) = bx * w;
    dirs.push_back(b);
  }
  dirs.push_back(Vector::Unit(dim, 0));

  const std::size_t count = dirs.size();
  std::vector<double> packed(static_cast<std::size_t>(dim) * count);
  for (std::size_t k = 0; k < count; ++k) {
    for (int d = 0; d < dim; ++d) packed[static_cast<std::size_t>(d) * count + k] = dirs[k][d];
  }

  std::vector<Vector> points{Vector::Zero(dim)};
  const std::vector<Vector> shell = sphere_directions(dim, point_grid);
  for (double frac : {1.0 / 3.0, 2.0 / 3.0, 1.0}) {
    for (const Vector& u : shell) points.push_back(frac * radius * u);
  }

  const Matrix eta = eta_eps_matrix(eps, dim);
  const auto& kern = kernels::active();
  ConeDominationReport rep;
  rep.max_f = -kInf;
  rep.points = static_cast<int>(points.size());
  rep.directions = static_cast<int>(count);
  std::vector<double> out(count);
  for (const Vector& y : points) {
    Matrix m;
    try {
      m = chart.pullback_metric(y) - eta;
    } catch (const DomainEscapeError&) {
      ++rep.escapes;
      if (rep.max_f < kInf) {
        rep.max_f = kInf;
        rep.argmax_point = y;
        rep.argmax_direction = dirs.front();
      }
      continue;
    }
    const Matrix sym = 0.5 * (m + m.transpose());
    kern.quadratic_forms(sym.data(), static_cast<std::size_t>(dim), packed.data(), count, out.data());
    const double mx = kern.max_value(out.data(), count);
    if (mx > rep.max_f) {
      rep.max_f = mx;
      rep.argmax_point = y;
      const auto it = std::find(out.begin(), out.end(), mx);
      rep.argmax_direction = dirs[static_cast<std::size_t>(it - out.begin())];
    }
  }
  rep.pass = rep.max_f < 0.0;
  return rep;
}

CertifiedRadius certify_radius(const Spacetime& st, const NormalChart& chart, double eps, double r_max,
                               int point_grid, int dir_grid, int iterations) {
  CertifiedRadius out;
  ConeDominationReport top = verify_cone_domination(st, chart, eps, r_max, point_grid, dir_grid);
  if (top.pass) return {r_max, top};
  double lo = 0.0;
  double hi = r_max;
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    ConeDominationReport rep = verify_cone_domination(st, chart, eps, mid, point_grid, dir_grid);
    if (rep.pass) {
      lo = mid;
      out.report = std::move(rep);
    } else {
      hi = mid;
    }
  }
  out.radius = lo;
  if (lo == 0.0) out.report = std::move(top);
  return out;
}

double t_star(double t, double x_norm, double eps) {
  check_eps_closed(eps);
  const double a = std::sqrt(1.0 - eps);
  const double gap = x_norm - a * t;
  if (x_norm == 0.0 || std::abs(gap) < 1e-12) {
    throw DegenerateConfigurationError("t_star: |x| - sqrt(1 - eps) t vanishes");
  }
  return (x_norm * x_norm - (1.0 - eps) * t * t) / (2.0 * a * gap);
}

double t_star(const Vector& q, double eps) { return t_star(q[0], q.tail(q.size() - 1).norm(), eps); }

LevelSetCurve level_set_line(const Spacetime& st, const Point& p, const Vector& spatial_direction) {
  if (!st.has_flat_causal_chart()) throw UnsupportedError("level_set_line needs a built-in family");
  const int n = st.spatial_dimension();
  if (spatial_direction.size() != n || spatial_direction.norm() == 0.0) {
    throw std::invalid_argument("level_set_line: direction must be a nonzero spatial vector");
  }
  const double scale = st.family() == Spacetime::Family::GRW ? st.scale_factor().value(p.time()) : 1.0;
  const Vector step = spatial_direction.normalized() / scale;
  LevelSetCurve c;
  c.at = [p, step, n](double s) {
    if (s == 0.0) return p;
    Point x = p;
    x.coords.tail(n) += s * step;
    return x;
  };
  c.initial_velocity = Vector::Zero(n + 1);
  c.initial_velocity.tail(n) = step;
  return c;
}

SlimZigzag build_slim_zigzag(const Spacetime& st, const TimeFunction& f, const NormalChart& chart,
                             const LevelSetCurve& gamma, double s, double eps, double radius,
                             const SlimOptions& options) {
  (void)st;
  check_eps_closed(eps);
  if (!(s > 0.0)) throw std::invalid_argument("s must be positive");
  const int dim = chart.dimension();
  const int n = dim - 1;
  const Point qs = gamma.at(s);
  SlimZigzag z;
  z.q_chart = chart.to_chart(qs);
  if (z.q_chart.norm() > radius) {
    throw OutOfNeighborhoodError("gamma(s) lies outside the certified chart radius");
  }
  const Vector x = z.q_chart.tail(n);
  const double xn = x.norm();
  const double a = std::sqrt(1.0 - eps);
  z.r_chart = Vector(dim);
  if (options.apex == ApexSide::Future) {
    z.t_star = t_star(z.q_chart[0], xn, eps);
    z.r_chart[0] = z.t_star;
  } else {
    z.t_star = t_star(-z.q_chart[0], xn, eps);
    z.r_chart[0] = -z.t_star;
  }
  z.r_chart.tail(n) = (a * z.t_star / xn) * x;
  const Vector second = z.q_chart - z.r_chart;
  z.residual_first = eta_quadratic(eps, z.r_chart);
  z.residual_second = eta_quadratic(eps, second);

  const int m = std::max(2, options.samples_per_segment);
  const Point r_point = chart.from_chart(z.r_chart);
  auto dir_of = [](double du) { return du > 0.0 ? TimeDirection::Future : TimeDirection::Past; };
  CausalSegment first{{}, dir_of(z.r_chart[0])};
  CausalSegment last{{}, dir_of(second[0])};
  for (int k = 0; k < m; ++k) {
    const double u = static_cast<double>(k) / (m - 1);
    if (k == 0) {
      first.samples.push_back(chart.center());
      last.samples.push_back(r_point);
    } else if (k == m - 1) {
      first.samples.push_back(r_point);
      last.samples.push_back(qs);
    } else {
      first.samples.push_back(chart.from_chart(u * z.r_chart));
      last.samples.push_back(chart.from_chart(z.r_chart + u * second));
    }
  }
  z.curve.segments = {std::move(first), std::move(last)};
  z.null_length = null_length(f, z.curve);
  return z;
}

double extrapolate_to_zero(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) throw std::invalid_argument("extrapolate_to_zero: bad input");
  std::vector<double> p(y.begin(), y.end());
  const std::size_t n = p.size();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      p[i] = (-x[i + m] * p[i] + x[i] * p[i + 1]) / (x[i] - x[i + m]);
    }
  }
  return p[0];
}

RatioTable ratio_table(const Spacetime& st, const TimeFunction& f, const Point& p,
                       const Vector& spatial_direction, std::span<const double> s_list,
                       std::span<const double> eps_list, const RatioOptions& options) {
  if (s_list.empty() || eps_list.empty()) throw std::invalid_argument("ratio_table: empty grid");
  for (std::size_t i = 0; i < s_list.size(); ++i) {
    if (!(s_list[i] > 0.0) || (i > 0 && !(s_list[i] < s_list[i - 1]))) {
      throw std::invalid_argument("ratio_table: s values must be positive and decreasing");
    }
  }
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0 && eps_list[i] < 1.0) || (i > 0 && !(eps_list[i] < eps_list[i - 1]))) {
      throw std::invalid_argument("ratio_table: epsilon values must be decreasing inside (0, 1)");
    }
  }
  const LevelSetCurve gamma = level_set_line(st, p, spatial_direction);
  const NormalChart chart = NormalChart::build(st, f, p, gamma.initial_velocity);
  RatioTable table;
  table.c = chart.c();
  for (double eps : eps_list) {
    const CertifiedRadius cert =
        certify_radius(st, chart, eps, options.r_max, options.point_grid, options.dir_grid);
    std::vector<double> xs;
    std::vector<double> ys;
    for (double s : s_list) {
      const SlimZigzag z = build_slim_zigzag(st, f, chart, gamma, s, eps, cert.radius, options.slim);
      RatioRow row{eps, s, z.t_star / s, z.null_length / s,
                   std::max(std::abs(z.residual_first), std::abs(z.residual_second))};
      table.rows.push_back(row);
      xs.push_back(s);
      ys.push_back(row.ratio);
    }
    RatioLimit lim;
    lim.eps = eps;
    lim.radius = cert.radius;
    lim.target = table.c / std::sqrt(1.0 - eps);
    lim.last = ys.back();
    lim.extrapolated = lim.last;
    if (xs.size() >= 3) {
      const std::size_t k = xs.size() - 3;
      const double v = extrapolate_to_zero(std::span(xs).subspan(k), std::span(ys).subspan(k));
      if (std::isfinite(v)) {
        lim.extrapolated = v;
        lim.extrapolation_used = true;
      }
    }
    table.limits.push_back(lim);
  }
  table.diagonal = table.limits.back().extrapolated;
  if (table.limits.size() >= 3) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = table.limits.size() - 3; i < table.limits.size(); ++i) {
      xs.push_back(table.limits[i].eps);
      ys.push_back(table.limits[i].extrapolated);
    }
    const double v = extrapolate_to_zero(xs, ys);
    if (std::isfinite(v)) table.diagonal = v;
  }
  return table;
}

void write_ratio_csv(std::ostream& os, const RatioTable& table) {
  os << "epsilon,s,t_star_over_s,ratio\n";
  for (const auto& r : table.rows) {
    const std::string fields[] = {format_double(r.eps), format_double(r.s), format_double(r.t_star_over_s),
                                  format_double(r.ratio)};
    os << csv_row(fields);
  }
}

}  // namespace nulldist
