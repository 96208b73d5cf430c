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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nulldist/errors.hpp"
#include "nulldist/nulldist.hpp"
#include "nulldist/slim.hpp"

namespace nulldist {
namespace {

const auto tau_t = TimeFunction::coordinate_t();

Vector vec(std::initializer_list<double> c) {
  Vector v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (double x : c) v[i++] = x;
  return v;
}

// max of -eps v0^2 over unit v with -(1 - eps) v0^2 + |x|^2 <= 0, by a scan
// over v0 in [0, 1].
double minkowski_max_f(double eps) {
  double best = -HUGE_VAL;
  for (int k = 0; k <= 1000000; ++k) {
    const double v0 = k / 1000000.0;
    const double x2 = 1.0 - v0 * v0;
    if (-(1.0 - eps) * v0 * v0 + x2 <= 0.0) best = std::max(best, -eps * v0 * v0);
  }
  return best;
}

TEST(EtaEps, ConeBoundary) { EXPECT_NEAR(eta_eps_inner(0.19, vec({1, 0.9, 0}), vec({1, 0.9, 0})), 0.0, 1e-15); }

TEST(EtaEps, SmallEpsilonApproachesMinkowski) {
  EXPECT_NEAR(eta_eps_inner(1e-12, vec({1, 1}), vec({1, 1})), 0.0, 1e-11);
  EXPECT_EQ(eta_eps_matrix(0.0, 2), Spacetime::minkowski(1).metric_at(Point{0, 0}));
}

TEST(EtaEps, Spacelike) { EXPECT_DOUBLE_EQ(eta_eps_inner(0.5, vec({1, 1}), vec({1, 1})), -0.5 + 1.0); }

TEST(EtaEps, RangeChecked) {
  EXPECT_THROW(eta_eps_inner(0.0, vec({1, 1}), vec({1, 1})), std::invalid_argument);
  EXPECT_THROW(eta_eps_inner(1.0, vec({1, 1}), vec({1, 1})), std::invalid_argument);
  EXPECT_THROW(eta_eps_inner(-0.1, vec({1, 1}), vec({1, 1})), std::invalid_argument);
}

TEST(NormalChart, FrameProperties) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0, 1.0}));
  const auto f = TimeFunction::phi_of_t(ScalarExpr::quadratic());
  const Point p{1, 0.3, 0.3};
  const auto gam = level_set_line(g, p, vec({1, 0}));
  const auto chart = NormalChart::build(g, f, p, gam.initial_velocity);
  EXPECT_NEAR(chart.c(), 2.0, 1e-12);
  const Matrix eta = eta_eps_matrix(0.0, 3);
  EXPECT_LT((chart.pullback_metric(Vector::Zero(3)) - eta).norm(), 1e-9);
  const Vector grad = gradient(g, f.field(), p).components;
  const Vector in_chart = chart.frame().inverse() * grad;
  EXPECT_LT((in_chart + chart.c() * Vector::Unit(3, 0)).norm(), 1e-9);
  const Vector e1 = chart.frame().inverse() * gam.initial_velocity;
  EXPECT_LT((e1 - Vector::Unit(3, 1)).norm(), 1e-9);
}

TEST(NormalChart, RoundTrip) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0, 1.0}));
  const Point p{1, 0.3, 0.3};
  const auto chart = NormalChart::build(g, tau_t, p, level_set_line(g, p, vec({0, 1})).initial_velocity);
  const Vector y = vec({0.05, -0.1, 0.07});
  EXPECT_LT((chart.to_chart(chart.from_chart(y)) - y).norm(), 1e-10);
  EXPECT_EQ(chart.from_chart(Vector::Zero(3)), p);
}

TEST(NormalChart, RequiresTimelikeGradient) {
  const auto m = Spacetime::minkowski(1);
  const auto x1 = TimeFunction::custom(
      "x1", [](const Point& q) { return q.coords[1]; }, [](const Point& q) { return Vector::Unit(q.size(), 1).eval(); });
  EXPECT_THROW(NormalChart::build(m, x1, Point{0, 0}, vec({0, 1})), PreconditionError);
}

TEST(ConeDomination, MinkowskiMaximum) {
  const auto m = Spacetime::minkowski(2);
  const auto chart = NormalChart::build(m, tau_t, Point{0, 0, 0}, vec({0, 1, 0}));
  for (double eps : {0.5, 0.19, 0.01}) {
    for (double radius : {0.1, 1.0, 10.0}) {
      const auto r = verify_cone_domination(m, chart, eps, radius, 16, 32);
      EXPECT_NEAR(r.max_f, minkowski_max_f(eps), 1e-6) << eps << " " << radius;
      EXPECT_TRUE(r.pass);
      EXPECT_EQ(r.escapes, 0);
    }
  }
}

TEST(ConeDomination, GrwCertifiedRadius) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0}));
  const Point p{1, 0};
  const auto chart = NormalChart::build(g, tau_t, p, level_set_line(g, p, vec({1})).initial_velocity);
  const auto cert = certify_radius(g, chart, 0.1, 0.5, 16, 32);
  EXPECT_GT(cert.radius, 0.0);
  EXPECT_LT(cert.report.max_f, 0.0);
  EXPECT_TRUE(cert.report.pass);
  const auto again = verify_cone_domination(g, chart, 0.1, cert.radius, 16, 32);
  EXPECT_EQ(again.max_f, cert.report.max_f);
}

TEST(ConeDomination, LargeRadiusFails) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0}));
  const Point p{1, 0};
  const auto chart = NormalChart::build(g, tau_t, p, level_set_line(g, p, vec({1})).initial_velocity);
  const auto r = verify_cone_domination(g, chart, 0.1, 0.9, 16, 32);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.max_f, 0.0);
}

TEST(ConeDomination, GridMinimum) {
  const auto m = Spacetime::minkowski(1);
  const auto chart = NormalChart::build(m, tau_t, Point{0, 0}, vec({0, 1}));
  EXPECT_ANY_THROW(verify_cone_domination(m, chart, 0.1, 1.0, 8, 32));
  EXPECT_ANY_THROW(verify_cone_domination(m, chart, 0.1, 1.0, 16, 8));
}

TEST(TStar, SmallEpsilonHalfDistance) {
  EXPECT_DOUBLE_EQ(t_star(0.0, 0.7, 0.0), 0.35);
  EXPECT_NEAR(t_star(0.0, 0.7, 1e-9), 0.35, 1e-9);
}

TEST(TStar, Formula) {
  const double eps = 0.75, t = 0.0, x = 1.0, a = std::sqrt(1 - eps);
  EXPECT_DOUBLE_EQ(t_star(t, x, eps), (x * x - (1 - eps) * t * t) / (2 * a * (x - a * t)));
  EXPECT_DOUBLE_EQ(t_star(t, x, eps), 1.0);
  EXPECT_DOUBLE_EQ(t_star(vec({0.0, 0.6, 0.8}), eps), 1.0);
}

TEST(TStar, Degenerate) {
  EXPECT_THROW(t_star(0.0, 0.0, 0.5), DegenerateConfigurationError);
  EXPECT_THROW(t_star(1.0, std::sqrt(0.5), 0.5), DegenerateConfigurationError);
}

TEST(SlimZigzag, MinkowskiExample) {
  const auto m = Spacetime::minkowski(1);
  const Point p{0, 0};
  const auto gam = level_set_line(m, p, vec({1}));
  const auto chart = NormalChart::build(m, tau_t, p, gam.initial_velocity);
  const auto z = build_slim_zigzag(m, tau_t, chart, gam, 0.2, 0.0, 1.0);
  EXPECT_NEAR(z.null_length, 0.2, 1e-12);
  EXPECT_NEAR(z.t_star, 0.1, 1e-12);
  EXPECT_TRUE(validate(m, z.curve).pass);
  EXPECT_EQ(z.curve.start(), p);
  EXPECT_LT((z.curve.end().coords - gam.at(0.2).coords).norm(), 1e-12);
}

TEST(SlimZigzag, ChartSegmentsNull) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0, 1.0}));
  const Point p{1, 0.3, 0.3};
  const auto gam = level_set_line(g, p, vec({0.6, 0.8}));
  const auto chart = NormalChart::build(g, tau_t, p, gam.initial_velocity);
  for (double eps : {0.5, 0.19, 0.01}) {
    for (double s : {1e-2, 1e-3}) {
      const auto z = build_slim_zigzag(g, tau_t, chart, gam, s, eps, 0.3);
      EXPECT_LE(std::abs(z.residual_first), 1e-12);
      EXPECT_LE(std::abs(z.residual_second), 1e-12);
      EXPECT_NEAR(z.r_chart.norm(), std::sqrt(2 - eps) * std::abs(z.t_star), 1e-12);
      const auto v = validate(g, z.curve);
      EXPECT_TRUE(v.pass) << v.message;
    }
  }
}

TEST(SlimZigzag, GrwRatio) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0, 1.0}));
  const Point p{1, 0.5, 0.5};
  const auto gam = level_set_line(g, p, vec({1, 0}));
  const auto chart = NormalChart::build(g, tau_t, p, gam.initial_velocity);
  const auto z = build_slim_zigzag(g, tau_t, chart, gam, 1e-3, 0.1, 0.3);
  EXPECT_NEAR(z.null_length / 1e-3, 1.0 / std::sqrt(0.9), 5e-3);
}

TEST(SlimZigzag, UpperBoundConsistency) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0, 1.0}));
  const Point p{1, 0.5, 0.5};
  const auto gam = level_set_line(g, p, vec({1, 0}));
  const auto chart = NormalChart::build(g, tau_t, p, gam.initial_velocity);
  const auto z = build_slim_zigzag(g, tau_t, chart, gam, 1e-2, 0.19, 0.3);
  EstimateOptions o;
  o.warm_start = z.curve;
  const auto e = estimate(g, tau_t, p, z.curve.end(), o);
  EXPECT_GE(z.null_length, e.lower);
  EXPECT_LE(e.upper, z.null_length);
}

TEST(SlimZigzag, OutsideRadius) {
  const auto m = Spacetime::minkowski(1);
  const Point p{0, 0};
  const auto gam = level_set_line(m, p, vec({1}));
  const auto chart = NormalChart::build(m, tau_t, p, gam.initial_velocity);
  EXPECT_THROW(build_slim_zigzag(m, tau_t, chart, gam, 0.5, 0.1, 0.1), OutOfNeighborhoodError);
}

TEST(RatioTable, MinkowskiLimits) {
  const auto m = Spacetime::minkowski(2);
  const double s_list[] = {1e-2, 1e-3, 1e-4};
  const double eps_list[] = {0.5, 0.19, 0.01};
  const auto tab = ratio_table(m, tau_t, Point{0, 0, 0}, vec({1, 0}), s_list, eps_list);
  ASSERT_EQ(tab.rows.size(), 9u);
  ASSERT_EQ(tab.limits.size(), 3u);
  for (const auto& l : tab.limits) {
    EXPECT_DOUBLE_EQ(l.target, 1.0 / std::sqrt(1.0 - l.eps));
    EXPECT_NEAR(l.extrapolated, l.target, 1e-3);
  }
  for (const auto& r : tab.rows) {
    if (r.s == 1e-4) EXPECT_NEAR(r.t_star_over_s, 1.0 / (2.0 * std::sqrt(1.0 - r.eps)), 1e-3);
    EXPECT_LE(std::abs(r.residual), 1e-12);
  }
  EXPECT_NEAR(tab.diagonal, 1.0, 2e-3);
  EXPECT_NEAR(tab.limits[1].extrapolated, 1.0 / 0.9, 1e-3);
}

TEST(RatioTable, RejectsBadLists) {
  const auto m = Spacetime::minkowski(1);
  const double up[] = {1e-3, 1e-2};
  const double eps[] = {0.5};
  const double bad_eps[] = {1.5};
  EXPECT_ANY_THROW(ratio_table(m, tau_t, Point{0, 0}, vec({1}), up, eps));
  const double down[] = {1e-2, 1e-3};
  EXPECT_ANY_THROW(ratio_table(m, tau_t, Point{0, 0}, vec({1}), down, bad_eps));
}

TEST(RatioTable, CsvHeader) {
  const auto m = Spacetime::minkowski(1);
  const double s_list[] = {1e-2, 1e-3};
  const double eps_list[] = {0.5};
  std::ostringstream os;
  write_ratio_csv(os, ratio_table(m, tau_t, Point{0, 0}, vec({1}), s_list, eps_list));
  const std::string s = os.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "epsilon,s,t_star_over_s,ratio");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 3);
}

TEST(Extrapolation, PolynomialExact) {
  const double x[] = {0.5, 0.25, 0.125};
  double y[3];
  for (int i = 0; i < 3; ++i) y[i] = 3.0 - 2.0 * x[i] + 5.0 * x[i] * x[i];
  EXPECT_NEAR(extrapolate_to_zero(x, y), 3.0, 1e-12);
}

}  // namespace
}  // namespace nulldist
