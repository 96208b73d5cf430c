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

#include <cmath>
#include <stdexcept>

#include "nulldist/errors.hpp"
#include "nulldist/geometry.hpp"
#include "nulldist/random.hpp"
#include "nulldist/sampling.hpp"
#include "nulldist/timefns.hpp"

namespace nulldist {
namespace {

TangentVector tv(const Point& p, std::initializer_list<double> c) {
  Vector v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (double x : c) v[i++] = x;
  return {p, v};
}

Spacetime grw_t_torus1() { return Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0})); }

TEST(Inner, MinkowskiTimeAxis) {
  const auto m = Spacetime::minkowski(1);
  const Point o{0, 0};
  EXPECT_EQ(inner(m, tv(o, {1, 0}), tv(o, {1, 0})), -1.0);
}

TEST(Inner, MinkowskiNullVector) {
  const auto m = Spacetime::minkowski(1);
  const Point o{0, 0};
  EXPECT_EQ(inner(m, tv(o, {1, 1}), tv(o, {1, 1})), 0.0);
}

TEST(Inner, GrwSpatialScalesWithFSquared) {
  const auto g = grw_t_torus1();
  const Point p{2, 0};
  const double f = 2.0;  // f(t) = t at t = 2
  EXPECT_DOUBLE_EQ(inner(g, tv(p, {0, 1}), tv(p, {0, 1})), f * f * 1.0);
}

TEST(Inner, SymmetricAndRejectsMismatchedBase) {
  const auto g = Spacetime::grw(ScalarExpr::exponential(), SpatialFactor::euclidean(2));
  const Point p{0.3, 1, -2};
  const auto x = tv(p, {1, 0.2, -0.4});
  const auto y = tv(p, {0.5, 1.5, 0.25});
  EXPECT_DOUBLE_EQ(inner(g, x, y), inner(g, y, x));
  EXPECT_THROW(inner(g, x, tv(Point{0.4, 1, -2}, {1, 0, 0})), std::invalid_argument);
}

TEST(CausalClass, Examples) {
  const auto m = Spacetime::minkowski(3);
  const Point o{0, 0, 0, 0};
  EXPECT_EQ(causal_class(m, tv(o, {1, 0, 0, 0})), (CausalClass{CausalType::Timelike, TimeDirection::Future}));
  EXPECT_EQ(causal_class(m, tv(o, {-1, 1, 0, 0})), (CausalClass{CausalType::Null, TimeDirection::Past}));
  EXPECT_EQ(causal_class(m, tv(o, {0, 1, 0, 0})), (CausalClass{CausalType::Spacelike, TimeDirection::None}));
  EXPECT_EQ(causal_class(m, tv(o, {0, 0, 0, 0})), (CausalClass{CausalType::Zero, TimeDirection::None}));
}

TEST(CausalClass, RelativeToleranceIsScaleInvariant) {
  const auto m = Spacetime::minkowski(1);
  const Point o{0, 0};
  for (double s : {1e-6, 1.0, 1e6}) {
    EXPECT_EQ(causal_class(m, tv(o, {s, s * (1 + 1e-12)})).type, CausalType::Null) << s;
    EXPECT_EQ(causal_class(m, tv(o, {s, s * 0.5})).type, CausalType::Timelike) << s;
  }
}

TEST(CausalClass, DirectionOnlyForCausal) {
  const auto g = Spacetime::grw(ScalarExpr::quadratic(), SpatialFactor::euclidean(2));
  Rng rng(5);
  const Point p{1.3, 0, 0};
  for (int k = 0; k < 500; ++k) {
    const auto x = tv(p, {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    const auto c = causal_class(g, x);
    EXPECT_EQ(c.direction != TimeDirection::None, c.causal());
  }
}

TEST(Gradient, MinkowskiCoordinateTime) {
  const auto m = Spacetime::minkowski(1);
  const auto t = TimeFunction::coordinate_t();
  const auto grad = gradient(m, t.field(), Point{0.4, -1});
  EXPECT_DOUBLE_EQ(grad.components[0], -1.0);
  EXPECT_DOUBLE_EQ(grad.components[1], 0.0);
}

TEST(Gradient, GrwPhiOfT) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0, 1.0}));
  const auto tau = TimeFunction::phi_of_t(ScalarExpr::quadratic());
  const Point p{1.5, 0.2, 0.7};
  const auto grad = gradient(g, tau.field(), p);
  EXPECT_NEAR(grad.components[0], -2.0 * 1.5, 1e-12);
  EXPECT_NEAR(grad.components[1], 0.0, 1e-12);
  EXPECT_NEAR(grad.components[2], 0.0, 1e-12);
}

TEST(Gradient, LinearFieldFiniteDifference) {
  const auto m = Spacetime::minkowski(2);
  ScalarField f{[](const Point& p) { return p.coords[0] + 0.5 * p.coords[1]; }, {}};
  const auto grad = gradient(m, f, Point{0.1, 0.2, 0.3});
  // eta^{-1} applied to df = (1, 0.5, 0)
  Vector df(3);
  df << 1, 0.5, 0;
  const Vector expect = m.metric_at(Point{0.1, 0.2, 0.3}).inverse() * df;
  EXPECT_NEAR((grad.components - expect).norm(), 0.0, 1e-9);
  EXPECT_NEAR(grad.components[0], -1.0, 1e-9);
  EXPECT_NEAR(grad.components[1], 0.5, 1e-9);
}

TEST(Gradient, ClosedFormMatchesFiniteDifferenceToSecondOrder) {
  const auto g = Spacetime::grw(ScalarExpr::exponential(), SpatialFactor::euclidean(1));
  const auto tau = TimeFunction::phi_of_t(ScalarExpr::exponential());
  const Point p{0.7, 0.3};
  const auto exact = gradient(g, tau.field(), p).components;
  const double e1 = (gradient(g, tau.field(), p, 1e-2, GradientMode::FiniteDifference).components - exact).norm();
  const double e2 = (gradient(g, tau.field(), p, 5e-3, GradientMode::FiniteDifference).components - exact).norm();
  EXPECT_LT(e1, 1e-3);
  // halving the step quarters the error
  EXPECT_NEAR(e1 / e2, 4.0, 0.2);
}

TEST(Gradient, SingularMetricThrows) {
  const auto st = Spacetime::custom(
      2, [](const Point&) { return Matrix::Zero(2, 2).eval(); },
      [](const Point&) { return Vector::Unit(2, 0).eval(); });
  ScalarField f{[](const Point& p) { return p.coords[0]; }, {}};
  EXPECT_THROW(gradient(st, f, Point{0, 0}), NumericalError);
}

TEST(ExpMap, MinkowskiStraightLine) {
  const auto m = Spacetime::minkowski(2);
  const auto r = exp_map(m, tv(Point{0, 0, 0}, {1, 2, 0}), 4);
  EXPECT_EQ(r.point.coords, (Vector(3) << 1, 2, 0).finished());
}

TEST(ExpMap, GrwVerticalGeodesic) {
  const auto g = grw_t_torus1();
  const auto coarse = exp_map(g, tv(Point{1, 0}, {1, 0}), 8).point.coords;
  const auto fine = exp_map(g, tv(Point{1, 0}, {1, 0}), 64).point.coords;
  EXPECT_LT((coarse - fine).norm(), 1e-12);
  EXPECT_NEAR(fine[0], 2.0, 1e-12);
  EXPECT_NEAR(fine[1], 0.0, 1e-12);
}

TEST(ExpMap, GrwTiltedGeodesicSelfConverges) {
  const auto g = grw_t_torus1();
  const auto x = tv(Point{1, 0}, {0.5, 0.6});
  const Vector a = exp_map(g, x, 16).point.coords;
  const Vector b = exp_map(g, x, 32).point.coords;
  const Vector c = exp_map(g, x, 64).point.coords;
  const double ratio = (a - b).norm() / (b - c).norm();
  EXPECT_GT(ratio, 12.0);  // fourth order: 16 ideally
  EXPECT_LT(ratio, 20.0);
}

TEST(ExpMap, LeavesDomain) {
  const auto g = grw_t_torus1();
  try {
    exp_map(g, tv(Point{0.5, 0}, {-1, 0}), 32);
    FAIL() << "expected a domain escape";
  } catch (const DomainEscapeError& e) {
    EXPECT_GT(e.exit_fraction(), 0.4);
    EXPECT_LE(e.exit_fraction(), 0.5 + 1.0 / 32);
  }
}

TEST(ExpMap, ParallelFramePreservesInnerProducts) {
  const auto g = Spacetime::grw(ScalarExpr::quadratic(), SpatialFactor::euclidean(2));
  const Point p{1, 0, 0};
  const auto r = exp_map(g, tv(p, {0.2, 0.3, -0.1}), 64, Matrix::Identity(3, 3));
  const Matrix before = g.metric_at(p);
  const Matrix after = r.frame.transpose() * g.metric_at(r.point) * r.frame;
  EXPECT_LT((before - after).norm(), 1e-8);
}

TEST(Signature, RandomPointsOfBuiltins) {
  const std::vector<Spacetime> all = {
      Spacetime::minkowski(1), Spacetime::minkowski(3),
      Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0, 2.0})),
      Spacetime::grw(ScalarExpr::quadratic(), SpatialFactor::euclidean(2)),
      Spacetime::grw(ScalarExpr::exponential(), SpatialFactor::euclidean(1)),
      Spacetime::grw(ScalarExpr::constant(2.0), SpatialFactor::flat_torus({1.0}))};
  Rng rng(17);
  for (const auto& st : all) {
    const auto box = default_sample_box(st);
    for (int k = 0; k < 1000; ++k) {
      const auto s = signature_at(st, random_point(box, rng));
      ASSERT_EQ(s.negative, 1) << st.describe();
      ASSERT_EQ(s.positive, st.spatial_dimension()) << st.describe();
    }
  }
}

TEST(Orientation, TimelikeAndFuture) {
  const auto g = Spacetime::grw(ScalarExpr::exponential(), SpatialFactor::euclidean(2));
  const Point p{0.2, 1, 1};
  const auto theta = g.orientation_at(p);
  EXPECT_LT(inner(g, theta, theta), 0.0);
  EXPECT_EQ(causal_class(g, theta), (CausalClass{CausalType::Timelike, TimeDirection::Future}));
}

TEST(ReverseCauchySchwarz, CausalPairs) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::euclidean(2));
  Rng rng(3);
  const Point p{1.2, 0, 0};
  for (int k = 0; k < 500; ++k) {
    const TangentVector x{p, random_future_timelike(g, p, 0.0, rng)};
    const TangentVector y{p, random_future_timelike(g, p, 0.0, rng)};
    const double xy = inner(g, x, y);
    EXPECT_GE(xy * xy, inner(g, x, x) * inner(g, y, y) - 1e-12);
    EXPECT_LT(xy, 0.0);  // two future causal vectors pair negatively
  }
}

TEST(ReverseCauchySchwarz, EqualityForParallel) {
  const auto m = Spacetime::minkowski(2);
  const Point o{0, 0, 0};
  const auto x = tv(o, {2, 1, 0.5});
  const auto y = tv(o, {6, 3, 1.5});
  const double xy = inner(m, x, y);
  EXPECT_NEAR(xy * xy, inner(m, x, x) * inner(m, y, y), 1e-9);
}

TEST(PastTimelike, GridMinimumPositive) {
  // T = -theta / |theta|_g against future causal unit vectors.
  const auto m = Spacetime::minkowski(2);
  const Point o{0, 0, 0};
  const Vector theta = m.orientation_at(o).components;
  const Vector t = -theta / std::sqrt(-theta.dot(m.metric_at(o) * theta));
  double c = HUGE_VAL;
  for (const auto& x : future_cone_directions(m, o, 256)) c = std::min(c, t.dot(m.metric_at(o) * x));
  EXPECT_GT(c, 0.0);
  EXPECT_NEAR(c, 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(SpatialFactor, TorusNearestImage) {
  const auto s = SpatialFactor::flat_torus({1.0, 2.0});
  Vector a(2), b(2);
  a << 0.1, 0.2;
  b << 0.9, 1.9;
  const Vector d = s.displacement(a, b);
  EXPECT_NEAR(d[0], -0.2, 1e-15);
  EXPECT_NEAR(d[1], -0.3, 1e-15);
  EXPECT_NEAR(s.diameter(), std::sqrt(0.25 + 1.0), 1e-15);
  EXPECT_TRUE(std::isinf(SpatialFactor::euclidean(2).diameter()));
}

TEST(CausalChart, GrwConformalTime) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0}));
  const Point p{2.0, 0.25};
  const Vector u = g.to_causal_chart(p);
  EXPECT_NEAR(u[0], std::log(2.0), 1e-15);
  EXPECT_EQ(u[1], 0.25);
  EXPECT_LT((g.from_causal_chart(u).coords - p.coords).norm(), 1e-15);
}

}  // namespace
}  // namespace nulldist
