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
#include <vector>

#include "nulldist/errors.hpp"
#include "nulldist/random.hpp"
#include "nulldist/sampling.hpp"
#include "nulldist/timefns.hpp"

namespace nulldist {
namespace {

TimeFunction x1_function() {
  return TimeFunction::custom(
      "x1", [](const Point& p) { return p.coords[1]; },
      [](const Point& p) { return Vector::Unit(p.size(), 1).eval(); });
}

std::vector<Point> region(const Spacetime& st, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> pts;
  const auto box = default_sample_box(st);
  for (int i = 0; i < n; ++i) pts.push_back(random_point(box, rng));
  return pts;
}

TEST(Monotonicity, MinkowskiT) {
  const auto r = monotonicity_probe(Spacetime::minkowski(1), TimeFunction::coordinate_t(), 100, 1);
  EXPECT_EQ(r.trials, 100);
  EXPECT_FALSE(r.violation);
  EXPECT_GT(r.min_rate, 0.0);
}

TEST(Monotonicity, GrwTSquared) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0, 1.0}));
  const auto r = monotonicity_probe(g, TimeFunction::phi_of_t(ScalarExpr::quadratic()), 100, 2);
  EXPECT_FALSE(r.violation);
  EXPECT_GT(r.min_rate, 0.0);
}

TEST(Monotonicity, SpatialCoordinateFlagged) {
  // x1 decreases along the future causal curve s -> (s, -s / 2), which the
  // probe must find among its random curves.
  const auto m = Spacetime::minkowski(1);
  const auto x1 = x1_function();
  EXPECT_LT(x1(Point{1, -0.5}) - x1(Point{0, 0}), 0.0);
  const auto r = monotonicity_probe(m, x1, 100, 3);
  EXPECT_TRUE(r.violation);
  EXPECT_LE(r.min_rate, 0.0);
  ASSERT_TRUE(r.violation_at.has_value());
}

TEST(Monotonicity, Reproducible) {
  const auto m = Spacetime::minkowski(2);
  const auto a = monotonicity_probe(m, TimeFunction::coordinate_t(), 20, 9);
  const auto b = monotonicity_probe(m, TimeFunction::coordinate_t(), 20, 9);
  EXPECT_EQ(a.min_rate, b.min_rate);
  EXPECT_EQ(a.increments, b.increments);
}

// Independent oracle: minimize X0 over X0^2 + X1^2 = 1, X0 >= |X1| by a
// dense scan of the angle.
double cone_minimum_1d() {
  double best = HUGE_VAL;
  for (int k = 0; k <= 200000; ++k) {
    const double a = -M_PI / 4 + (M_PI / 2) * k / 200000.0;
    best = std::min(best, std::cos(a));
  }
  return best;
}

TEST(AntiLipschitz, MinkowskiT) {
  const auto m = Spacetime::minkowski(1);
  const auto pts = region(m, 20, 4);
  const auto est = anti_lipschitz_constant(m, TimeFunction::coordinate_t(), pts, 64);
  EXPECT_NEAR(est.constant, cone_minimum_1d(), 1e-9);
  EXPECT_NEAR(est.constant, 1.0 / std::sqrt(2.0), 1e-9);
  EXPECT_TRUE(est.temporal_on_sample());
}

TEST(AntiLipschitz, StaticGrw) {
  const auto g = Spacetime::grw(ScalarExpr::constant(1.0), SpatialFactor::flat_torus({1.0}));
  const auto pts = region(g, 10, 5);
  const auto est = anti_lipschitz_constant(g, TimeFunction::coordinate_t(), pts, 32);
  EXPECT_NEAR(est.constant, cone_minimum_1d(), 1e-9);
}

TEST(AntiLipschitz, SpatialCoordinateNotTemporal) {
  const auto m = Spacetime::minkowski(1);
  const auto pts = region(m, 5, 6);
  const auto est = anti_lipschitz_constant(m, x1_function(), pts, 32);
  EXPECT_FALSE(est.temporal_on_sample());
  EXPECT_LE(est.constant, 0.0);
}

TEST(AntiLipschitz, RejectsSmallGrid) {
  const auto m = Spacetime::minkowski(1);
  const auto pts = region(m, 2, 7);
  EXPECT_ANY_THROW(anti_lipschitz_constant(m, TimeFunction::coordinate_t(), pts, 4));
}

TEST(AntiLipschitz, BuiltinsPositiveOnCompactSamples) {
  const std::vector<Spacetime> sts = {
      Spacetime::minkowski(2), Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0, 1.0})),
      Spacetime::grw(ScalarExpr::exponential(), SpatialFactor::euclidean(1))};
  const std::vector<TimeFunction> fs = {TimeFunction::coordinate_t(),
                                        TimeFunction::phi_of_t(ScalarExpr::exponential())};
  for (const auto& st : sts) {
    const auto pts = region(st, 10, 8);
    for (const auto& f : fs) EXPECT_GT(anti_lipschitz_constant(st, f, pts, 32).constant, 0.0) << st.describe();
  }
}

TEST(AntiLipschitz, RefinementNeverRaisesConstant) {
  const auto g = Spacetime::grw(ScalarExpr::quadratic(), SpatialFactor::euclidean(2));
  const auto pts = region(g, 10, 10);
  const auto f = TimeFunction::phi_of_t(ScalarExpr::quadratic());
  double prev = HUGE_VAL;
  for (int grid : {16, 32, 64, 128, 256}) {
    const double c = anti_lipschitz_constant(g, f, pts, grid).constant;
    EXPECT_LE(c, prev) << grid;
    prev = c;
  }
}

TEST(TimeFunction, GradientClassification) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0, 1.0}));
  const auto f = TimeFunction::phi_of_t(ScalarExpr::quadratic());
  for (const auto& p : region(g, 1000, 11)) {
    const auto c = causal_class(g, gradient(g, f.field(), p));
    const bool ok = c.type == CausalType::Zero || (c.causal() && c.direction == TimeDirection::Past);
    ASSERT_TRUE(ok) << to_string(c);
  }
}

TEST(TimeFunction, LevelInversion) {
  const auto f = TimeFunction::phi_of_t(ScalarExpr::quadratic());
  EXPECT_DOUBLE_EQ(f.coordinate_time_of_level(4.0), 2.0);
  EXPECT_DOUBLE_EQ(TimeFunction::coordinate_t().coordinate_time_of_level(0.3), 0.3);
  EXPECT_THROW(x1_function().coordinate_time_of_level(1.0), UnsupportedError);
}

TEST(TimeFunction, CosmologicalOnlyForBoundedBelowGrw) {
  EXPECT_THROW(TimeFunction::cosmological(Spacetime::minkowski(1)), UnsupportedError);
  EXPECT_THROW(TimeFunction::cosmological(Spacetime::grw(ScalarExpr::exponential(), SpatialFactor::euclidean(1))),
               UnsupportedError);
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0}));
  EXPECT_EQ(TimeFunction::cosmological(g)(Point{0.7, 0.4}), 0.7);
}

}  // namespace
}  // namespace nulldist
