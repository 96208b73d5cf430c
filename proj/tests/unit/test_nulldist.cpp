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

#include "nulldist/errors.hpp"
#include "nulldist/nulldist.hpp"
#include "nulldist/random.hpp"

namespace nulldist {
namespace {

const auto tau_t = TimeFunction::coordinate_t();

double closed_form(const Point& p, const Point& q) {
  const Vector d = q.coords - p.coords;
  return std::max(std::abs(d[0]), d.tail(d.size() - 1).norm());
}

// Random piecewise causal curves from p to q in Minkowski space: random
// waypoints, every spacelike leg replaced by a null tent through a random
// future or past apex. Null length can never beat max(|dt|, |dx|).
PiecewiseCausalCurve random_minkowski_curve(const Point& p, const Point& q, int breaks, Rng& rng) {
  std::vector<Vector> way{p.coords};
  for (int i = 1; i < breaks; ++i) {
    Vector w = p.coords + rng.uniform() * (q.coords - p.coords);
    for (Eigen::Index k = 0; k < w.size(); ++k) w[k] += rng.uniform(-2, 2);
    way.push_back(w);
  }
  way.push_back(q.coords);
  PiecewiseCausalCurve c;
  auto push = [&](const Vector& a, const Vector& b) {
    const TimeDirection d = b[0] >= a[0] ? TimeDirection::Future : TimeDirection::Past;
    c.segments.push_back({{Point(a), Point(b)}, d});
  };
  for (std::size_t i = 0; i + 1 < way.size(); ++i) {
    const Vector& a = way[i];
    const Vector& b = way[i + 1];
    const double dt = b[0] - a[0];
    const Vector dx = b.tail(b.size() - 1) - a.tail(a.size() - 1);
    const double d = dx.norm();
    if (std::abs(dt) >= d) {
      push(a, b);
      continue;
    }
    // apex on the spatial chord where both legs are null
    const double sign = rng.uniform() < 0.5 ? 1.0 : -1.0;
    const double lead = (d + sign * dt) / 2.0;
    Vector apex(a.size());
    apex[0] = a[0] + sign * lead;
    apex.tail(a.size() - 1) = a.tail(a.size() - 1) + dx * (lead / d);
    push(a, apex);
    push(apex, b);
  }
  return c;
}

TEST(MinkowskiExact, SpatialPair) {
  const auto m = Spacetime::minkowski(2);
  const Point p{0, 0, 0}, q{0, 3, 4};
  const auto e = minkowski_exact(m, tau_t, p, q);
  EXPECT_EQ(e.upper, 5.0);
  EXPECT_EQ(e.method, EstimateMethod::Exact);
  EXPECT_DOUBLE_EQ(null_length(tau_t, e.witness), 5.0);
  EXPECT_TRUE(validate(m, e.witness).pass);

  Rng rng(101);
  double best = HUGE_VAL;
  for (int k = 0; k < 2000; ++k) {
    const auto c = random_minkowski_curve(p, q, 1 + static_cast<int>(rng.index(6)), rng);
    ASSERT_TRUE(validate(m, c, 1e-7).pass);
    best = std::min(best, null_length(tau_t, c));
  }
  EXPECT_GE(best, 5.0 - 1e-9);
}

TEST(MinkowskiExact, CausalPair) {
  const auto m = Spacetime::minkowski(2);
  const Point p{0, 0, 0}, q{2, 1, 0};
  const auto e = minkowski_exact(m, tau_t, p, q);
  EXPECT_EQ(e.upper, tau_t(q) - tau_t(p));
  EXPECT_EQ(e.witness.segments.size(), 1u);
}

TEST(MinkowskiExact, SamePoint) {
  const auto m = Spacetime::minkowski(1);
  EXPECT_EQ(minkowski_exact(m, tau_t, Point{1, 2}, Point{1, 2}).upper, 0.0);
}

TEST(MinkowskiExact, Unsupported) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0}));
  EXPECT_THROW(minkowski_exact(g, tau_t, Point{1, 0}, Point{1, 0.5}), UnsupportedError);
  EXPECT_THROW(minkowski_exact(Spacetime::minkowski(1), TimeFunction::phi_of_t(ScalarExpr::exponential()),
                               Point{1, 0}, Point{1, 0.5}),
               UnsupportedError);
}

TEST(Estimate, EqualTimeUnitPair) {
  const auto m = Spacetime::minkowski(1);
  const auto e = estimate(m, tau_t, Point{0, 0}, Point{0, 1}, 1, 8, 0);
  EXPECT_NEAR(e.upper, 1.0, 1e-6);
  EXPECT_EQ(e.lower, 0.0);
  EXPECT_TRUE(validate(m, e.witness).pass);
}

TEST(Estimate, MatchesClosedFormOnRandomPairs) {
  const auto m = Spacetime::minkowski(2);
  Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    const Point p{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Point q{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const int apexes = 1 + static_cast<int>(rng.index(4));
    const auto e = estimate(m, tau_t, p, q, apexes, 4, static_cast<std::uint64_t>(k));
    const double exact = closed_form(p, q);
    EXPECT_LE(std::abs(e.upper - exact), 0.01 * exact + 1e-12);
    EXPECT_GE(e.upper, exact - 1e-9);
  }
}

TEST(Estimate, StaticTorus) {
  const auto s = Spacetime::grw(ScalarExpr::constant(1.0), SpatialFactor::flat_torus({1.0}));
  const auto e = estimate(s, tau_t, Point{1, 0.1}, Point{1, 0.4}, 1, 8, 0);
  EXPECT_NEAR(e.upper, 0.3, 1e-9);
}

TEST(Estimate, ExpandingTorusAcrossIdentification) {
  // nearest-image gap 0.2; past tent in the conformal chart u = log t
  // reaches t = exp(-0.1) and costs 2 (1 - exp(-0.1))
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0}));
  const auto e = estimate(g, tau_t, Point{1, 0.1}, Point{1, 0.9}, 3, 8, 2);
  EXPECT_LE(e.upper, 2.0 * (1.0 - std::exp(-0.1)) + 1e-9);
  EXPECT_GT(e.upper, 0.18);
  EXPECT_TRUE(validate(g, e.witness).pass);
}

TEST(Estimate, UpperIsWitnessNullLength) {
  const auto g = Spacetime::grw(ScalarExpr::quadratic(), SpatialFactor::euclidean(2));
  const auto tau = TimeFunction::phi_of_t(ScalarExpr::exponential());
  const Point p{1, 0, 0}, q{1.2, 0.5, -0.3};
  const auto e = estimate(g, tau, p, q, 2, 4, 3);
  EXPECT_NEAR(null_length(tau, e.witness), e.upper, 1e-12);
  EXPECT_EQ(e.lower, std::abs(tau(q) - tau(p)));
  EXPECT_GE(e.upper, e.lower);
  EXPECT_EQ(e.witness.start(), p);
}

TEST(Estimate, MonotoneInRestartsAndApexes) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0, 1.0}));
  const Point p{0.8, 0.1, 0.2}, q{1.1, 0.6, 0.7};
  double prev = HUGE_VAL;
  for (int r : {1, 2, 4, 8}) {
    const double u = estimate(g, tau_t, p, q, 2, r, 5).upper;
    EXPECT_LE(u, prev);
    prev = u;
  }
  prev = HUGE_VAL;
  for (int n : {1, 2, 3, 4}) {
    const double u = estimate(g, tau_t, p, q, n, 4, 5).upper;
    EXPECT_LE(u, prev);
    prev = u;
  }
}

TEST(Estimate, SymmetricWithinTolerance) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0, 1.0}));
  const Point p{0.8, 0.1, 0.2}, q{1.1, 0.6, 0.7};
  const double a = estimate(g, tau_t, p, q, 2, 8, 1).upper;
  const double b = estimate(g, tau_t, q, p, 2, 8, 1).upper;
  EXPECT_NEAR(a, b, Tolerance{}.slack(std::max(a, b)));
}

TEST(Estimate, CausalPairIsExact) {
  const auto g = Spacetime::grw(ScalarExpr::quadratic(), SpatialFactor::flat_torus({1.0}));
  const Point p{0.5, 0.1}, q{1.5, 0.2};
  const auto e = estimate(g, tau_t, p, q);
  EXPECT_NEAR(e.upper, 1.0, 1e-12);
}

TEST(Estimate, WarmStartNeverWorse) {
  const auto m = Spacetime::minkowski(1);
  const Point p{0, 0}, q{0, 1};
  EstimateOptions o;
  o.restarts = 1;
  o.max_evaluations = 1;
  o.warm_start = minkowski_exact(m, tau_t, p, q).witness;
  EXPECT_LE(estimate(m, tau_t, p, q, o).upper, 1.0 + 1e-15);
}

TEST(Estimate, Reproducible) {
  const auto g = Spacetime::grw(ScalarExpr::exponential(), SpatialFactor::euclidean(1));
  const auto a = estimate(g, tau_t, Point{0, 0}, Point{0.2, 1.5}, 3, 4, 77);
  const auto b = estimate(g, tau_t, Point{0, 0}, Point{0.2, 1.5}, 3, 4, 77);
  EXPECT_EQ(a.upper, b.upper);
  EXPECT_EQ(curve_to_json(a.witness), curve_to_json(b.witness));
}

TEST(Diamond, MinkowskiSamples) {
  const auto m = Spacetime::minkowski(1);
  const auto r = diamond_bound_check(m, tau_t, Point{0, 0}, Point{2, 0}, 50, 1);
  EXPECT_EQ(r.bound, 4.0);
  EXPECT_EQ(r.rows.size(), 50u);
  EXPECT_LE(r.max_upper, 4.0 + 1e-6);
  EXPECT_TRUE(r.pass);
  for (const auto& row : r.rows) {
    EXPECT_GE(row.x.time() - std::abs(row.x.coords[1]), -1e-12);
    EXPECT_GE(2.0 - row.x.time() - std::abs(row.x.coords[1]), -1e-12);
  }
}

TEST(Diamond, DegenerateCorners) {
  const auto m = Spacetime::minkowski(1);
  EXPECT_EQ(estimate(m, tau_t, Point{1, 0.2}, Point{1, 0.2}).upper, 0.0);
  EXPECT_DOUBLE_EQ(estimate(m, tau_t, Point{0, 0}, Point{2, 0}).upper, 2.0);
}

TEST(Diamond, RequiresCausalOrder) {
  const auto m = Spacetime::minkowski(1);
  EXPECT_THROW(diamond_bound_check(m, tau_t, Point{0, 0}, Point{0, 1}, 5, 1), PreconditionError);
}

TEST(LevelSet, MinkowskiRatioOne) {
  const auto m = Spacetime::minkowski(2);
  const auto pairs = sample_level_set_pairs(m, tau_t, 0.0, 20, 4);
  const auto tab = verify_level_set_inequality(m, tau_t, 0.0, 1.0, pairs);
  EXPECT_TRUE(tab.pass);
  for (const auto& r : tab.rows) {
    EXPECT_GE(r.ratio, 1 - 1e-3);
    EXPECT_LE(r.ratio, 1 + 1e-3);
    EXPECT_NEAR(r.level_distance, (r.q.coords - r.p.coords).norm(), 1e-12);
  }
}

TEST(LevelSet, GrwLinearTorus) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0, 1.0}));
  const auto pairs = sample_level_set_pairs(g, tau_t, 0.5, 10, 5);
  const auto tab = verify_level_set_inequality(g, tau_t, 0.5, 1.0, pairs);
  EXPECT_TRUE(tab.pass);
  for (const auto& r : tab.rows) {
    double d2 = 0;
    for (int k = 1; k < 3; ++k) {
      double d = std::abs(r.q.coords[k] - r.p.coords[k]);
      d = std::min(d, 1.0 - d);
      d2 += d * d;
    }
    EXPECT_NEAR(r.level_distance, 0.5 * std::sqrt(d2), 1e-12);
    EXPECT_LE(r.upper, 0.5 * std::sqrt(d2) + Tolerance{}.slack(r.bound));
  }
}

TEST(LevelSet, GrwTSquared) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0, 1.0}));
  const auto tau = TimeFunction::phi_of_t(ScalarExpr::quadratic());
  const auto pairs = sample_level_set_pairs(g, tau, 1.0, 10, 6);
  const auto tab = verify_level_set_inequality(g, tau, 1.0, 2.0, pairs);
  EXPECT_TRUE(tab.pass);
  for (const auto& r : tab.rows) EXPECT_LE(r.upper, 2.0 * r.level_distance + 1e-3);
}

TEST(LevelSet, Preconditions) {
  const auto g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0, 1.0}));
  const auto tau = TimeFunction::phi_of_t(ScalarExpr::quadratic());
  const auto pairs = sample_level_set_pairs(g, tau, 1.0, 2, 6);
  EXPECT_THROW(verify_level_set_inequality(g, tau, 1.0, 1.0, pairs), PreconditionError);
  const std::vector<std::pair<Point, Point>> off{{Point{1, 0, 0}, Point{1.1, 0.5, 0}}};
  EXPECT_THROW(verify_level_set_inequality(g, tau, 1.0, 2.0, off), PreconditionError);
}

TEST(LevelSet, PartitionChainBoundsDirectEstimate) {
  const auto g = Spacetime::grw(ScalarExpr::quadratic(), SpatialFactor::flat_torus({1.0}));
  const auto slice = level_slice(g, tau_t, 1.0);
  EXPECT_EQ(slice.coordinate_time, 1.0);
  EXPECT_EQ(slice.spatial_scale, 1.0);
  const Point p{1, 0.1}, q{1, 0.45};
  const auto b = partitioned_level_set_bound(g, tau_t, slice, p, q, 1.0, 1e-3);
  EXPECT_LE(b.chained_upper, (1.0 + 1e-3) * level_set_distance(g, slice, p, q) + 1e-12);
  EXPECT_EQ(b.breakpoints.front(), 0.0);
  EXPECT_EQ(b.breakpoints.back(), 1.0);
  EXPECT_TRUE(std::is_sorted(b.breakpoints.begin(), b.breakpoints.end()));
}

TEST(EstimateCsv, HeaderAndRow) {
  const auto m = Spacetime::minkowski(1);
  std::ostringstream os;
  write_estimate_csv_header(os);
  write_estimate_csv_row(os, Point{0, 0}, Point{2, 1}, minkowski_exact(m, tau_t, Point{0, 0}, Point{2, 1}));
  const std::string s = os.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "p,q,lower,upper,method,iterations,witness_json");
  EXPECT_NE(s.find("\"[0,0]\",\"[2,1]\",2,2,exact,0,"), std::string::npos) << s;
}

}  // namespace
}  // namespace nulldist
