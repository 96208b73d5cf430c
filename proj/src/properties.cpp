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

#include "nulldist/properties.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nulldist/csv.hpp"
#include "nulldist/curves.hpp"
#include "nulldist/geometry.hpp"
#include "nulldist/metricspace.hpp"
#include "nulldist/nulldist.hpp"
#include "nulldist/random.hpp"
#include "nulldist/sampling.hpp"
#include "nulldist/timefns.hpp"

namespace nulldist {
namespace {

struct Scenario {
  Spacetime st;
  TimeFunction tau;
};

const std::vector<Scenario>& scenarios() {
  static const std::vector<Scenario> s = [] {
    std::vector<Scenario> v;
    v.push_back({Spacetime::minkowski(1), TimeFunction::coordinate_t()});
    v.push_back({Spacetime::minkowski(2), TimeFunction::coordinate_t()});
    v.push_back({Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0, 1.0})),
                 TimeFunction::coordinate_t()});
    v.push_back({Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0})),
                 TimeFunction::phi_of_t(ScalarExpr::quadratic())});
    v.push_back({Spacetime::grw(ScalarExpr::quadratic(), SpatialFactor::euclidean(2)),
                 TimeFunction::coordinate_t()});
    v.push_back({Spacetime::grw(ScalarExpr::constant(1.0), SpatialFactor::flat_torus({1.0})),
                 TimeFunction::coordinate_t()});
    return v;
  }();
  return s;
}

const Scenario& pick(int i) { return scenarios()[static_cast<std::size_t>(i) % scenarios().size()]; }

Point random_in_box(const Spacetime& st, Rng& rng) { return random_point(default_sample_box(st), rng); }

// q in the causal future of p, built in the causal chart.
Point random_future_point(const Spacetime& st, const Point& p, Rng& rng, double max_du = 0.6) {
  const int n = st.spatial_dimension();
  const Vector a = st.to_causal_chart(p);
  for (;;) {
    Vector b(n + 1);
    b[0] = a[0] + rng.uniform(0.0, max_du);
    if (!(b[0] < st.causal_time_upper())) {
      max_du *= 0.5;
      continue;
    }
    Vector w(n);
    for (int i = 0; i < n; ++i) w[i] = rng.normal();
    const double rho = rng.uniform() < 0.25 ? 1.0 : rng.uniform();
    b.tail(n) = a.tail(n) + (rho * (b[0] - a[0]) / std::max(w.norm(), 1e-300)) * w;
    return st.from_causal_chart(b);
  }
}

EstimateOptions random_options(Rng& rng, std::uint64_t seed) {
  EstimateOptions o;
  o.apexes = 1 + static_cast<int>(rng.index(2));
  o.restarts = 2;
  o.max_evaluations = 1500;
  o.seed = seed;
  return o;
}

class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); r_.worst = -std::numeric_limits<double>::infinity(); }
  // violation <= 0 counts as a pass.
  void record(double violation, const std::string& context) {
    ++r_.cases;
    if (std::isnan(violation)) violation = std::numeric_limits<double>::infinity();
    r_.worst = std::max(r_.worst, violation);
    if (violation > 0.0) {
      if (r_.failures == 0) r_.first_failure = context;
      ++r_.failures;
    }
  }
  PropertyResult done() {
    if (r_.cases == 0) r_.worst = 0.0;
    return r_;
  }

 private:
  PropertyResult r_;
};

std::string describe_pair(const Scenario& sc, const Point& p, const Point& q) {
  return sc.st.describe() + " tau=" + sc.tau.name() + " p=" + format_point(p) + " q=" + format_point(q);
}

}  // namespace

PropertyResult check_semi_metric(int cases, std::uint64_t seed) {
  Tally t("semi-metric");
  const Tolerance tol;
  for (int i = 0; i < cases; ++i) {
    const Scenario& sc = pick(i);
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    const Point p = random_in_box(sc.st, rng);
    const Point q = random_in_box(sc.st, rng);
    const Point r = random_in_box(sc.st, rng);
    const EstimateOptions o = random_options(rng, seed + static_cast<std::uint64_t>(i));
    const auto pq = estimate(sc.st, sc.tau, p, q, o);
    const auto qp = estimate(sc.st, sc.tau, q, p, o);
    const auto qr = estimate(sc.st, sc.tau, q, r, o);
    const auto pr = estimate(sc.st, sc.tau, p, r, o);
    const double asym = std::abs(pq.upper - qp.upper) - tol.slack(std::max(pq.upper, qp.upper));
    const double tri = pr.lower - (pq.upper + qr.upper) - tol.absolute;
    t.record(std::max(asym, tri), describe_pair(sc, p, q) + " r=" + format_point(r));
  }
  return t.done();
}

PropertyResult check_lower_bound_dominance(int cases, std::uint64_t seed) {
  Tally t("lower-bound-dominance");
  for (int i = 0; i < cases; ++i) {
    const Scenario& sc = pick(i);
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    const Point p = random_in_box(sc.st, rng);
    const Point q = rng.uniform() < 0.3 ? random_future_point(sc.st, p, rng) : random_in_box(sc.st, rng);
    const auto e = estimate(sc.st, sc.tau, p, q, random_options(rng, seed ^ static_cast<std::uint64_t>(i)));
    // Also holds the witness to its contract: valid and of null length `upper`.
    const bool valid = validate(sc.st, e.witness).pass;
    const double length_gap = std::abs(null_length(sc.tau, e.witness) - e.upper) - 1e-12;
    t.record(valid ? std::max(e.lower - e.upper, length_gap) : 1.0, describe_pair(sc, p, q));
  }
  return t.done();
}

PropertyResult check_causality_exactness(int cases, std::uint64_t seed) {
  Tally t("causality-exactness");
  for (int i = 0; i < cases; ++i) {
    const Scenario& sc = pick(i);
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    const Point p = random_in_box(sc.st, rng);
    const Point q = random_future_point(sc.st, p, rng);
    const auto e = estimate(sc.st, sc.tau, p, q, random_options(rng, seed ^ static_cast<std::uint64_t>(i)));
    const double gap = e.upper - (sc.tau(q) - sc.tau(p));
    t.record(std::max(-gap, gap - 1e-6), describe_pair(sc, p, q));
  }
  return t.done();
}

PropertyResult check_diamond_bound(int cases, std::uint64_t seed) {
  Tally t("diamond-bound");
  for (int i = 0; i < cases; ++i) {
    const Scenario& sc = pick(i);
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    const Point p = random_in_box(sc.st, rng);
    const Point q = random_future_point(sc.st, p, rng);
    EstimateOptions o;
    o.restarts = 1;
    const auto rep = diamond_bound_check(sc.st, sc.tau, p, q, 1, Rng::mix(seed + static_cast<std::uint64_t>(i)), 1e-6, o);
    t.record(rep.max_upper - rep.bound - 1e-6, describe_pair(sc, p, q));
  }
  return t.done();
}

PropertyResult check_reverse_cauchy_schwarz(int cases, std::uint64_t seed) {
  Tally t("reverse-cauchy-schwarz");
  for (int i = 0; i < cases; ++i) {
    const Scenario& sc = pick(i);
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    const Point p = random_in_box(sc.st, rng);
    const TangentVector x{p, rng.uniform(0.1, 3.0) * random_future_timelike(sc.st, p, 0.01, rng)};
    const TangentVector y{p, rng.uniform(0.1, 3.0) * random_future_timelike(sc.st, p, 0.01, rng)};
    const double lhs = -inner(sc.st, x, y);
    const double rhs = lorentz_norm(sc.st, x) * lorentz_norm(sc.st, y);
    t.record(rhs - lhs - 1e-12 * std::max(1.0, rhs), sc.st.describe() + " p=" + format_point(p));
  }
  return t.done();
}

PropertyResult check_gradient_classification(int cases, std::uint64_t seed) {
  Tally t("gradient-classification");
  struct Entry {
    Spacetime st;
    TimeFunction tau;
  };
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> v;
    const Spacetime m2 = Spacetime::minkowski(2);
    v.push_back({m2, TimeFunction::coordinate_t()});
    v.push_back({m2, TimeFunction::phi_of_t(ScalarExpr::exponential())});
    v.push_back({m2, TimeFunction::custom(
                         "t + 0.3 x",
                         [](const Point& x) { return x.coords[0] + 0.3 * x.coords[1]; },
                         [](const Point&) {
                           Vector d = Vector::Zero(3);
                           d[0] = 1.0;
                           d[1] = 0.3;
                           return d;
                         })});
    const Spacetime g = Spacetime::grw(ScalarExpr::linear(), SpatialFactor::flat_torus({1.0, 1.0}));
    v.push_back({g, TimeFunction::coordinate_t()});
    v.push_back({g, TimeFunction::phi_of_t(ScalarExpr::quadratic())});
    v.push_back({g, TimeFunction::cosmological(g)});
    const Spacetime h = Spacetime::grw(ScalarExpr::exponential(), SpatialFactor::euclidean(1));
    v.push_back({h, TimeFunction::phi_of_t(ScalarExpr::exponential())});
    return v;
  }();
  for (int i = 0; i < cases; ++i) {
    const Entry& e = entries[static_cast<std::size_t>(i) % entries.size()];
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    const Point p = random_in_box(e.st, rng);
    const TangentVector grad = gradient(e.st, e.tau.field(), p);
    const CausalClass c = causal_class(e.st, grad);
    const double gg = inner(e.st, grad, grad) / std::max(grad.components.squaredNorm(), 1e-300);
    const bool ok = c.type == CausalType::Timelike && c.direction == TimeDirection::Past;
    t.record(ok ? std::min(gg, 0.0) : std::max(gg, 1.0), e.st.describe() + " tau=" + e.tau.name() +
                                                              " p=" + format_point(p) + " class=" + to_string(c));
  }
  return t.done();
}

PropertyResult check_null_length_integral(int cases, std::uint64_t seed) {
  Tally t("null-length-integral");
  for (int i = 0; i < cases; ++i) {
    const Scenario& sc = pick(i);
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    const int n = sc.st.spatial_dimension();
    Point cur = random_in_box(sc.st, rng);
    PiecewiseCausalCurve curve;
    const int segs = 1 + static_cast<int>(rng.index(4));
    for (int s = 0; s < segs; ++s) {
      const Vector a = sc.st.to_causal_chart(cur);
      const bool future = rng.uniform() < 0.5;
      Vector b(n + 1);
      double du = rng.uniform(0.01, 0.4);
      if (future) {
        while (!(a[0] + du < sc.st.causal_time_upper())) du *= 0.5;
        b[0] = a[0] + du;
      } else {
        while (!(a[0] - du > sc.st.causal_time_lower())) du *= 0.5;
        b[0] = a[0] - du;
      }
      Vector w(n);
      for (int k = 0; k < n; ++k) w[k] = rng.normal();
      const double rho = rng.uniform() < 0.5 ? 1.0 : rng.uniform();
      b.tail(n) = a.tail(n) + (rho * du / std::max(w.norm(), 1e-300)) * w;
      curve.segments.push_back(causal_chart_segment(sc.st, a, b, future ? TimeDirection::Future : TimeDirection::Past,
                                                    16, cur));
      cur = curve.segments.back().samples.back();
    }
    const double a = null_length(sc.tau, curve);
    const double b = null_length_integral(sc.tau, curve, 64);
    t.record(std::abs(a - b) - 1e-6, sc.st.describe() + " tau=" + sc.tau.name() + " start=" + format_point(curve.start()));
  }
  return t.done();
}

namespace {

FinitePointCloud random_cloud(Rng& rng) {
  const int m = 4 + static_cast<int>(rng.index(17));
  const int dim = 1 + static_cast<int>(rng.index(3));
  std::vector<Vector> pts;
  for (int i = 0; i < m; ++i) {
    Vector x(dim);
    for (int k = 0; k < dim; ++k) x[k] = rng.normal();
    pts.push_back(x);
  }
  Matrix d(m, m);
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) {
    labels.push_back("x" + std::to_string(i));
    for (int j = 0; j < m; ++j) d(i, j) = (pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]).norm();
  }
  return FinitePointCloud(std::move(labels), std::move(d));
}

Subset random_subset(Rng& rng, std::size_t m) {
  Subset s;
  for (std::size_t i = 0; i < m; ++i) {
    if (rng.uniform() < 0.4) s.push_back(i);
  }
  if (s.empty()) s.push_back(static_cast<std::size_t>(rng.index(m)));
  return s;
}

}  // namespace

PropertyResult check_diam_lipschitz(int cases, std::uint64_t seed) {
  Tally t("diam-lipschitz");
  for (int i = 0; i < cases; ++i) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    const FinitePointCloud cloud = random_cloud(rng);
    const std::pair<Subset, Subset> pair{random_subset(rng, cloud.size()), random_subset(rng, cloud.size())};
    const auto rep = diam_lipschitz_check(cloud, std::span(&pair, 1));
    t.record(rep.max_excess - 1e-12, "case " + std::to_string(i));
  }
  return t.done();
}

PropertyResult check_hausdorff_semi_metric(int cases, std::uint64_t seed) {
  Tally t("hausdorff-semi-metric");
  for (int i = 0; i < cases; ++i) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    const FinitePointCloud cloud = random_cloud(rng);
    const Subset a = random_subset(rng, cloud.size());
    const Subset b = random_subset(rng, cloud.size());
    const Subset c = random_subset(rng, cloud.size());
    const double ab = hausdorff(cloud, a, b);
    const double ba = hausdorff(cloud, b, a);
    const double tri = hausdorff(cloud, a, c) - hausdorff(cloud, a, b) - hausdorff(cloud, b, c) - 1e-12;
    t.record(ab != ba ? std::abs(ab - ba) : tri, "case " + std::to_string(i));
  }
  return t.done();
}

const std::vector<NamedProperty>& property_registry() {
  static const std::vector<NamedProperty> reg = {
      {"semi-metric", "estimate is symmetric within tolerance; lower(p,r) <= upper(p,q) + upper(q,r)", check_semi_metric},
      {"lower-bound-dominance", "upper >= lower = |tau(q) - tau(p)| exactly as stored; witness valid", check_lower_bound_dominance},
      {"causality-exactness", "for p <= q, upper - (tau(q) - tau(p)) lies in [0, 1e-6]", check_causality_exactness},
      {"diamond-bound", "pairs inside J+(p) n J-(q) stay within 2 (tau(q) - tau(p))", check_diamond_bound},
      {"reverse-cauchy-schwarz", "-g(X, Y) >= |X| |Y| for future timelike X, Y", check_reverse_cauchy_schwarz},
      {"gradient-classification", "the gradient of a time function is past-directed timelike",
       check_gradient_classification},
      {"null-length-integral", "sum of |delta tau| equals the integral of |(tau o beta)'| to 1e-6",
       check_null_length_integral},
      {"diam-lipschitz", "|diam A - diam B| <= 2 d_H(A, B) + 1e-12", check_diam_lipschitz},
      {"hausdorff-semi-metric", "Hausdorff distance is symmetric and satisfies the triangle inequality",
       check_hausdorff_semi_metric},
  };
  return reg;
}

std::vector<PropertyResult> run_property_suite(int cases, std::uint64_t seed) {
  std::vector<PropertyResult> out;
  std::uint64_t k = 0;
  for (const auto& p : property_registry()) out.push_back(p.run(cases, Rng::mix(seed + k++)));
  return out;
}

}  // namespace nulldist
