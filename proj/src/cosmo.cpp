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

#include "nulldist/cosmo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nulldist/csv.hpp"
#include "nulldist/curves.hpp"
#include "nulldist/errors.hpp"
#include "nulldist/metricspace.hpp"
#include "nulldist/random.hpp"
#include "nulldist/sampling.hpp"
#include "nulldist/timefns.hpp"

namespace nulldist {

double tau_g(const Spacetime& st, const Point& p) {
  const TimeFunction tau = TimeFunction::cosmological(st);
  if (!st.in_domain(p)) throw std::invalid_argument("tau_g: point outside the spacetime");
  return tau(p);
}

double tau_g_bruteforce(const Spacetime& st, const Point& p, int curve_samples, std::uint64_t seed,
                        const BruteforceOptions& options) {
  (void)TimeFunction::cosmological(st);
  if (curve_samples <= 0) return 0.0;
  if (options.chords < 1 || options.subdivisions < 1) throw std::invalid_argument("tau_g_bruteforce: bad options");
  const int n = st.spatial_dimension();
  const Vector top = st.to_causal_chart(p);
  Point floor_point = p;
  floor_point.coords[0] = options.floor_fraction * p.time();
  const double u_low = st.to_causal_chart(floor_point)[0];
  const int k_max = options.chords;
  const int sub = options.subdivisions;

  double best = 0.0;
  std::vector<Vector> verts(static_cast<std::size_t>(k_max + 1));
  for (int c = 0; c < curve_samples; ++c) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(c));
    const double amplitude = rng.uniform();
    verts[static_cast<std::size_t>(k_max)] = top;
    for (int k = k_max - 1; k >= 0; --k) {
      const double u = u_low + (top[0] - u_low) * k / k_max;
      const Vector& above = verts[static_cast<std::size_t>(k + 1)];
      const double du = above[0] - u;
      Vector w(n);
      do {
        for (int i = 0; i < n; ++i) w[i] = rng.uniform(-1.0, 1.0);
      } while (w.squaredNorm() > 1.0);
      Vector v(n + 1);
      v[0] = u;
      v.tail(n) = above.tail(n) - amplitude * du * w;
      verts[static_cast<std::size_t>(k)] = v;
    }
    CausalSegment seg;
    seg.direction = TimeDirection::Future;
    for (int k = 0; k < k_max; ++k) {
      const Vector& a = verts[static_cast<std::size_t>(k)];
      const Vector& b = verts[static_cast<std::size_t>(k + 1)];
      for (int j = 0; j < sub; ++j) seg.samples.push_back(st.from_causal_chart(a + (static_cast<double>(j) / sub) * (b - a)));
    }
    seg.samples.push_back(p);
    try {
      best = std::max(best, lorentzian_length(st, seg));
    } catch (const CurveError&) {
      // A chord tipped outside the cone after mapping back; discard the curve.
    }
  }
  return best;
}

bool GeneratorChecks::pass() const {
  return unit_speed_error <= 1e-12 && geodesic_residual < 1e-8 && tau_identity && gradient_error <= 1e-9 &&
         gradient_error_fd <= 1e-9;
}

Point Generator::at(double s) const {
  Point x = foot;
  x.coords[0] = s;
  return x;
}

Vector Generator::velocity(double) const { return Vector::Unit(foot.size(), 0); }

Generator generator_at(const Spacetime& st, const Point& q, int check_points) {
  const TimeFunction tau = TimeFunction::cosmological(st);
  if (!st.in_domain(q)) throw std::invalid_argument("generator_at: foot outside the spacetime");
  Generator gen;
  gen.foot = q;
    const int dim = st.dimension();
  GeneratorChecks& ck = gen.checks;
  ck.tau_identity = true;
  const int m = std::max(1, check_points);
  for (int k = 1; k <= m; ++k) {
    const double s = q.time() * k / m;
    const Point x = gen.at(s);
    const Vector v = gen.velocity(s);
    const Matrix g = st.metric_at(x);
    ck.unit_speed_error = std::max(ck.unit_speed_error, std::abs(v.dot(g * v) + 1.0));
    const double h = 1e-4 * s;
    const Vector accel = (gen.velocity(s + h) - gen.velocity(s - h)) / (2.0 * h);
    const std::vector<Matrix> gamma = st.christoffel_at(x);
    Vector residual = accel;
    for (int a = 0; a < dim; ++a) residual[a] += v.dot(gamma[static_cast<std::size_t>(a)] * v);
    ck.geodesic_residual = std::max(ck.geodesic_residual, residual.norm());
    if (tau(x) != s) ck.tau_identity = false;
  }
  const TangentVector grad = gradient(st, tau.field(), q);
  const TangentVector grad_fd = gradient(st, tau.field(), q, 1e-6, GradientMode::FiniteDifference);
  const Vector v = gen.velocity(q.time());
  ck.gradient_error = (grad.components + v).cwiseAbs().maxCoeff();
  ck.gradient_error_fd = (grad_fd.components + v).cwiseAbs().maxCoeff();
  return gen;
}

BigBangReport bigbang_experiment(const Spacetime& st, std::span<const double> t_list,
                                 const BigBangOptions& options) {
  if (st.family() != Spacetime::Family::GRW || !st.spatial().is_torus()) {
    throw UnsupportedError("bigbang_experiment needs a GRW spacetime over a flat torus");
  }
  if (t_list.empty()) throw std::invalid_argument("bigbang_experiment: empty time list");
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    if (!st.scale_factor().in_interval(t_list[i]) || (i > 0 && !(t_list[i] < t_list[i - 1]))) {
      throw std::invalid_argument("bigbang_experiment: times must be strictly decreasing inside the interval");
    }
  }
  if (options.points_per_level < 1) throw std::invalid_argument("bigbang_experiment: need at least one point per level");

  const TimeFunction tau = TimeFunction::coordinate_t();
  const ScalarExpr& f = st.scale_factor();
  const int n = st.spatial_dimension();
  const auto feet = torus_lattice(st.spatial().sides(), options.points_per_level, options.seed);
  const std::size_t per = feet.size();
  const std::size_t levels = t_list.size();

  BigBangReport rep;
  rep.spacetime = st.describe();
  std::vector<Point> all;
  std::vector<std::string> labels;
  for (std::size_t l = 0; l < levels; ++l) {
    BigBangLevel lev;
    lev.t = t_list[l];
    lev.diam_ht = f.value(lev.t) * st.spatial().diameter();
    for (std::size_t k = 0; k < per; ++k) {
      Vector c(n + 1);
      c[0] = lev.t;
      c.tail(n) = feet[k];
      lev.points.emplace_back(c);
      all.push_back(lev.points.back());
      labels.push_back("L" + std::to_string(l) + "P" + std::to_string(k));
    }
    rep.levels.push_back(std::move(lev));
  }

  const auto total = static_cast<Eigen::Index>(all.size());
  Matrix upper = Matrix::Zero(total, total);
  for (Eigen::Index i = 0; i < total; ++i) {
    for (Eigen::Index j = i + 1; j < total; ++j) {
      EstimateOptions o = options.estimate;
      o.seed = Rng::mix(options.seed ^ static_cast<std::uint64_t>(i * total + j));
      const double e = estimate(st, tau, all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)], o).upper;
      upper(i, j) = e;
      upper(j, i) = e;
    }
  }
  const FinitePointCloud cloud = FinitePointCloud::from_upper_estimates(labels, upper);
  rep.upper_estimate_caveat = cloud.upper_bound_caveat();

  auto level_subset = [&](std::size_t l) {
    Subset s(per);
    for (std::size_t k = 0; k < per; ++k) s[k] = l * per + k;
    return s;
  };

  bool all_pass = true;
  for (std::size_t l = 0; l < levels; ++l) {
    auto& lev = rep.levels[l];
    lev.max_pair_nulldist = diameter(cloud, level_subset(l));
    lev.pass = lev.max_pair_nulldist <= lev.diam_ht + options.tol;
    all_pass = all_pass && lev.pass;
  }
  for (std::size_t l = 0; l + 1 < levels; ++l) {
    HausdorffRow row;
    row.t = t_list[l];
    row.t_prime = t_list[l + 1];
    row.hausdorff = hausdorff(cloud, level_subset(l), level_subset(l + 1));
    row.diam_term = std::max(rep.levels[l].diam_ht, rep.levels[l + 1].diam_ht);
    const double gap = std::abs(row.t - row.t_prime);
    row.bound = gap + row.diam_term + options.tol;
    row.excess = row.hausdorff - gap;
    row.pass = row.hausdorff <= row.bound;
    all_pass = all_pass && row.pass;
    rep.hausdorff_rows.push_back(row);
  }

  CauchyCertificate& cc = rep.cauchy;
  cc.foot = rep.levels.front().points.front();
  cc.tol = options.cauchy_tol;
  cc.max_violation = 0.0;
  for (std::size_t l = 0; l < levels; ++l) {
    cc.times.push_back(t_list[l]);
    cc.points.push_back(rep.levels[l].points.front());
  }
  for (std::size_t i = 0; i < levels; ++i) {
    for (std::size_t j = i + 1; j < levels; ++j) {
      const double d = cloud(i * per, j * per);
      cc.max_violation = std::max(cc.max_violation, d - std::abs(t_list[i] - t_list[j]));
    }
  }
  cc.pass = cc.max_violation <= cc.tol;

  auto strictly_decreasing = [&](auto get, std::size_t count) {
    for (std::size_t i = 1; i < count; ++i) {
      if (!(get(i) < get(i - 1))) return false;
    }
    return true;
  };
  rep.monotone_diam = strictly_decreasing([&](std::size_t i) { return rep.levels[i].diam_ht; }, levels);
  rep.monotone_max_pair =
      strictly_decreasing([&](std::size_t i) { return rep.levels[i].max_pair_nulldist; }, levels);
  rep.monotone_hausdorff_term = strictly_decreasing(
      [&](std::size_t i) { return rep.hausdorff_rows[i].diam_term; }, rep.hausdorff_rows.size());

  rep.hypothesis_met = rep.monotone_diam && f.limit_at_lower() == 0.0;
  if (!rep.hypothesis_met) {
    rep.hypothesis_message = "level-set diameters do not shrink to zero for f(t) = " + f.to_string();
  }
  rep.pass = rep.hypothesis_met && all_pass && cc.pass && rep.monotone_max_pair && rep.monotone_hausdorff_term;
  return rep;
}

void require_hypothesis(const BigBangReport& report) {
  if (!report.hypothesis_met) throw HypothesisNotMet(report.hypothesis_message);
}

namespace {

nlohmann::json point_json(const Point& p) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < p.size(); ++i) a.push_back(p.coords[i]);
  return a;
}

}  // namespace

std::string bigbang_to_json(const BigBangReport& r) {
  nlohmann::json j;
  j["spacetime"] = r.spacetime;
  j["levels"] = nlohmann::json::array();
  for (const auto& l : r.levels) {
    j["levels"].push_back({{"t", l.t}, {"diam_ht", l.diam_ht}, {"max_pair_nulldist", l.max_pair_nulldist}, {"pass", l.pass}});
  }
  j["hausdorff_rows"] = nlohmann::json::array();
  for (const auto& h : r.hausdorff_rows) {
    j["hausdorff_rows"].push_back({{"t", h.t},
                                   {"t_prime", h.t_prime},
                                   {"hausdorff", h.hausdorff},
                                   {"diam_term", h.diam_term},
                                   {"bound", h.bound},
                                   {"excess", h.excess},
                                   {"pass", h.pass}});
  }
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : r.cauchy.points) pts.push_back(point_json(p));
  j["cauchy_certificate"] = {{"foot", point_json(r.cauchy.foot)},
                             {"times", r.cauchy.times},
                             {"points", pts},
                             {"modulus", "|t - t'| + " + format_double(r.cauchy.tol)},
                             {"max_violation", r.cauchy.max_violation},
                             {"pass", r.cauchy.pass}};
  j["monotone"] = {{"diam_ht", r.monotone_diam},
                   {"max_pair_nulldist", r.monotone_max_pair},
                   {"hausdorff_diam_term", r.monotone_hausdorff_term}};
  j["hypothesis_met"] = r.hypothesis_met;
  if (!r.hypothesis_met) j["hypothesis_message"] = r.hypothesis_message;
  j["caveat"] = r.upper_estimate_caveat ? "distances are shortest-path closures of optimizer upper estimates" : "";
  j["pass"] = r.pass;
  return j.dump(2) + "\n";
}

std::string bigbang_levels_csv(const BigBangReport& r) {
  std::string out = "t,diam_ht,max_pair_nulldist,pass\n";
  for (const auto& l : r.levels) {
    const std::string fields[] = {format_double(l.t), format_double(l.diam_ht), format_double(l.max_pair_nulldist),
                                  l.pass ? "true" : "false"};
    out += csv_row(fields);
  }
  return out;
}

}  // namespace nulldist
