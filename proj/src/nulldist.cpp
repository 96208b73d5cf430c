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

#include "nulldist/nulldist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nulldist/csv.hpp"
#include "nulldist/errors.hpp"
#include "nulldist/random.hpp"
#include "nulldist/sampling.hpp"

namespace nulldist {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Zigzag search problem in the causal chart of a built-in family.
class ZigzagProblem {
 public:
  ZigzagProblem(const Spacetime& st, const TimeFunction& tau, const Point& p, const Point& q)
      : st_(st),
        tau_(tau),
        n_(st.spatial_dimension()),
        lo_(st.causal_time_lower()),
        hi_(st.causal_time_upper()),
        p_(p),
        q_(q),
        P_(st.to_causal_chart(p)),
        Q_(st.to_causal_chart(q)),
        tau_p_(tau(p)),
        tau_q_(tau(q)) {}

  int spatial() const { return n_; }
  const Vector& P() const { return P_; }
  const Vector& Q() const { return Q_; }
  double tau_p() const { return tau_p_; }
  double tau_q() const { return tau_q_; }
  bool inside(const Vector& c) const { return c[0] > lo_ && c[0] < hi_; }
  double tau_chart(const Vector& c) const { return tau_(st_.from_causal_chart(c)); }

  // Cheapest null-length join from a to (the nearest image of) b. Writes the
  // tent apex when one is used.
  double join(const Vector& a, double tau_a, const Vector& b, double tau_b, Vector* apex,
              bool* has_apex) const {
    const Vector dx = st_.spatial().displacement(a.tail(n_), b.tail(n_));
    const double d = dx.norm();
    const double du = b[0] - a[0];
    if (has_apex) *has_apex = false;
    // Pairs within rounding of the light cone count as causal.
    if (std::abs(du) >= d * (1.0 - 1e-12)) return std::abs(tau_b - tau_a);
    double best = kInf;
    Vector c(n_ + 1);
    // Past apex first so that it wins exact ties.
    const double up = 0.5 * (a[0] + b[0] - d);
    if (up > lo_) {
      c[0] = up;
      c.tail(n_) = a.tail(n_) + (0.5 * (d - du) / d) * dx;
      const double tc = tau_chart(c);
      const double cost = std::abs(tc - tau_a) + std::abs(tau_b - tc);
      if (cost < best) {
        best = cost;
        if (apex) *apex = c;
        if (has_apex) *has_apex = true;
      }
    }
    const double uf = 0.5 * (a[0] + b[0] + d);
    if (uf < hi_) {
      c[0] = uf;
      c.tail(n_) = a.tail(n_) + (0.5 * (d + du) / d) * dx;
      const double tc = tau_chart(c);
      const double cost = std::abs(tc - tau_a) + std::abs(tau_b - tc);
      if (cost < best) {
        best = cost;
        if (apex) *apex = c;
        if (has_apex) *has_apex = true;
      }
    }
    return best;
  }

  // Null length of the zigzag through the packed waypoints x (k waypoints of size n+1).
  double cost(const Vector& x) const {
    const int k = static_cast<int>(x.size()) / (n_ + 1);
    Vector a = P_;
    double ta = tau_p_;
    double total = 0.0;
    for (int j = 0; j <= k; ++j) {
      Vector b = j < k ? Vector(x.segment(j * (n_ + 1), n_ + 1)) : Q_;
      if (j < k && !inside(b)) return kInf;
      const double tb = j < k ? tau_chart(b) : tau_q_;
      total += join(a, ta, b, tb, nullptr, nullptr);
      if (!std::isfinite(total)) return kInf;
      a = std::move(b);
      ta = tb;
    }
    return total;
  }

  // Chart vertices of the zigzag with every join unwrapped onto the cover,
  // and the time direction of each edge (None for a zero edge).
  struct Chain {
    std::vector<Vector> verts;
    std::vector<TimeDirection> dirs;
  };

  Chain vertices(const Vector& x) const {
    const int k = static_cast<int>(x.size()) / (n_ + 1);
    Chain out;
    out.verts.push_back(P_);
    double ta = tau_p_;
    for (int j = 0; j <= k; ++j) {
      const Vector a = out.verts.back();
      Vector b = j < k ? Vector(x.segment(j * (n_ + 1), n_ + 1)) : Q_;
      b.tail(n_) = st_.spatial().nearest_image(a.tail(n_), b.tail(n_));
      const double tb = j < k ? tau_chart(b) : tau_q_;
      Vector apex;
      bool has_apex = false;
      join(a, ta, b, tb, &apex, &has_apex);
      if (has_apex) {
        const bool future = apex[0] > 0.5 * (a[0] + b[0]);
        out.verts.push_back(apex);
        out.dirs.push_back(future ? TimeDirection::Future : TimeDirection::Past);
        out.dirs.push_back(future ? TimeDirection::Past : TimeDirection::Future);
      } else {
        const double du = b[0] - a[0];
        out.dirs.push_back(du > 0.0 ? TimeDirection::Future : du < 0.0 ? TimeDirection::Past : TimeDirection::None);
      }
      out.verts.push_back(b);
      ta = tb;
    }
    return out;
  }

  // Witness curve along the vertex chain. Zero-length pieces are dropped and
  // neighbouring pieces with the same direction are merged.
  PiecewiseCausalCurve witness(const Chain& chain, int samples) const {
    const std::vector<Vector>& verts = chain.verts;
    std::vector<Point> pts;
    pts.reserve(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (i == 0) {
        pts.push_back(p_);
      } else if (i + 1 == verts.size()) {
        Point end = q_;
        end.coords.tail(n_) = verts[i].tail(n_);
        pts.push_back(end);
      } else {
        pts.push_back(st_.from_causal_chart(verts[i]));
      }
    }
    PiecewiseCausalCurve curve;
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
      if (pts[i] == pts[i + 1]) continue;
      const TimeDirection dir = chain.dirs[i] == TimeDirection::None ? TimeDirection::Future : chain.dirs[i];
      CausalSegment seg = causal_chart_segment(st_, verts[i], verts[i + 1], dir, samples, pts[i], pts[i + 1]);
      if (!curve.segments.empty() && curve.segments.back().direction == dir &&
          curve.segments.back().samples.back() == seg.samples.front()) {
        auto& dst = curve.segments.back().samples;
        dst.insert(dst.end(), seg.samples.begin() + 1, seg.samples.end());
      } else {
        curve.segments.push_back(std::move(seg));
      }
    }
    if (curve.segments.empty()) curve.segments.push_back({{p_, pts.back()}, TimeDirection::Future});
    return curve;
  }

 private:
  const Spacetime& st_;
  const TimeFunction& tau_;
  int n_;
  double lo_;
  double hi_;
  Point p_;
  Point q_;
  Vector P_;
  Vector Q_;
  double tau_p_;
  double tau_q_;
};

// Compass search: try +-step along each coordinate, accept the first
// improvement, halve the step when a full sweep fails.
double compass_search(const ZigzagProblem& prob, Vector& x, double step, double min_step,
                      int max_evals, int& evals) {
  double f = prob.cost(x);
  ++evals;
  int used = 1;
  while (step > min_step && used < max_evals) {
    bool improved = false;
    for (int i = 0; i < x.size() && used < max_evals; ++i) {
      for (double sign : {1.0, -1.0}) {
        const double old = x[i];
        x[i] = old + sign * step;
        const double fx = prob.cost(x);
        ++evals;
        ++used;
        if (fx < f) {
          f = fx;
          improved = true;
          break;
        }
        x[i] = old;
      }
    }
    if (!improved) step *= 0.5;
  }
  return f;
}

struct Candidate {
  double cost = kInf;
  Vector x;
};

bool lex_less(const PiecewiseCausalCurve& a, const PiecewiseCausalCurve& b) {
  const std::size_t n = std::min(a.segments.size(), b.segments.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Vector& u = a.segments[i].samples.back().coords;
    const Vector& v = b.segments[i].samples.back().coords;
    for (int k = 0; k < u.size(); ++k) {
      if (u[k] != v[k]) return u[k] < v[k];
    }
  }
  return false;
}

bool is_minkowski_t(const Spacetime& st, const TimeFunction& tau) {
  if (st.family() != Spacetime::Family::Minkowski) return false;
  const auto prof = tau.profile();
  return prof && prof->kind() == ScalarExpr::Kind::Linear;
}

}  // namespace

std::string to_string(EstimateMethod m) { return m == EstimateMethod::Exact ? "exact" : "zigzag"; }

NullDistanceEstimate minkowski_exact(const Spacetime& st, const TimeFunction& tau, const Point& p,
                                     const Point& q) {
  if (!is_minkowski_t(st, tau)) {
    throw UnsupportedError("minkowski_exact needs Minkowski space with tau = t");
  }
  ZigzagProblem prob(st, tau, p, q);
    NullDistanceEstimate e;
  e.method = EstimateMethod::Exact;
  const double dt = q.time() - p.time();
  const double dx = (q.coords.tail(st.spatial_dimension()) - p.coords.tail(st.spatial_dimension())).norm();
  e.upper = std::max(std::abs(dt), dx);
  e.lower = std::abs(dt);
  e.witness = prob.witness(prob.vertices(Vector(0)), 2);
  return e;
}

NullDistanceEstimate estimate(const Spacetime& st, const TimeFunction& tau, const Point& p,
                              const Point& q, const EstimateOptions& options) {
  if (options.apexes < 1) throw std::invalid_argument("estimate: need at least one apex");
  if (options.restarts < 1) throw std::invalid_argument("estimate: need at least one restart");
  if (!st.has_flat_causal_chart()) {
    throw UnsupportedError("estimate needs a built-in spacetime family");
  }
  if (!st.in_domain(p) || !st.in_domain(q)) throw std::invalid_argument("estimate: point outside the chart");

  ZigzagProblem prob(st, tau, p, q);
  const int n = prob.spatial();
  const int w = n + 1;
  const Vector& P = prob.P();
  Vector Qc = prob.Q();
  Qc.tail(n) = st.spatial().nearest_image(P.tail(n), Qc.tail(n));
  const double scale = std::max((Qc - P).norm(), 1e-300);
  const double step0 = 0.25 * scale;
  const double min_step = 1e-10 * scale;

  int evals = 0;
  std::vector<Candidate> candidates;
  candidates.push_back({prob.cost(Vector(0)), Vector(0)});
  ++evals;

  Vector warm(0);
  for (int k = 1; k < options.apexes; ++k) {
    // Warm chain: previous level plus a degenerate waypoint at q.
    Vector x(k * w);
    x.head((k - 1) * w) = warm;
    x.tail(w) = prob.Q();
    const double fw = compass_search(prob, x, step0, min_step, options.max_evaluations, evals);
    candidates.push_back({fw, x});
    warm = x;

    for (int r = 1; r < options.restarts; ++r) {
      Rng rng = Rng::derive(options.seed, static_cast<std::uint64_t>(k) * 1000003ULL + r);
      Vector y(k * w);
      for (int j = 0; j < k; ++j) {
        const double s = static_cast<double>(j + 1) / (k + 1);
        Vector c = P + s * (Qc - P);
        if (r > 1) {
          Vector trial = c;
          for (int attempt = 0; attempt < 16; ++attempt) {
            for (int i = 0; i < w; ++i) trial[i] = c[i] + 0.5 * scale * rng.normal();
            if (prob.inside(trial)) break;
            trial = c;
          }
          c = trial;
        }
        y.segment(j * w, w) = c;
      }
      const double fy = compass_search(prob, y, step0, min_step, options.max_evaluations, evals);
      candidates.push_back({fy, y});
    }
  }

  double best = kInf;
  for (const auto& c : candidates) best = std::min(best, c.cost);
  if (!std::isfinite(best)) throw NumericalError("estimate: no admissible zigzag found");

  NullDistanceEstimate e;
  e.method = EstimateMethod::ZigzagOpt;
  e.lower = std::abs(prob.tau_q() - prob.tau_p());
  bool have = false;
  const double tie = 1e-12 * std::max(1.0, std::abs(best));
  for (const auto& c : candidates) {
    if (c.cost > best + tie) continue;
    PiecewiseCausalCurve curve = prob.witness(prob.vertices(c.x), options.samples_per_segment);
    const double len = null_length(tau, curve);
    if (!have || len < e.upper - tie ||
        (len <= e.upper + tie &&
         (curve.segments.size() < e.witness.segments.size() ||
          (curve.segments.size() == e.witness.segments.size() && lex_less(curve, e.witness))))) {
      e.upper = len;
      e.witness = std::move(curve);
      have = true;
    }
  }

  if (options.warm_start) {
    const auto& ws = *options.warm_start;
    if (ws.segments.empty() || !(ws.start() == p)) {
      throw std::invalid_argument("estimate: warm start must begin at p");
    }
    const double len = null_length(tau, ws);
    if (len < e.upper && validate(st, ws).pass) {
      e.upper = len;
      e.witness = ws;
    }
  }
  e.upper = std::max(e.upper, e.lower);
  e.iterations = evals;
  return e;
}

NullDistanceEstimate estimate(const Spacetime& st, const TimeFunction& tau, const Point& p,
                              const Point& q, int apexes, int restarts, std::uint64_t seed) {
  EstimateOptions o;
  o.apexes = apexes;
  o.restarts = restarts;
  o.seed = seed;
  return estimate(st, tau, p, q, o);
}

DiamondReport diamond_bound_check(const Spacetime& st, const TimeFunction& tau, const Point& p,
                                  const Point& q, int samples, std::uint64_t seed, double tol,
                                  const EstimateOptions& options) {
  if (!st.has_flat_causal_chart()) throw UnsupportedError("diamond_bound_check needs a built-in family");
  const int n = st.spatial_dimension();
  const Vector P = st.to_causal_chart(p);
  Vector Q = st.to_causal_chart(q);
  Q.tail(n) = st.spatial().nearest_image(P.tail(n), Q.tail(n));
  const double height = Q[0] - P[0];
  if (height < (Q.tail(n) - P.tail(n)).norm() * (1.0 - kCausalTolerance)) {
    throw PreconditionError("diamond_bound_check: q is not in the causal future of p");
  }
  DiamondReport rep;
  rep.bound = 2.0 * (tau(q) - tau(p));
  const Vector mid = 0.5 * (P + Q);
  Rng rng(seed);
  auto draw = [&]() {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      Vector z(n + 1);
      z[0] = rng.uniform(P[0], Q[0]);
      for (int i = 1; i <= n; ++i) z[i] = mid[i] + rng.uniform(-0.5 * height, 0.5 * height);
      if (z[0] - P[0] >= (z.tail(n) - P.tail(n)).norm() && Q[0] - z[0] >= (Q.tail(n) - z.tail(n)).norm()) {
        return st.from_causal_chart(z);
      }
    }
    // Thin (near-null) diamond: fall back to the causal chord from p to q.
    return st.from_causal_chart(Vector(P + rng.uniform() * (Q - P)));
  };
  rep.pass = true;
  for (int s = 0; s < samples; ++s) {
    DiamondRow row;
    row.x = draw();
    row.y = draw();
    EstimateOptions o = options;
    o.seed = Rng::mix(seed + static_cast<std::uint64_t>(s));
    row.upper = estimate(st, tau, row.x, row.y, o).upper;
    rep.max_upper = std::max(rep.max_upper, row.upper);
    if (row.upper > rep.bound + tol) rep.pass = false;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

LevelSlice level_slice(const Spacetime& st, const TimeFunction& f, double level) {
  if (!st.has_flat_causal_chart() || !f.profile()) {
    throw UnsupportedError("level sets are only available for tau = phi(t) on built-in families");
  }
  LevelSlice s;
  s.coordinate_time = f.coordinate_time_of_level(level);
  s.spatial_scale = st.family() == Spacetime::Family::GRW ? st.scale_factor().value(s.coordinate_time) : 1.0;
  if (!(s.spatial_scale > 0.0)) throw PreconditionError("level set lies outside the spacetime interval");
  return s;
}

double level_set_distance(const Spacetime& st, const LevelSlice& slice, const Point& p, const Point& q) {
  const int n = st.spatial_dimension();
  return slice.spatial_scale * st.spatial().distance(p.coords.tail(n), q.coords.tail(n));
}

std::vector<std::pair<Point, Point>> sample_level_set_pairs(const Spacetime& st,
                                                            const TimeFunction& f, double level,
                                                            int count, std::uint64_t seed) {
  const LevelSlice slice = level_slice(st, f, level);
  const SampleBox box = default_sample_box(st);
  Rng rng(seed);
  auto draw = [&]() {
    Point x = random_point(box, rng);
    x.coords[0] = slice.coordinate_time;
    return x;
  };
  std::vector<std::pair<Point, Point>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Point a = draw();
    Point b = draw();
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

PartitionBound partitioned_level_set_bound(const Spacetime& st, const TimeFunction& f,
                                           const LevelSlice& slice, const Point& p, const Point& q,
                                           double c, double delta, const EstimateOptions& options,
                                           int max_depth) {
  const int n = st.spatial_dimension();
  const Vector xp = p.coords.tail(n);
  const Vector xq = st.spatial().nearest_image(xp, q.coords.tail(n));
  const double length = slice.spatial_scale * (xq - xp).norm();
  auto at = [&](double s) {
    if (s == 0.0) return p;
    Point x = p;
    x.coords.tail(n) = s == 1.0 ? xq : Vector(xp + s * (xq - xp));
    return x;
  };
  struct Piece {
    double a, b;
    int depth;
  };
  PartitionBound out;
  out.breakpoints.push_back(0.0);
  std::vector<Piece> stack{{0.0, 1.0, 0}};
  while (!stack.empty()) {
    const Piece pc = stack.back();
    stack.pop_back();
    const double e = estimate(st, f, at(pc.a), at(pc.b), options).upper;
    const double piece_len = length * (pc.b - pc.a);
    if (e <= (c + delta) * piece_len + 1e-12 || pc.depth >= max_depth) {
      out.chained_upper += e;
      out.breakpoints.push_back(pc.b);
    } else {
      const double m = 0.5 * (pc.a + pc.b);
      stack.push_back({m, pc.b, pc.depth + 1});
      stack.push_back({pc.a, m, pc.depth + 1});
    }
  }
  return out;
}

LevelSetTable verify_level_set_inequality(const Spacetime& st, const TimeFunction& f, double level,
                                          double c, std::span<const std::pair<Point, Point>> pairs,
                                          const Tolerance& tol, const EstimateOptions& options) {
  const LevelSlice slice = level_slice(st, f, level);
  const double on_level = 1e-9 * (1.0 + std::abs(level));
  auto check_point = [&](const Point& x) {
    if (std::abs(f(x) - level) > on_level) {
      throw PreconditionError("point " + format_point(x) + " is not on the level set");
    }
    const TangentVector g = gradient(st, f.field(), x);
    const double gg = inner(st, g, g);
    const double norm = gg < 0.0 ? std::sqrt(-gg) : 0.0;
    if (std::abs(norm - c) > 1e-6) {
      throw PreconditionError("gradient norm " + format_double(norm) + " differs from C = " +
                              format_double(c) + " at " + format_point(x));
    }
  };
  LevelSetTable table;
  table.level = level;
  table.c = c;
  table.pass = true;
  for (const auto& [p, q] : pairs) {
    check_point(p);
    check_point(q);
    LevelSetRow row;
    row.p = p;
    row.q = q;
    row.upper = estimate(st, f, p, q, options).upper;
    row.chained_upper =
        partitioned_level_set_bound(st, f, slice, p, q, c, tol.relative * c, options).chained_upper;
    row.level_distance = level_set_distance(st, slice, p, q);
    row.bound = c * row.level_distance;
    row.ratio = row.bound > 0.0 ? row.upper / row.bound : (row.upper == 0.0 ? 0.0 : kInf);
    row.pass = row.upper <= row.bound + tol.slack(row.bound);
    table.pass = table.pass && row.pass;
    table.max_ratio = std::max(table.max_ratio, row.ratio);
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_estimate_csv_header(std::ostream& os) {
  os << "p,q,lower,upper,method,iterations,witness_json\n";
}

void write_estimate_csv_row(std::ostream& os, const Point& p, const Point& q,
                            const NullDistanceEstimate& e) {
  const std::string fields[] = {format_point(p),       format_point(q),
                                format_double(e.lower), format_double(e.upper),
                                to_string(e.method),    std::to_string(e.iterations),
                                curve_to_json(e.witness)};
  os << csv_row(fields);
}

}  // namespace nulldist
