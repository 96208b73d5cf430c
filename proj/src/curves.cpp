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

#include "nulldist/curves.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "nulldist/errors.hpp"

namespace nulldist {

namespace {

TimeDirection flip(TimeDirection d) {
  switch (d) {
    case TimeDirection::Future: return TimeDirection::Past;
    case TimeDirection::Past: return TimeDirection::Future;
    case TimeDirection::None: return TimeDirection::None;
  }
  return TimeDirection::None;
}

void check_structure(const PiecewiseCausalCurve& curve) {
  if (curve.segments.empty()) throw CurveError("degenerate curve: no segments");
  for (std::size_t i = 0; i < curve.segments.size(); ++i) {
    const auto& seg = curve.segments[i];
    if (seg.samples.size() < 2) {
      throw CurveError("segment " + std::to_string(i) + " has fewer than two samples");
    }
    if (seg.direction == TimeDirection::None) {
      throw CurveError("segment " + std::to_string(i) + " has no time direction");
    }
    if (i > 0 && !(curve.segments[i - 1].samples.back() == seg.samples.front())) {
      throw CurveError("segments " + std::to_string(i - 1) + " and " + std::to_string(i) +
                       " do not share an endpoint");
    }
  }
}

}  // namespace

PiecewiseCausalCurve PiecewiseCausalCurve::reversed() const {
  PiecewiseCausalCurve out;
  out.segments.reserve(segments.size());
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
    CausalSegment seg{std::vector<Point>(it->samples.rbegin(), it->samples.rend()), flip(it->direction)};
    out.segments.push_back(std::move(seg));
  }
  return out;
}

double null_length(const TimeFunction& tau, const PiecewiseCausalCurve& curve) {
  check_structure(curve);
  double total = 0.0;
  for (const auto& seg : curve.segments) {
    total += std::abs(tau(seg.samples.back()) - tau(seg.samples.front()));
  }
  return total;
}

double null_length_integral(const TimeFunction& tau, const PiecewiseCausalCurve& curve,
                            int substeps) {
  check_structure(curve);
  if (substeps < 1) throw std::invalid_argument("null_length_integral needs substeps >= 1");
  const ScalarField& field = tau.field();
  auto rate = [&](const Point& x, const Vector& delta) {
    const Vector df = field.differential ? field.differential(x)
                                         : finite_difference_differential(field, x, 1e-6);
    return std::abs(df.dot(delta));
  };
  double total = 0.0;
  for (const auto& seg : curve.segments) {
    for (std::size_t k = 0; k + 1 < seg.samples.size(); ++k) {
      const Vector& a = seg.samples[k].coords;
      const Vector delta = seg.samples[k + 1].coords - a;
      double chord = 0.0;
      for (int j = 0; j <= substeps; ++j) {
        const double s = static_cast<double>(j) / substeps;
        const double w = (j == 0 || j == substeps) ? 0.5 : 1.0;
        chord += w * rate(Point(Vector(a + s * delta)), delta);
      }
      total += chord / substeps;
    }
  }
  return total;
}

double lorentzian_length(const Spacetime& st, const CausalSegment& segment, double tol) {
  if (segment.samples.size() < 2) throw CurveError("segment has fewer than two samples");
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < segment.samples.size(); ++k) {
    const Point& a = segment.samples[k];
    const Point& b = segment.samples[k + 1];
    const CausalClass c = chord_class(st, a, b, tol * kNullToleranceFactor);
    if (c.type == CausalType::Spacelike) {
      throw CurveError("spacelike chord " + std::to_string(k) + " in lorentzian_length");
    }
    if (c.type != CausalType::Timelike) continue;
    const Vector delta = b.coords - a.coords;
    const double qa = delta.dot(st.metric_at(a) * delta);
    const double qb = delta.dot(st.metric_at(b) * delta);
    total += 0.5 * (std::sqrt(std::max(0.0, -qa)) + std::sqrt(std::max(0.0, -qb)));
  }
  return total;
}

ValidationReport validate(const Spacetime& st, const PiecewiseCausalCurve& curve, double tol) {
  ValidationReport report;
  if (curve.segments.empty()) {
    report.message = "degenerate curve";
    return report;
  }
  report.histograms.resize(curve.segments.size());
  bool ok = true;
  for (std::size_t i = 0; i < curve.segments.size(); ++i) {
    const auto& seg = curve.segments[i];
    auto& hist = report.histograms[i];
    auto fail = [&](std::optional<std::size_t> chord, std::string message) {
      if (ok) {
        ok = false;
        report.segment = i;
        report.chord = chord;
        report.message = std::move(message);
      }
    };
    if (seg.samples.size() < 2) {
      fail(std::nullopt, "segment " + std::to_string(i) + " has fewer than two samples");
      continue;
    }
    if (seg.direction == TimeDirection::None) fail(std::nullopt, "segment " + std::to_string(i) + " has no direction");
    if (i > 0 && !curve.segments[i - 1].samples.empty() &&
        !(curve.segments[i - 1].samples.back() == seg.samples.front())) {
      fail(std::nullopt, "segment " + std::to_string(i) + " does not start where the previous one ends");
    }
    for (std::size_t k = 0; k + 1 < seg.samples.size(); ++k) {
      const auto& a = seg.samples[k];
      const auto& b = seg.samples[k + 1];
      if (!st.in_domain(a) || !st.in_domain(b)) {
        fail(k, "chord " + std::to_string(k) + " of segment " + std::to_string(i) + " leaves the chart domain");
        continue;
      }
      const CausalClass c = chord_class(st, a, b, tol * kNullToleranceFactor);
      switch (c.type) {
        case CausalType::Timelike: ++hist.timelike; break;
        case CausalType::Null: ++hist.null; break;
        case CausalType::Spacelike: ++hist.spacelike; break;
        case CausalType::Zero: ++hist.zero; break;
      }
      if (c.direction == TimeDirection::Future) ++hist.future;
      if (c.direction == TimeDirection::Past) ++hist.past;
      if (c.type == CausalType::Zero) continue;
      if (c.type == CausalType::Spacelike) {
        fail(k, "chord " + std::to_string(k) + " of segment " + std::to_string(i) + " is spacelike");
      } else if (c.direction != seg.direction) {
        fail(k, "chord " + std::to_string(k) + " of segment " + std::to_string(i) + " is " +
                    to_string(c) + " but the segment is declared " + to_string(seg.direction));
      }
    }
  }
  report.pass = ok;
  if (ok) report.message = "ok";
  return report;
}

CausalSegment causal_chart_segment(const Spacetime& st, const Vector& from, const Vector& to,
                                   TimeDirection direction, int samples,
                                   const std::optional<Point>& exact_start,
                                   const std::optional<Point>& exact_end) {
  if (samples < 2) throw std::invalid_argument("a segment needs at least two samples");
  CausalSegment seg;
  seg.direction = direction;
  seg.samples.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    if (k == 0 && exact_start) {
      seg.samples.push_back(*exact_start);
      continue;
    }
    if (k == samples - 1 && exact_end) {
      seg.samples.push_back(*exact_end);
      continue;
    }
    const double s = static_cast<double>(k) / (samples - 1);
    const Vector c = (k == samples - 1) ? to : Vector(from + s * (to - from));
    seg.samples.push_back(st.from_causal_chart(c));
  }
  return seg;
}

PiecewiseCausalCurve connect(const Spacetime& st, const Point& p, const Point& q,
                             const ConnectOptions& options) {
  if (!st.has_flat_causal_chart()) throw UnsupportedError("connect needs a built-in spacetime family");
  if (!st.in_domain(p) || !st.in_domain(q)) throw std::invalid_argument("connect: endpoint outside the chart");
  if (p == q) return {{CausalSegment{{p, p}, TimeDirection::Future}}};

  const int dim = st.dimension();
  const int n = dim - 1;
  Point target = q;
  target.coords.tail(n) = st.spatial().nearest_image(p.coords.tail(n), q.coords.tail(n));
  const Vector a = st.to_causal_chart(p);
  const Vector b = st.to_causal_chart(target);
  const Vector ds = b.tail(n) - a.tail(n);
  const double d = ds.norm();
  const double du = b[0] - a[0];
  const int m = options.samples_per_segment;

  if (std::abs(du) >= d) {
    const auto dir = du >= 0.0 ? TimeDirection::Future : TimeDirection::Past;
    return {{causal_chart_segment(st, a, b, dir, m, p, target)}};
  }

  const Vector unit = ds / d;
  Vector apex(dim);
  apex[0] = 0.5 * (a[0] + b[0] + d) + options.margin;
  apex.tail(n) = a.tail(n) + 0.5 * (d + du) * unit;
  if (apex[0] < st.causal_time_upper()) {
    return {{causal_chart_segment(st, a, apex, TimeDirection::Future, m, p),
             causal_chart_segment(st, apex, b, TimeDirection::Past, m, std::nullopt, target)}};
  }
  apex[0] = 0.5 * (a[0] + b[0] - d) - options.margin;
  apex.tail(n) = a.tail(n) + 0.5 * (d - du) * unit;
  if (!(apex[0] > st.causal_time_lower())) {
    throw NumericalError("connect: neither apex lies inside the chart");
  }
  return {{causal_chart_segment(st, a, apex, TimeDirection::Past, m, p),
           causal_chart_segment(st, apex, b, TimeDirection::Future, m, std::nullopt, target)}};
}

std::string curve_to_json(const PiecewiseCausalCurve& curve) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& seg : curve.segments) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& pt : seg.samples) {
      samples.push_back(std::vector<double>(pt.coords.data(), pt.coords.data() + pt.coords.size()));
    }
    arr.push_back({{"direction", seg.direction == TimeDirection::Past ? "past" : "future"},
                   {"samples", std::move(samples)}});
  }
  return arr.dump();
}

PiecewiseCausalCurve curve_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.is_array()) throw CurveError("curve JSON must be an array of segments");
  PiecewiseCausalCurve curve;
  for (const auto& s : j) {
    CausalSegment seg;
    const std::string dir = s.at("direction").get<std::string>();
    if (dir == "future") seg.direction = TimeDirection::Future;
    else if (dir == "past") seg.direction = TimeDirection::Past;
    else throw CurveError("unknown segment direction '" + dir + "'");
    for (const auto& c : s.at("samples")) {
      const auto v = c.get<std::vector<double>>();
      seg.samples.emplace_back(Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
    }
    curve.segments.push_back(std::move(seg));
  }
  return curve;
}

}  // namespace nulldist
