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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nulldist/geometry.hpp"
#include "nulldist/timefns.hpp"

namespace nulldist {

/// A sampled causal piece with a declared time direction. Samples are chart
/// coordinates; on a torus they live in the universal cover so chords never
/// jump across the identification.
struct CausalSegment {
  std::vector<Point> samples;
  TimeDirection direction = TimeDirection::Future;
};

struct PiecewiseCausalCurve {
  std::vector<CausalSegment> segments;

  const Point& start() const { return segments.front().samples.front(); }
  const Point& end() const { return segments.back().samples.back(); }

  /// Same point set traversed backwards, every direction flag flipped.
  PiecewiseCausalCurve reversed() const;
};

/// Null segments sit on the classification boundary, so validation widens the
/// null band by this factor over the base tolerance.
inline constexpr double kNullToleranceFactor = 10.0;

/// Sum over segments of |tau(end) - tau(start)|. Throws CurveError if the
/// curve is empty, a segment has fewer than two samples, or consecutive
/// segments do not share an endpoint exactly.
double null_length(const TimeFunction& tau, const PiecewiseCausalCurve& curve);

/// Trapezoidal integral of |(tau o beta)'| along every chord, using the
/// closed-form differential of tau when available.
double null_length_integral(const TimeFunction& tau, const PiecewiseCausalCurve& curve,
                            int substeps = 16);

/// Composite trapezoid of sqrt(-g(gamma', gamma')) over the samples; zero
/// for null chords. Throws CurveError on a spacelike chord.
double lorentzian_length(const Spacetime& st, const CausalSegment& segment,
                         double tol = kCausalTolerance);

struct SegmentHistogram {
  int timelike = 0;
  int null = 0;
  int spacelike = 0;
  int zero = 0;
  int future = 0;
  int past = 0;
};

struct ValidationReport {
  bool pass = false;
  std::string message;
  std::optional<std::size_t> segment;
  std::optional<std::size_t> chord;
  std::vector<SegmentHistogram> histograms;
};

/// Classifies every chord and checks it against its segment's declared
/// direction. Zero-length chords are accepted.
ValidationReport validate(const Spacetime& st, const PiecewiseCausalCurve& curve,
                          double tol = kCausalTolerance);

/// Segment that is a straight line from `from` to `to` in the causal chart,
/// sampled at `samples` points and mapped back to spacetime coordinates.
/// Optional exact endpoints replace the mapped first/last samples.
CausalSegment causal_chart_segment(const Spacetime& st, const Vector& from, const Vector& to,
                                   TimeDirection direction, int samples,
                                   const std::optional<Point>& exact_start = std::nullopt,
                                   const std::optional<Point>& exact_end = std::nullopt);

struct ConnectOptions {
  /// Apex is pushed this far (in causal-chart time) into the open cones.
  double margin = 1e-3;
  int samples_per_segment = 16;
};

/// A valid curve from p to q on a built-in family: a single causal segment
/// when p and q are causally related, otherwise a future/past zigzag through
/// an apex in I+(p) n I+(q) (or I-(p) n I-(q) when the future apex would
/// leave the chart). On a torus the final sample is the image of q reached
/// by the nearest-image displacement.
PiecewiseCausalCurve connect(const Spacetime& st, const Point& p, const Point& q,
                             const ConnectOptions& options = {});

/// JSON array of {"direction": "future"|"past", "samples": [[coords], ...]}.
/// Doubles are written with round-trip precision.
std::string curve_to_json(const PiecewiseCausalCurve& curve);
PiecewiseCausalCurve curve_from_json(std::string_view text);

}  // namespace nulldist
