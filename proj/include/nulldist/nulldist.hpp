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

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nulldist/curves.hpp"
#include "nulldist/geometry.hpp"
#include "nulldist/timefns.hpp"

namespace nulldist {

enum class EstimateMethod { Exact, ZigzagOpt };

std::string to_string(EstimateMethod m);

/// Bracket on the null distance between two points. `upper` is the null
/// length of `witness`; `lower` is |tau(q) - tau(p)|.
struct NullDistanceEstimate {
  double upper = 0.0;
  double lower = 0.0;
  PiecewiseCausalCurve witness;
  EstimateMethod method = EstimateMethod::ZigzagOpt;
  int iterations = 0;
};

/// Closed form max(|dt|, |dx|) on Minkowski with tau = t.
/// Throws UnsupportedError for any other family or time function.
NullDistanceEstimate minkowski_exact(const Spacetime& st, const TimeFunction& tau, const Point& p,
                                     const Point& q);

struct EstimateOptions {
  /// Number of tents (null future/past pairs) in the zigzag.
  int apexes = 1;
  int restarts = 8;
  std::uint64_t seed = 0;
  int samples_per_segment = 8;
  /// Objective evaluations allowed per pattern-search run.
  int max_evaluations = 4000;
  /// A known curve from p to q; the result is never worse than its null length.
  std::optional<PiecewiseCausalCurve> warm_start;
};

/// Upper bound on the null distance by minimizing null length over
/// piecewise-null zigzags.
///
/// The zigzag is a chain p = w_0, w_1, ..., w_{N-1}, w_N = q of waypoints.
/// Consecutive waypoints are joined by a single causal segment when causally
/// related, and otherwise by the cheaper of the two null "tents" through the
/// future or past apex; tents are exact in the causal chart, so every
/// candidate is piecewise null by construction. The waypoints are found by
/// compass search with random restarts. Candidates from every chain length
/// up to `apexes` are kept, so the result is nonincreasing in both `apexes`
/// and `restarts`.
NullDistanceEstimate estimate(const Spacetime& st, const TimeFunction& tau, const Point& p,
                              const Point& q, const EstimateOptions& options = {});

NullDistanceEstimate estimate(const Spacetime& st, const TimeFunction& tau, const Point& p,
                              const Point& q, int apexes, int restarts, std::uint64_t seed);

/// Absolute plus relative slack for optimizer-dependent claims.
struct Tolerance {
  double absolute = 1e-6;
  double relative = 1e-3;

  double slack(double scale) const { return absolute + relative * std::abs(scale); }
};

struct DiamondRow {
  Point x;
  Point y;
  double upper = 0.0;
};

struct DiamondReport {
  double bound = 0.0;  // 2 (tau(q) - tau(p))
  double max_upper = 0.0;
  std::vector<DiamondRow> rows;
  bool pass = false;
};

/// Samples x, y in J+(p) n J-(q) and checks estimate(x, y).upper <= 2 (tau(q) - tau(p)) + tol.
/// Throws PreconditionError unless p <= q.
DiamondReport diamond_bound_check(const Spacetime& st, const TimeFunction& tau, const Point& p,
                                  const Point& q, int samples, std::uint64_t seed,
                                  double tol = 1e-6, const EstimateOptions& options = {});

/// Coordinate time of the level set tau = level together with the scale by
/// which the induced metric h_t stretches the spatial factor.
struct LevelSlice {
  double coordinate_time = 0.0;
  double spatial_scale = 1.0;
};

/// Only for time functions of the form phi(t) on built-in families.
LevelSlice level_slice(const Spacetime& st, const TimeFunction& f, double level);

/// Distance in the induced Riemannian metric of the level set containing p and q.
double level_set_distance(const Spacetime& st, const LevelSlice& slice, const Point& p, const Point& q);

/// Random point pairs on the level set tau = level, spatial positions drawn
/// from the default sample box.
std::vector<std::pair<Point, Point>> sample_level_set_pairs(const Spacetime& st,
                                                            const TimeFunction& f, double level,
                                                            int count, std::uint64_t seed);

/// Result of chaining local estimates along the level-set geodesic from p to q.
struct PartitionBound {
  double chained_upper = 0.0;
  std::vector<double> breakpoints;  // fractions 0 = s_0 < ... < s_N = 1
};

/// Refines a partition of the level-set geodesic (bisecting pieces that
/// fail) until every piece satisfies estimate <= (C + delta) * length, then
/// sums the local estimates. A constructive stand-in for choosing the
/// partition below a Lebesgue number of the cover by good neighborhoods.
PartitionBound partitioned_level_set_bound(const Spacetime& st, const TimeFunction& f,
                                           const LevelSlice& slice, const Point& p, const Point& q,
                                           double c, double delta, const EstimateOptions& options = {},
                                           int max_depth = 10);

struct LevelSetRow {
  Point p;
  Point q;
  double upper = 0.0;
  double chained_upper = 0.0;
  double level_distance = 0.0;
  double bound = 0.0;  // C * d_{h_t}(p, q)
  double ratio = 0.0;  // upper / bound
  bool pass = false;
};

struct LevelSetTable {
  double level = 0.0;
  double c = 0.0;
  std::vector<LevelSetRow> rows;
  double max_ratio = 0.0;
  bool pass = false;
};

/// Checks d_f(p, q) <= C d_{h_t}(p, q) on sampled pairs of the level set
/// f = level. Throws PreconditionError if a pair is off the level set or the
/// gradient norm differs from C by more than 1e-6.
LevelSetTable verify_level_set_inequality(const Spacetime& st, const TimeFunction& f, double level,
                                          double c, std::span<const std::pair<Point, Point>> pairs,
                                          const Tolerance& tol = {},
                                          const EstimateOptions& options = {});

/// CSV with header p,q,lower,upper,method,iterations,witness_json.
void write_estimate_csv_header(std::ostream& os);
void write_estimate_csv_row(std::ostream& os, const Point& p, const Point& q,
                            const NullDistanceEstimate& e);

}  // namespace nulldist
