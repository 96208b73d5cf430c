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
#include <span>
#include <string>
#include <vector>

#include "nulldist/geometry.hpp"
#include "nulldist/nulldist.hpp"

namespace nulldist {

/// Cosmological time of a GRW spacetime over (0, b): the coordinate t.
/// Throws UnsupportedError for other families or intervals.
double tau_g(const Spacetime& st, const Point& p);

struct BruteforceOptions {
  int chords = 16;
  int subdivisions = 4;
  /// Curves start at t = floor_fraction * t_p.
  double floor_fraction = 1e-3;
};

/// Largest Lorentzian length over `curve_samples` random past-directed causal
/// polylines from p down towards t = 0. A lower bound for tau_g(p); 0 when no
/// curve is sampled.
double tau_g_bruteforce(const Spacetime& st, const Point& p, int curve_samples, std::uint64_t seed,
                        const BruteforceOptions& options = {});

struct GeneratorChecks {
  double unit_speed_error = 0.0;
  double geodesic_residual = 0.0;
  bool tau_identity = false;
  double gradient_error = 0.0;     // closed-form gradient
  double gradient_error_fd = 0.0;  // finite-difference gradient
  bool pass() const;
};

/// The vertical unit-speed geodesic s -> (s, x_q), s in (0, t_q], with the
/// results of its self-checks.
struct Generator {
  Point foot;
  GeneratorChecks checks;

  Point at(double s) const;
  Vector velocity(double s) const;
  double max_parameter() const { return foot.time(); }
  /// Coordinates of the limit point as s -> 0.
  Point limit() const { return at(0.0); }
};

Generator generator_at(const Spacetime& st, const Point& q, int check_points = 8);

struct BigBangOptions {
  int points_per_level = 32;
  std::uint64_t seed = 0;
  double tol = 1e-3;
  double cauchy_tol = 1e-6;
  EstimateOptions estimate;
};

struct BigBangLevel {
  double t = 0.0;
  double diam_ht = 0.0;
  double max_pair_nulldist = 0.0;
  std::vector<Point> points;
  bool pass = false;  // max_pair_nulldist <= diam_ht + tol
};

struct HausdorffRow {
  double t = 0.0;
  double t_prime = 0.0;
  double hausdorff = 0.0;
  double diam_term = 0.0;  // max(diam_ht, diam_ht')
  double bound = 0.0;      // |t - t'| + diam_term + tol
  double excess = 0.0;     // hausdorff - |t - t'|
  bool pass = false;
};

/// Points of one generator at the listed times; a Cauchy sequence for the
/// null distance with modulus |t_i - t_j| + tol.
struct CauchyCertificate {
  Point foot;
  std::vector<double> times;
  std::vector<Point> points;
  double tol = 0.0;
  double max_violation = 0.0;  // max of d(x_i, x_j) - |t_i - t_j|
  bool pass = false;
};

struct BigBangReport {
  std::string spacetime;
  std::vector<BigBangLevel> levels;
  std::vector<HausdorffRow> hausdorff_rows;
  CauchyCertificate cauchy;
  bool monotone_diam = false;
  bool monotone_max_pair = false;
  bool monotone_hausdorff_term = false;
  bool hypothesis_met = false;
  std::string hypothesis_message;
  /// Distances are closures of optimizer upper estimates, not exact values.
  bool upper_estimate_caveat = true;
  bool pass = false;
};

/// Samples the level sets t in t_list (strictly decreasing) as images of a
/// shared foot lattice under the generators, estimates all pairwise null
/// distances with tau = t, and checks the diameter, Hausdorff and Cauchy
/// bounds. The hypothesis (diameters strictly decreasing, f -> 0 at the
/// lower end of the interval) is recorded, not thrown; see require_hypothesis.
BigBangReport bigbang_experiment(const Spacetime& st, std::span<const double> t_list,
                                 const BigBangOptions& options = {});

/// Throws HypothesisNotMet when report.hypothesis_met is false.
void require_hypothesis(const BigBangReport& report);

std::string bigbang_to_json(const BigBangReport& report);
/// t,diam_ht,max_pair_nulldist,pass
std::string bigbang_levels_csv(const BigBangReport& report);

}  // namespace nulldist
