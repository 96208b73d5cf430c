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

#include "nulldist/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nulldist/cosmo.hpp"
#include "nulldist/csv.hpp"
#include "nulldist/errors.hpp"
#include "nulldist/nulldist.hpp"
#include "nulldist/properties.hpp"
#include "nulldist/random.hpp"
#include "nulldist/sampling.hpp"
#include "nulldist/slim.hpp"

namespace nulldist {
namespace {

using Fields = std::vector<std::string>;

std::string row(const Fields& f) { return csv_row(f); }

std::string yes_no(bool b) { return b ? "true" : "false"; }

int positive_int(const Config& cfg, const std::string& sec, const std::string& key, long long fallback) {
  const long long v = cfg.integer_or(sec, key, fallback);
  if (v < 1 || v > 100000000) throw ConfigError(cfg.line(sec, key), "'" + key + "' must be a positive integer");
  return static_cast<int>(v);
}

std::uint64_t seed_of(const Config& cfg, const RunOptions& opt) {
  const std::uint64_t s = cfg.seed("", "seed");
  return opt.seed ? *opt.seed : s;
}

void emit(const RunOptions& opt, const std::string& name, const std::string& contents, std::ostream& log) {
  const auto path = opt.out_dir / name;
  write_file_atomic(path, contents);
  log << "wrote " << path.string() << "\n";
}

EstimateOptions estimate_options(const Config& cfg, int default_apexes, int default_restarts) {
  EstimateOptions o;
  o.apexes = positive_int(cfg, "sampling", "apexes", default_apexes);
  o.restarts = positive_int(cfg, "sampling", "restarts", default_restarts);
  return o;
}

int minkowski_table(const Config& cfg, const RunOptions& opt, std::ostream& log) {
  const Spacetime st = spacetime_from_config(cfg);
  if (st.family() != Spacetime::Family::Minkowski) {
    throw ConfigError(cfg.line("spacetime", "family"), "minkowski-table needs family = minkowski");
  }
  const TimeFunction tau = time_function_from_config(cfg, st);
  if (tau.kind() != TimeFunctionKind::CoordinateT) {
    throw ConfigError(cfg.line("time", "function"), "minkowski-table compares against the closed form for tau = t");
  }
  const std::uint64_t seed = seed_of(cfg, opt);
  const int pairs = positive_int(cfg, "sampling", "pairs", 100);
  EstimateOptions eo = estimate_options(cfg, 1, 8);
  const double rel_tol = cfg.real_or("checks", "rel_tol", 0.01);
  const std::string csv = cfg.text_or("output", "csv", "minkowski-table.csv");
  cfg.check_all_used();

  const SampleBox box = default_sample_box(st);
  Rng rng(seed);
  std::string out = row({"p", "q", "lower", "upper", "method", "iterations", "witness_json", "exact", "rel_error"});
  int failures = 0;
  double worst = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const Point p = random_point(box, rng);
    const Point q = random_point(box, rng);
    eo.seed = Rng::mix(seed + static_cast<std::uint64_t>(i));
    const NullDistanceEstimate e = estimate(st, tau, p, q, eo);
    const double exact = minkowski_exact(st, tau, p, q).upper;
    const double rel = exact > 0.0 ? std::abs(e.upper - exact) / exact : e.upper;
    worst = std::max(worst, rel);
    out += row({format_point(p), format_point(q), format_double(e.lower), format_double(e.upper), to_string(e.method),
                std::to_string(e.iterations), curve_to_json(e.witness), format_double(exact), format_double(rel)});
    if (!(rel <= rel_tol)) {
      ++failures;
      log << "FAIL pair " << i << ": p=" << format_point(p) << " q=" << format_point(q)
          << " rel_error=" << format_double(rel) << "\n";
    }
  }
  emit(opt, csv, out, log);
  log << "minkowski-table: " << pairs << " pairs on " << st.describe() << ", max relative error "
      << format_double(worst) << ", " << failures << " failures\n";
  return failures == 0 ? 0 : 1;
}

int level_set_inequality(const Config& cfg, const RunOptions& opt, std::ostream& log) {
  const Spacetime st = spacetime_from_config(cfg);
  const TimeFunction f = time_function_from_config(cfg, st);
  const std::uint64_t seed = seed_of(cfg, opt);
  const double level = cfg.real("sampling", "level");
  const double c = cfg.real("sampling", "c");
  const int pairs = positive_int(cfg, "sampling", "pairs", 50);
  EstimateOptions eo = estimate_options(cfg, 1, 8);
  eo.seed = seed;
  Tolerance tol;
  tol.absolute = cfg.real_or("checks", "abs_tol", 1e-6);
  tol.relative = cfg.real_or("checks", "rel_tol", 1e-3);
  const bool has_min = cfg.has("checks", "min_ratio");
  const double min_ratio = has_min ? cfg.real("checks", "min_ratio") : 0.0;
  const std::string csv = cfg.text_or("output", "csv", "level-set-inequality.csv");
  cfg.check_all_used();

  std::vector<std::pair<Point, Point>> sample;
  try {
    sample = sample_level_set_pairs(st, f, level, pairs, seed);
  } catch (const std::exception& e) {
    throw ConfigError(cfg.line("sampling", "level"), e.what());
  }
  LevelSetTable table;
  try {
    table = verify_level_set_inequality(st, f, level, c, sample, tol, eo);
  } catch (const PreconditionError& e) {
    log << "FAIL precondition: " << e.what() << "\n";
    return 1;
  }
  std::string out = row({"p", "q", "upper", "chained_upper", "level_distance", "bound", "ratio", "pass"});
  int failures = 0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    const bool ok = r.pass && (!has_min || r.ratio >= min_ratio);
    out += row({format_point(r.p), format_point(r.q), format_double(r.upper), format_double(r.chained_upper),
                format_double(r.level_distance), format_double(r.bound), format_double(r.ratio), yes_no(ok)});
    if (!ok) {
      ++failures;
      log << "FAIL pair " << i << ": p=" << format_point(r.p) << " q=" << format_point(r.q)
          << " ratio=" << format_double(r.ratio) << "\n";
    }
  }
  emit(opt, csv, out, log);
  log << "level-set-inequality: " << table.rows.size() << " pairs on " << st.describe() << " level " << format_double(level)
      << ", C = " << format_double(c) << ", max ratio " << format_double(table.max_ratio) << ", " << failures
      << " failures\n";
  return failures == 0 ? 0 : 1;
}

void require_decreasing(const Config& cfg, const std::string& key, const std::vector<double>& v, double lo, double hi) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > lo && v[i] < hi) || (i > 0 && !(v[i] < v[i - 1]))) {
      throw ConfigError(cfg.line("sampling", key), "'" + key + "' must be strictly decreasing inside (" +
                                                       format_double(lo) + ", " + format_double(hi) + ")");
    }
  }
}

int slim_ratio(const Config& cfg, const RunOptions& opt, std::ostream& log) {
  const Spacetime st = spacetime_from_config(cfg);
  const TimeFunction f = time_function_from_config(cfg, st);
  (void)seed_of(cfg, opt);
  const std::vector<double> center = cfg.reals("sampling", "point");
  const std::vector<double> direction = cfg.reals("sampling", "direction");
  const std::vector<double> s_list = cfg.reals("sampling", "s_list");
  const std::vector<double> eps_list = cfg.reals("sampling", "eps_list");
  RatioOptions ro;
  ro.point_grid = positive_int(cfg, "sampling", "point_grid", 16);
  ro.dir_grid = positive_int(cfg, "sampling", "dir_grid", 32);
  ro.r_max = cfg.real_or("sampling", "r_max", 0.5);
  const std::string apex = cfg.text_or("sampling", "apex", "future");
  const double tol_t_star = cfg.real_or("checks", "t_star_tol", 1e-3);
  const double tol_limit = cfg.real_or("checks", "limit_tol", 1e-3);
  const double tol_diag = cfg.real_or("checks", "diagonal_tol", 2e-3);
  const double tol_null = cfg.real_or("checks", "null_tol", 1e-12);
  const std::string csv = cfg.text_or("output", "csv", "slim-ratio.csv");
  const std::string limits_csv = cfg.text_or("output", "limits_csv", "slim-ratio-limits.csv");
  cfg.check_all_used();

  if (static_cast<int>(center.size()) != st.dimension()) {
    throw ConfigError(cfg.line("sampling", "point"), "point needs " + std::to_string(st.dimension()) + " coordinates");
  }
  if (static_cast<int>(direction.size()) != st.spatial_dimension()) {
    throw ConfigError(cfg.line("sampling", "direction"),
                      "direction needs " + std::to_string(st.spatial_dimension()) + " components");
  }
  require_decreasing(cfg, "s_list", s_list, 0.0, HUGE_VAL);
  require_decreasing(cfg, "eps_list", eps_list, 0.0, 1.0);
  if (apex != "future" && apex != "past") throw ConfigError(cfg.line("sampling", "apex"), "apex must be 'future' or 'past'");
  if (ro.point_grid < 16 || ro.dir_grid < 16) {
    throw ConfigError(cfg.line("sampling", ro.point_grid < 16 ? "point_grid" : "dir_grid"), "grids need at least 16 points");
  }
  ro.slim.apex = apex == "future" ? ApexSide::Future : ApexSide::Past;
  const Point p(Eigen::Map<const Vector>(center.data(), static_cast<Eigen::Index>(center.size())));
  const Vector dir = Eigen::Map<const Vector>(direction.data(), static_cast<Eigen::Index>(direction.size()));
  if (!st.in_domain(p)) throw ConfigError(cfg.line("sampling", "point"), "point lies outside the spacetime");

  RatioTable table;
  try {
    table = ratio_table(st, f, p, dir, s_list, eps_list, ro);
  } catch (const OutOfNeighborhoodError& e) {
    log << "FAIL " << e.what() << "\n";
    return 1;
  }
  std::ostringstream rows;
  write_ratio_csv(rows, table);
  emit(opt, csv, rows.str(), log);

  int failures = 0;
  for (const auto& r : table.rows) {
    if (!(std::abs(r.residual) <= tol_null)) {
      ++failures;
      log << "FAIL eps=" << format_double(r.eps) << " s=" << format_double(r.s)
          << " chart segments not eta_eps-null: " << format_double(r.residual) << "\n";
    }
  }
  std::string lim = row({"epsilon", "radius", "t_star_over_s", "t_star_target", "extrapolated", "last", "target", "pass"});
  for (const auto& l : table.limits) {
    double tsos = 0.0;
    for (const auto& r : table.rows) {
      if (r.eps == l.eps) tsos = r.t_star_over_s;  // rows are in decreasing s; keep the smallest
    }
    const double t_target = 1.0 / (2.0 * std::sqrt(1.0 - l.eps));
    const bool ok = std::abs(tsos - t_target) <= tol_t_star && std::abs(l.extrapolated - l.target) <= tol_limit;
    lim += row({format_double(l.eps), format_double(l.radius), format_double(tsos), format_double(t_target),
                format_double(l.extrapolated), format_double(l.last), format_double(l.target), yes_no(ok)});
    if (!ok) {
      ++failures;
      log << "FAIL eps=" << format_double(l.eps) << ": t*/s=" << format_double(tsos) << " (target "
          << format_double(t_target) << "), limit " << format_double(l.extrapolated) << " (target "
          << format_double(l.target) << ")\n";
    }
  }
  const bool diag_ok = std::abs(table.diagonal - table.c) <= tol_diag;
  lim += row({"0", "", "", "", format_double(table.diagonal), "", format_double(table.c), yes_no(diag_ok)});
  if (!diag_ok) {
    ++failures;
    log << "FAIL diagonal limit " << format_double(table.diagonal) << " vs C = " << format_double(table.c) << "\n";
  }
  emit(opt, limits_csv, lim, log);
  log << "slim-ratio: " << table.rows.size() << " rows on " << st.describe() << ", C = " << format_double(table.c)
      << ", diagonal " << format_double(table.diagonal) << ", " << failures << " failures\n";
  return failures == 0 ? 0 : 1;
}

int cosmo_checks(const Config& cfg, const RunOptions& opt, std::ostream& log) {
  const Spacetime st = spacetime_from_config(cfg);
  if (st.family() != Spacetime::Family::GRW || st.scale_factor().interval_lower() != 0.0) {
    throw ConfigError(cfg.line("spacetime", "scale"), "cosmo-checks needs a GRW spacetime with interval (0, b): scale = t or t^2");
  }
  const std::uint64_t seed = seed_of(cfg, opt);
  const int feet = positive_int(cfg, "sampling", "feet", 100);
  const int curve_samples = positive_int(cfg, "sampling", "curve_samples", 2000);
  const std::vector<double> probe_times = cfg.reals_or("sampling", "probe_times", {0.7});
  const double low = cfg.real_or("checks", "sandwich_low", 0.98);
  const std::string gen_csv = cfg.text_or("output", "generators_csv", "cosmo-generators.csv");
  const std::string bf_csv = cfg.text_or("output", "bruteforce_csv", "cosmo-bruteforce.csv");
  cfg.check_all_used();
  for (double t : probe_times) {
    if (!st.scale_factor().in_interval(t)) throw ConfigError(cfg.line("sampling", "probe_times"), "probe time outside the interval");
  }

  const SampleBox box = default_sample_box(st);
  Rng rng(seed);
  int failures = 0;
  std::string g = row({"foot", "unit_speed_error", "geodesic_residual", "tau_identity", "gradient_error",
                       "gradient_error_fd", "pass"});
  for (int i = 0; i < feet; ++i) {
    const Point q = random_point(box, rng);
    const Generator gen = generator_at(st, q);
    const auto& c = gen.checks;
    g += row({format_point(q), format_double(c.unit_speed_error), format_double(c.geodesic_residual),
              yes_no(c.tau_identity), format_double(c.gradient_error), format_double(c.gradient_error_fd),
              yes_no(c.pass())});
    if (!c.pass()) {
      ++failures;
      log << "FAIL generator at " << format_point(q) << "\n";
    }
  }
  emit(opt, gen_csv, g, log);

  std::string b = row({"p", "tau_g", "bruteforce", "ratio", "pass"});
  for (std::size_t i = 0; i < probe_times.size(); ++i) {
    Point p = random_point(box, rng);
    p.coords[0] = probe_times[i];
    const double exact = tau_g(st, p);
    const double bf = tau_g_bruteforce(st, p, curve_samples, Rng::mix(seed + i));
    const bool ok = bf <= exact && bf >= low * exact;
    b += row({format_point(p), format_double(exact), format_double(bf), format_double(bf / exact), yes_no(ok)});
    if (!ok) {
      ++failures;
      log << "FAIL brute-force sandwich at " << format_point(p) << ": " << format_double(bf) << " vs "
          << format_double(exact) << "\n";
    }
  }
  emit(opt, bf_csv, b, log);
  log << "cosmo-checks: " << feet << " generators, " << probe_times.size() << " brute-force probes on "
      << st.describe() << ", " << failures << " failures\n";
  return failures == 0 ? 0 : 1;
}

int bigbang(const Config& cfg, const RunOptions& opt, std::ostream& log) {
  const Spacetime st = spacetime_from_config(cfg);
  if (st.family() != Spacetime::Family::GRW || !st.spatial().is_torus()) {
    throw ConfigError(cfg.line("spacetime", "family"), "bigbang needs a GRW spacetime over a torus");
  }
  BigBangOptions bo;
  bo.seed = seed_of(cfg, opt);
  const std::vector<double> t_list = cfg.reals("sampling", "t_list");
  bo.points_per_level = positive_int(cfg, "sampling", "points_per_level", 32);
  bo.estimate = estimate_options(cfg, 1, 1);
  bo.tol = cfg.real_or("checks", "tol", 1e-3);
  bo.cauchy_tol = cfg.real_or("checks", "cauchy_tol", 1e-6);
  const std::string json = cfg.text_or("output", "json", "bigbang.json");
  const std::string csv = cfg.text_or("output", "csv", "bigbang-levels.csv");
  cfg.check_all_used();
  require_decreasing(cfg, "t_list", t_list, st.scale_factor().interval_lower(), st.scale_factor().interval_upper());

  const BigBangReport rep = bigbang_experiment(st, t_list, bo);
  emit(opt, json, bigbang_to_json(rep), log);
  emit(opt, csv, bigbang_levels_csv(rep), log);
  for (const auto& l : rep.levels) {
    log << "level t=" << format_double(l.t) << " diam_ht=" << format_double(l.diam_ht)
        << " max_pair_nulldist=" << format_double(l.max_pair_nulldist) << (l.pass ? "" : "  FAIL") << "\n";
  }
  for (const auto& h : rep.hausdorff_rows) {
    if (!h.pass) log << "FAIL hausdorff t=" << format_double(h.t) << " t'=" << format_double(h.t_prime) << "\n";
  }
  if (!rep.cauchy.pass) log << "FAIL cauchy certificate, violation " << format_double(rep.cauchy.max_violation) << "\n";
  if (!rep.monotone_max_pair) log << "FAIL max pairwise null distance is not decreasing\n";
  if (!rep.hypothesis_met) {
    log << "HypothesisNotMet: " << rep.hypothesis_message << "\n";
    return 1;
  }
  log << "bigbang: " << rep.levels.size() << " levels on " << st.describe() << (rep.pass ? ", all checks pass" : ", FAILED")
      << "\n";
  return rep.pass ? 0 : 1;
}

int property_suite(const Config& cfg, const RunOptions& opt, std::ostream& log) {
  const std::uint64_t seed = seed_of(cfg, opt);
  const int cases = positive_int(cfg, "sampling", "cases", 200);
  const std::string csv = cfg.text_or("output", "csv", "property-suite.csv");
  cfg.check_all_used();
  const auto results = run_property_suite(cases, seed);
  std::string out = row({"name", "cases", "failures", "worst", "pass"});
  int failures = 0;
  for (const auto& r : results) {
    out += row({r.name, std::to_string(r.cases), std::to_string(r.failures), format_double(r.worst), yes_no(r.pass())});
    log << (r.pass() ? "ok   " : "FAIL ") << r.name << ": " << r.cases << " cases, worst " << format_double(r.worst);
    if (!r.pass()) log << ", first failure " << r.first_failure;
    log << "\n";
    if (!r.pass()) ++failures;
  }
  emit(opt, csv, out, log);
  return failures == 0 ? 0 : 1;
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_list() {
  static const std::vector<ExperimentInfo> list = {
      {"minkowski-table", "zigzag estimates against the closed form max(|dt|, |dx|) on Minkowski space"},
      {"level-set-inequality", "null distance against C times the induced distance on a level set"},
      {"slim-ratio", "slim-cone zigzag lengths over s and epsilon with extrapolated limits"},
      {"cosmo-checks", "generator self-checks and the brute-force bracket on cosmological time"},
      {"bigbang", "collapse of level sets towards the initial singularity of a GRW torus"},
      {"property-suite", "randomized causal and metric property checks"},
  };
  return list;
}

int run_experiment(const Config& cfg, const RunOptions& options, std::ostream& log) {
  const std::string name = cfg.text("", "experiment");
  if (name == "minkowski-table") return minkowski_table(cfg, options, log);
  if (name == "level-set-inequality") return level_set_inequality(cfg, options, log);
  if (name == "slim-ratio") return slim_ratio(cfg, options, log);
  if (name == "cosmo-checks") return cosmo_checks(cfg, options, log);
  if (name == "bigbang") return bigbang(cfg, options, log);
  if (name == "property-suite") return property_suite(cfg, options, log);
  throw ConfigError(cfg.line("", "experiment"), "unknown experiment '" + name + "' (see --list)");
}

}  // namespace nulldist
