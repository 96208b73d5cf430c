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

#include "nulldist/timefns.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nulldist/errors.hpp"
#include "nulldist/kernels.hpp"
#include "nulldist/random.hpp"
#include "nulldist/sampling.hpp"

namespace nulldist {

namespace {

ScalarField profile_field(const ScalarExpr& phi) {
  return {[phi](const Point& p) { return phi.value(p.time()); },
          [phi](const Point& p) {
            Vector d = Vector::Zero(p.size());
            d[0] = phi.derivative(p.time());
            return d;
          }};
}

}  // namespace

TimeFunction TimeFunction::coordinate_t() {
  return TimeFunction(TimeFunctionKind::CoordinateT, "t", profile_field(ScalarExpr::linear()),
                      ScalarExpr::linear());
}

TimeFunction TimeFunction::phi_of_t(ScalarExpr phi) {
  return TimeFunction(TimeFunctionKind::PhiOfT, "phi(t)=" + phi.to_string(), profile_field(phi), phi);
}

TimeFunction TimeFunction::cosmological(const Spacetime& st) {
  if (st.family() != Spacetime::Family::GRW || st.scale_factor().interval_lower() != 0.0) {
    throw UnsupportedError("cosmological time has a closed form only on GRW spacetimes with I = (0, b)");
  }
  return TimeFunction(TimeFunctionKind::CosmologicalGRW, "tau_g",
                      profile_field(ScalarExpr::linear()), ScalarExpr::linear());
}

TimeFunction TimeFunction::custom(std::string name, std::function<double(const Point&)> value,
                                  std::function<Vector(const Point&)> differential) {
  if (!value) throw std::invalid_argument("custom time function needs an evaluator");
  return TimeFunction(TimeFunctionKind::Custom, std::move(name),
                      ScalarField{std::move(value), std::move(differential)}, std::nullopt);
}

std::optional<ScalarExpr> TimeFunction::profile() const { return phi_; }

double TimeFunction::coordinate_time_of_level(double level) const {
  if (!phi_) throw UnsupportedError("level sets of custom time functions have no closed form");
  return phi_->inverse(level);
}

MonotonicityReport monotonicity_probe(const Spacetime& st, const TimeFunction& tau, int trials,
                                      std::uint64_t seed, const MonotonicityOptions& options) {
  if (trials < 1) throw std::invalid_argument("monotonicity_probe needs at least one trial");
  MonotonicityReport report;
  report.trials = trials;
  report.min_rate = std::numeric_limits<double>::infinity();
  const SampleBox box = default_sample_box(st);
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(trial));
    Point x = random_point(box, rng);
    for (int k = 0; k < options.steps_per_curve; ++k) {
      const Vector v = random_future_timelike(st, x, options.margin, rng);
      Point next(Vector(x.coords + options.step * v));
      if (!st.in_domain(next)) break;
      const double rate = (tau(next) - tau(x)) / options.step;
      ++report.increments;
      if (rate < report.min_rate) report.min_rate = rate;
      if (rate <= 0.0 && !report.violation) {
        report.violation = true;
        report.violation_at = x;
      }
      x = std::move(next);
    }
  }
  return report;
}

AntiLipschitzEstimate anti_lipschitz_constant(const Spacetime& st, const TimeFunction& f,
                                              std::span<const Point> region, int grid) {
  if (grid < 8) throw std::invalid_argument("anti_lipschitz_constant needs grid >= 8");
  if (region.empty()) throw std::invalid_argument("anti_lipschitz_constant needs a nonempty region");
  const auto& kern = kernels::active();
  const auto dim = static_cast<std::size_t>(st.dimension());
  AntiLipschitzEstimate best;
  best.constant = std::numeric_limits<double>::infinity();
  std::vector<double> soa;
  std::vector<double> values;
  for (std::size_t i = 0; i < region.size(); ++i) {
    const Point& p = region[i];
    const TangentVector grad = gradient(st, f.field(), p);
    const Vector w = st.metric_at(p) * grad.components;  // g(grad f, .)
    const auto dirs = future_cone_directions(st, p, grid);
    const std::size_t count = dirs.size();
    soa.assign(dim * count, 0.0);
    values.assign(count, 0.0);
    for (std::size_t k = 0; k < count; ++k) {
      for (std::size_t a = 0; a < dim; ++a) soa[a * count + k] = dirs[k][static_cast<Eigen::Index>(a)];
    }
    kern.linear_forms(w.data(), dim, soa.data(), count, values.data());
    for (std::size_t k = 0; k < count; ++k) {
      if (values[k] < best.constant) {
        best.constant = values[k];
        best.point_index = i;
        best.direction = dirs[k];
      }
    }
  }
  return best;
}

}  // namespace nulldist
