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

#include "nulldist/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nulldist {

namespace {

// Positive root of x^(d+1) = x + 1.
double generalized_golden(int d) {
  double x = 2.0;
  for (int it = 0; it < 64; ++it) x = std::pow(1.0 + x, 1.0 / (d + 1));
  return x;
}

std::vector<double> kronecker_alphas(int d) {
  const double g = generalized_golden(d);
  std::vector<double> alpha(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) alpha[static_cast<std::size_t>(i)] = std::fmod(std::pow(1.0 / g, i + 1), 1.0);
  return alpha;
}

double frac(double x) { return x - std::floor(x); }

}  // namespace

std::vector<Vector> sphere_directions(int dim, int count) {
  if (dim < 1 || count < 1) throw std::invalid_argument("sphere_directions: bad arguments");
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  if (dim == 1) {
    out.push_back(Vector::Constant(1, 1.0));
    out.push_back(Vector::Constant(1, -1.0));
    return out;
  }
  if (dim == 2) {
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * std::numbers::pi * (i + 0.5) / count;
      Vector v(2);
      v << std::cos(a), std::sin(a);
      out.push_back(v);
    }
    return out;
  }
  if (dim == 3) {
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden_angle * i;
      Vector v(3);
      v << z, r * std::cos(phi), r * std::sin(phi);
      out.push_back(v);
    }
    return out;
  }
  const int pairs = (dim + 1) / 2;
  const auto alpha = kronecker_alphas(2 * pairs);
  for (int i = 0; i < count; ++i) {
    Vector v(dim);
    for (int k = 0; k < pairs; ++k) {
      const double u1 = std::max(1e-300, frac(0.5 + (i + 1) * alpha[static_cast<std::size_t>(2 * k)]));
      const double u2 = frac(0.5 + (i + 1) * alpha[static_cast<std::size_t>(2 * k + 1)]);
      const double r = std::sqrt(-2.0 * std::log(u1));
      v[2 * k] = r * std::cos(2.0 * std::numbers::pi * u2);
      if (2 * k + 1 < dim) v[2 * k + 1] = r * std::sin(2.0 * std::numbers::pi * u2);
    }
    const double n = v.norm();
    if (n > 0.0) out.push_back(v / n);
  }
  return out;
}

std::vector<Vector> torus_lattice(const std::vector<double>& sides, int count, std::uint64_t seed) {
  const int d = static_cast<int>(sides.size());
  const auto alpha = kronecker_alphas(d);
  Rng rng(seed);
  std::vector<double> offset(static_cast<std::size_t>(d));
  for (auto& o : offset) o = rng.uniform();
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Vector x(d);
    for (int i = 0; i < d; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      x[i] = sides[ui] * frac(offset[ui] + k * alpha[ui]);
    }
    out.push_back(x);
  }
  return out;
}

Point random_point(const SampleBox& box, Rng& rng) {
  Vector c(box.lower.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = rng.uniform(box.lower[i], box.upper[i]);
  return Point(c);
}

std::vector<Vector> future_cone_directions(const Spacetime& st, const Point& p, int grid) {
  const int dim = st.dimension();
  const Matrix g = st.metric_at(p);
  const Vector theta = st.orientation_at(p).components;
  std::vector<Vector> out;
  out.push_back(theta / theta.norm());

  // Future null vector with the given spatial part: solve
  // g00 a^2 + 2 a (g0s . w) + w^T gss w = 0 for the root with g(k, theta) < 0.
  auto null_lift = [&](const Vector& w) -> std::optional<Vector> {
    const double a2 = g(0, 0);
    const double a1 = 2.0 * g.row(0).tail(dim - 1).dot(w);
    const double a0 = w.dot(g.bottomRightCorner(dim - 1, dim - 1) * w);
    const double disc = a1 * a1 - 4.0 * a2 * a0;
    if (disc < 0.0 || a2 == 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    for (double a : {(-a1 + sq) / (2.0 * a2), (-a1 - sq) / (2.0 * a2)}) {
      Vector k(dim);
      k[0] = a;
      k.tail(dim - 1) = w;
      if (k.dot(g * theta) < 0.0) return k / k.norm();
    }
    return std::nullopt;
  };

  for (int level = grid; level >= 8; level /= 2) {
    for (const Vector& v : sphere_directions(dim, level)) {
      const CausalClass c = classify(g, v, theta);
      if (c.causal() && c.direction == TimeDirection::Future) out.push_back(v);
      const Vector w = v.tail(dim - 1);
      if (w.norm() > 1e-12) {
        if (auto k = null_lift(w)) out.push_back(*k);
      }
    }
  }
  return out;
}

Vector random_future_timelike(const Spacetime& st, const Point& p, double margin, Rng& rng) {
  const int dim = st.dimension();
  const Matrix g = st.metric_at(p);
  const Vector theta = st.orientation_at(p).components;
  const double theta_norm = std::sqrt(-theta.dot(g * theta));
  const Vector unit_time = theta / theta_norm;
  const int n = dim - 1;
  // Direction in the g-orthogonal complement of the time axis.
  Vector w;
  double wn = 0.0;
  do {
    w = Vector(dim);
    for (int i = 0; i < dim; ++i) w[i] = rng.normal();
    w += w.dot(g * unit_time) * unit_time;
    wn = std::sqrt(std::max(0.0, w.dot(g * w)));
  } while (wn < 1e-12);
  const double radius = (1.0 - margin) * std::pow(rng.uniform(), 1.0 / n);
  return unit_time + radius * w / wn;
}

}  // namespace nulldist
