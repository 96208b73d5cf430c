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

#include <algorithm>
#include <cmath>
#include <limits>

#include "nulldist/kernels.hpp"

namespace nulldist::kernels {

namespace {

double max_value(const double* x, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

double min_value(const double* x, std::size_t n) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

double directed_hausdorff(const double* m, std::size_t rows, std::size_t cols) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows; ++i) worst = std::max(worst, min_value(m + i * cols, cols));
  return worst;
}

void quadratic_forms(const double* g, std::size_t dim, const double* v, std::size_t count,
                     double* out) {
  for (std::size_t k = 0; k < count; ++k) {
    double acc = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      double row = 0.0;
      for (std::size_t b = 0; b < dim; ++b) row += g[a * dim + b] * v[b * count + k];
      acc += v[a * count + k] * row;
    }
    out[k] = acc;
  }
}

void linear_forms(const double* w, std::size_t dim, const double* v, std::size_t count,
                  double* out) {
  for (std::size_t k = 0; k < count; ++k) {
    double acc = 0.0;
    for (std::size_t a = 0; a < dim; ++a) acc += w[a] * v[a * count + k];
    out[k] = acc;
  }
}

double abs_diff_sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) s += std::abs(x[i + 1] - x[i]);
  return s;
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table{"scalar",          max_value,    min_value, directed_hausdorff,
                                 quadratic_forms,   linear_forms, abs_diff_sum};
  return table;
}

}  // namespace nulldist::kernels
