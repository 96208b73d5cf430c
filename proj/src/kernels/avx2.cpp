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

// Compiled with -mavx2 -mfma; only reached through the dispatcher after a
// CPUID check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "nulldist/kernels.hpp"

namespace nulldist::kernels {

namespace {

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return std::max(_mm_cvtsd_f64(m), _mm_cvtsd_f64(_mm_unpackhi_pd(m, m)));
}

inline double hmin(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_min_pd(lo, hi);
  return std::min(_mm_cvtsd_f64(m), _mm_cvtsd_f64(_mm_unpackhi_pd(m, m)));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

double max_value(const double* x, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= 4) {
    __m256d acc = _mm256_set1_pd(m);
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + i));
    m = hmax(acc);
  }
  for (; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

double min_value(const double* x, std::size_t n) {
  double m = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= 4) {
    __m256d acc = _mm256_set1_pd(m);
    for (; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(x + i));
    m = hmin(acc);
  }
  for (; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

double directed_hausdorff(const double* m, std::size_t rows, std::size_t cols) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows; ++i) worst = std::max(worst, min_value(m + i * cols, cols));
  return worst;
}

// Lanes run over the batch index k; G entries are broadcast.
void quadratic_forms(const double* g, std::size_t dim, const double* v, std::size_t count,
                     double* out) {
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t a = 0; a < dim; ++a) {
      __m256d row = _mm256_setzero_pd();
      for (std::size_t b = 0; b < dim; ++b) {
        row = _mm256_fmadd_pd(_mm256_set1_pd(g[a * dim + b]), _mm256_loadu_pd(v + b * count + k), row);
      }
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(v + a * count + k), row, acc);
    }
    _mm256_storeu_pd(out + k, acc);
  }
  for (; k < count; ++k) {
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
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t a = 0; a < dim; ++a) {
      acc = _mm256_fmadd_pd(_mm256_set1_pd(w[a]), _mm256_loadu_pd(v + a * count + k), acc);
    }
    _mm256_storeu_pd(out + k, acc);
  }
  for (; k < count; ++k) {
    double acc = 0.0;
    for (std::size_t a = 0; a < dim; ++a) acc += w[a] * v[a * count + k];
    out[k] = acc;
  }
}

double abs_diff_sum(const double* x, std::size_t n) {
  if (n < 2) return 0.0;
  const std::size_t m = n - 1;
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i + 1), _mm256_loadu_pd(x + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, d));
  }
  double s = hsum(acc);
  for (; i < m; ++i) s += std::abs(x[i + 1] - x[i]);
  return s;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2",          max_value,    min_value, directed_hausdorff,
                                 quadratic_forms, linear_forms, abs_diff_sum};
  return table;
}

}  // namespace nulldist::kernels
