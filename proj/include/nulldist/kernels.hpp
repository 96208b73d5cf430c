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

#include <cstddef>
#include <string_view>

namespace nulldist::kernels {

// Data-parallel inner loops shared by the metric-space and cone-sampling code.
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant; active() picks one at runtime. Vector batches are stored
// structure-of-arrays: component d of vector k lives at v[d * count + k].
struct KernelTable {
  std::string_view name;

  double (*max_value)(const double* x, std::size_t n);
  double (*min_value)(const double* x, std::size_t n);

  // max over rows of (min over columns) of a row-major rows x cols matrix.
  double (*directed_hausdorff)(const double* m, std::size_t rows, std::size_t cols);

  // out[k] = v_k^T G v_k for a dense row-major dim x dim matrix G.
  void (*quadratic_forms)(const double* g, std::size_t dim, const double* v, std::size_t count,
                          double* out);

  // out[k] = w . v_k.
  void (*linear_forms)(const double* w, std::size_t dim, const double* v, std::size_t count,
                       double* out);

  // sum_i |x[i+1] - x[i]|.
  double (*abs_diff_sum)(const double* x, std::size_t n);
};

const KernelTable& scalar();

/// nullptr when the build or the CPU lacks AVX2/FMA.
const KernelTable* avx2();

/// AVX2 when available unless NULLDIST_KERNELS=scalar is set in the environment.
const KernelTable& active();

}  // namespace nulldist::kernels
