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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nulldist/geometry.hpp"

namespace nulldist {

using Subset = std::vector<std::size_t>;

/// A finite metric space given by a labelled distance matrix.
class FinitePointCloud {
 public:
  /// Validates symmetry, nonnegativity, zero diagonal and the triangle
  /// inequality (absolute tolerance `tol`). Throws std::invalid_argument.
  FinitePointCloud(std::vector<std::string> labels, Matrix dist, double tol = 1e-9);

  /// Accepts a matrix of upper estimates: takes min(D, D^T), zeroes the
  /// diagonal and applies shortest-path closure so the triangle inequality
  /// holds. The result stays an upper bound on the true distances, which is
  /// recorded by upper_bound_caveat().
  static FinitePointCloud from_upper_estimates(std::vector<std::string> labels, const Matrix& upper);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Matrix& dist() const { return dist_; }
  double operator()(std::size_t i, std::size_t j) const { return dist_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
  bool upper_bound_caveat() const { return caveat_; }

  /// Row-major |rows| x |cols| block of the distance matrix.
  std::vector<double> block(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

  Subset all() const;

 private:
  std::vector<std::string> labels_;
  Matrix dist_;
  bool caveat_ = false;
};

/// Largest pairwise distance. Throws std::invalid_argument on an empty subset.
double diameter(const FinitePointCloud& cloud, std::span<const std::size_t> subset);
double diameter(const FinitePointCloud& cloud);

/// max(sup_a dist(a, B), sup_b dist(b, A)). Throws std::invalid_argument on empty input.
double hausdorff(const FinitePointCloud& cloud, std::span<const std::size_t> a,
                 std::span<const std::size_t> b);

struct DiamLipschitzRow {
  double diam_a = 0.0;
  double diam_b = 0.0;
  double hausdorff = 0.0;
  bool pass = false;
};

struct DiamLipschitzReport {
  std::vector<DiamLipschitzRow> rows;
  /// Largest |diam A - diam B| - 2 d_H(A, B).
  double max_excess = 0.0;
  bool pass = true;
};

/// Checks |diam A - diam B| <= 2 d_H(A, B) + tol for every pair.
DiamLipschitzReport diam_lipschitz_check(const FinitePointCloud& cloud,
                                         std::span<const std::pair<Subset, Subset>> pairs,
                                         double tol = 1e-12);

/// CSV matrix: a header row "label,<l_1>,...,<l_n>" then one row per label.
std::string to_csv(const FinitePointCloud& cloud);
FinitePointCloud cloud_from_csv(std::string_view text);

}  // namespace nulldist
