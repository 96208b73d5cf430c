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

#include "nulldist/metricspace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "nulldist/csv.hpp"
#include "nulldist/kernels.hpp"

namespace nulldist {

FinitePointCloud::FinitePointCloud(std::vector<std::string> labels, Matrix dist, double tol)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
  const auto n = static_cast<Eigen::Index>(labels_.size());
  if (dist_.rows() != n || dist_.cols() != n) {
    throw std::invalid_argument("distance matrix does not match the label count");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (dist_(i, i) != 0.0) throw std::invalid_argument("nonzero diagonal at " + labels_[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = dist_(i, j);
      if (!std::isfinite(d) || d < 0.0) throw std::invalid_argument("distances must be finite and nonnegative");
      if (d != dist_(j, i)) throw std::invalid_argument("distance matrix is not symmetric");
    }
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (dist_(i, j) > dist_(i, k) + dist_(k, j) + tol) {
          throw std::invalid_argument("triangle inequality fails on (" + labels_[static_cast<std::size_t>(i)] + ", " +
                                      labels_[static_cast<std::size_t>(k)] + ", " +
                                      labels_[static_cast<std::size_t>(j)] + ")");
        }
      }
    }
  }
}

FinitePointCloud FinitePointCloud::from_upper_estimates(std::vector<std::string> labels, const Matrix& upper) {
  Matrix d = upper.cwiseMin(upper.transpose());
  const Eigen::Index n = d.rows();
  d.diagonal().setZero();
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
      }
    }
  }
  // Closure can leave last-bit asymmetry; keep the smaller value.
  d = d.cwiseMin(d.transpose()).eval();
  FinitePointCloud cloud(std::move(labels), std::move(d), 1e-12);
  cloud.caveat_ = true;
  return cloud;
}

std::vector<double> FinitePointCloud::block(std::span<const std::size_t> rows,
                                            std::span<const std::size_t> cols) const {
  std::vector<double> out;
  out.reserve(rows.size() * cols.size());
  for (std::size_t i : rows) {
    for (std::size_t j : cols) out.push_back((*this)(i, j));
  }
  return out;
}

Subset FinitePointCloud::all() const {
  Subset s(size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
  return s;
}

double diameter(const FinitePointCloud& cloud, std::span<const std::size_t> subset) {
  if (subset.empty()) throw std::invalid_argument("diameter of an empty set");
  const std::vector<double> m = cloud.block(subset, subset);
  return kernels::active().max_value(m.data(), m.size());
}

double diameter(const FinitePointCloud& cloud) {
  const Subset s = cloud.all();
  return diameter(cloud, s);
}

double hausdorff(const FinitePointCloud& cloud, std::span<const std::size_t> a,
                 std::span<const std::size_t> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("Hausdorff distance needs nonempty sets");
  const auto& k = kernels::active();
  const std::vector<double> ab = cloud.block(a, b);
  const std::vector<double> ba = cloud.block(b, a);
  return std::max(k.directed_hausdorff(ab.data(), a.size(), b.size()),
                  k.directed_hausdorff(ba.data(), b.size(), a.size()));
}

DiamLipschitzReport diam_lipschitz_check(const FinitePointCloud& cloud,
                                         std::span<const std::pair<Subset, Subset>> pairs, double tol) {
  DiamLipschitzReport rep;
  rep.max_excess = -std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : pairs) {
    DiamLipschitzRow row;
    row.diam_a = diameter(cloud, a);
    row.diam_b = diameter(cloud, b);
    row.hausdorff = hausdorff(cloud, a, b);
    const double excess = std::abs(row.diam_a - row.diam_b) - 2.0 * row.hausdorff;
    row.pass = excess <= tol;
    rep.pass = rep.pass && row.pass;
    rep.max_excess = std::max(rep.max_excess, excess);
    rep.rows.push_back(row);
  }
  if (rep.rows.empty()) rep.max_excess = 0.0;
  return rep;
}

std::string to_csv(const FinitePointCloud& cloud) {
  std::string out;
  std::vector<std::string> header{"label"};
  header.insert(header.end(), cloud.labels().begin(), cloud.labels().end());
  out += csv_row(header);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    std::vector<std::string> row{cloud.labels()[i]};
    for (std::size_t j = 0; j < cloud.size(); ++j) row.push_back(format_double(cloud(i, j)));
    out += csv_row(row);
  }
  return out;
}

namespace {

// Splits one CSV record; handles quoted fields without embedded newlines.
std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

FinitePointCloud cloud_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
  auto header = split_record(line);
  if (header.empty() || header[0] != "label") throw std::invalid_argument("CSV header must start with 'label'");
  std::vector<std::string> labels(header.begin() + 1, header.end());
  const auto n = static_cast<Eigen::Index>(labels.size());
  Matrix d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw std::invalid_argument("CSV has fewer rows than labels");
    auto f = split_record(line);
    if (static_cast<Eigen::Index>(f.size()) != n + 1 || f[0] != labels[static_cast<std::size_t>(i)]) {
      throw std::invalid_argument("CSV row " + std::to_string(i + 2) + " is malformed");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::string& s = f[static_cast<std::size_t>(j + 1)];
      double v = 0.0;
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("CSV row " + std::to_string(i + 2) + ": bad number '" + s + "'");
      }
      d(i, j) = v;
    }
  }
  return FinitePointCloud(std::move(labels), std::move(d));
}

}  // namespace nulldist
