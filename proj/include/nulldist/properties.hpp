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
#include <functional>
#include <string>
#include <vector>

namespace nulldist {

/// Outcome of one seeded randomized property check.
struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  /// Largest observed violation measure (<= 0 means every case held with room to spare).
  double worst = 0.0;
  std::string first_failure;
  bool pass() const { return cases > 0 && failures == 0; }
};

using PropertyCheck = std::function<PropertyResult(int cases, std::uint64_t seed)>;

struct NamedProperty {
  std::string name;
  std::string description;
  PropertyCheck run;
};

/// Every registered property, in a fixed order.
const std::vector<NamedProperty>& property_registry();

/// Runs every registered property with `cases` cases each.
std::vector<PropertyResult> run_property_suite(int cases, std::uint64_t seed);

PropertyResult check_semi_metric(int cases, std::uint64_t seed);
PropertyResult check_lower_bound_dominance(int cases, std::uint64_t seed);
PropertyResult check_causality_exactness(int cases, std::uint64_t seed);
PropertyResult check_diamond_bound(int cases, std::uint64_t seed);
PropertyResult check_reverse_cauchy_schwarz(int cases, std::uint64_t seed);
PropertyResult check_gradient_classification(int cases, std::uint64_t seed);
PropertyResult check_null_length_integral(int cases, std::uint64_t seed);
PropertyResult check_diam_lipschitz(int cases, std::uint64_t seed);
PropertyResult check_hausdorff_semi_metric(int cases, std::uint64_t seed);

}  // namespace nulldist
