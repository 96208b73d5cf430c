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
#include <vector>

#include "nulldist/geometry.hpp"
#include "nulldist/random.hpp"

namespace nulldist {

/// Deterministic, roughly uniform unit vectors in R^dim: equally spaced
/// angles for dim 2, the Fibonacci spiral for dim 3, and a Kronecker
/// sequence pushed through Box-Muller for higher dimensions.
std::vector<Vector> sphere_directions(int dim, int count);

/// Low-discrepancy lattice on the box prod [0, sides_i), shifted by a
/// seed-derived offset. Generalized golden-ratio (Kronecker) sequence.
std::vector<Vector> torus_lattice(const std::vector<double>& sides, int count, std::uint64_t seed);

Point random_point(const SampleBox& box, Rng& rng);

/// Future-directed causal directions at p, unit in the coordinate Euclidean
/// metric. Built from sphere_directions(grid), sphere_directions(grid / 2),
/// ... down to size 8, so the set for 2*grid contains the set for grid. Each
/// sphere direction contributes itself when it is future causal and its
/// future null projection (same spatial part) otherwise; the normalized
/// orientation vector is always included.
std::vector<Vector> future_cone_directions(const Spacetime& st, const Point& p, int grid);

/// Random future-directed timelike vector at p with g-orthonormal-frame speed
/// below 1 - margin, i.e. uniformly inside the cone with a strict margin.
/// Normalized so the orientation component has g-length 1.
Vector random_future_timelike(const Spacetime& st, const Point& p, double margin, Rng& rng);

}  // namespace nulldist
