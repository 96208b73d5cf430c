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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "nulldist/geometry.hpp"

namespace nulldist {

/// Shortest round-trip text with at most 17 significant digits; locale independent.
std::string format_double(double v);

/// "[c0,c1,...]" using format_double.
std::string format_point(const Point& p);

/// RFC 4180 field quoting: wraps in double quotes when needed, doubling inner quotes.
std::string csv_field(std::string_view s);

std::string csv_row(std::span<const std::string> fields);

/// Writes `contents` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace nulldist
