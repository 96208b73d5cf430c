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
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nulldist/config.hpp"

namespace nulldist {

struct ExperimentInfo {
  std::string name;
  std::string summary;
};

/// The experiments `run` understands, in a fixed order.
const std::vector<ExperimentInfo>& experiment_list();

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = ".";
};

/// Runs the experiment named by the config's `experiment` key, writes its
/// artifacts and a summary to `log`. Returns 0 when every check passes and 1
/// otherwise. Config problems throw ConfigError.
int run_experiment(const Config& cfg, const RunOptions& options, std::ostream& log);

}  // namespace nulldist
