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

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nulldist/config.hpp"
#include "nulldist/errors.hpp"
#include "nulldist/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Null distance experiments"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  bool list = false;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  app.add_flag("--list", list, "List the available experiments");
  auto* seed_opt = app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--out", out_dir, "Directory for artifacts");

  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  std::string config_path;
  run->add_option("config", config_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list) {
    for (const auto& e : nulldist::experiment_list()) std::cout << e.name << "\t" << e.summary << "\n";
    return 0;
  }
  if (!run->parsed()) {
    std::cerr << app.help();
    return 2;
  }

  nulldist::RunOptions options;
  if (seed_opt->count() > 0) options.seed = seed;
  options.out_dir = out_dir;
  try {
    const nulldist::Config cfg = nulldist::Config::load(config_path);
    return nulldist::run_experiment(cfg, options, std::cout);
  } catch (const nulldist::ConfigError& e) {
    std::cerr << config_path << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
