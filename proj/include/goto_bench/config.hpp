/*
 * Copyright 2026 The GoTo Bench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Run configuration: a TOML-subset file with one section per component
// config. Every key is optional; unknown sections or keys are errors.
//
//   [StepperConfig]   max_step_len, max_step_yaw, stance_width, ...
//   [RewardConfig]    w_c, a_p, a_o, w_p, w_o, k_action, k_energy
//   [CemConfig]       population, elites, iterations, init_std, ...
//   [CommandGrid]     distances, approach_angles, headings, trials_per_command,
//                     perturb_scale
//   [Constellation]   radius, count
//   [Run]             seed, output_dir
//
// Values are numbers, double-quoted strings, or flat arrays of numbers.

#ifndef GOTO_BENCH_CONFIG_HPP_
#define GOTO_BENCH_CONFIG_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

#include "goto_bench/bench.hpp"
#include "goto_bench/reward.hpp"
#include "goto_bench/stepper.hpp"
#include "goto_bench/trainer.hpp"

namespace goto_bench {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  StepperConfig stepper;
  RewardConfig reward;
  CemConfig cem;
  CommandGrid grid;
  double constellation_radius = 1.0;
  int constellation_count = 8;
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  // Throws ConfigError naming the first violated invariant.
  void validate() const;

  TrainingSetup training_setup() const;
  BenchSetup bench_setup() const;
};

// `source` names the input in error messages.
RunConfig parse_run_config(const std::string& text,
                           const std::string& source = "<config>");
RunConfig load_run_config(const std::string& path);

// Serialises every key; parse_run_config(to_toml(c)) reproduces c.
std::string to_toml(const RunConfig& config);

}  // namespace goto_bench

#endif  // GOTO_BENCH_CONFIG_HPP_
