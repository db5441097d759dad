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

// Subcommand implementations behind the goto-bench executable.

#ifndef GOTO_BENCH_TOOLS_COMMANDS_HPP_
#define GOTO_BENCH_TOOLS_COMMANDS_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "goto_bench/bench.hpp"
#include "goto_bench/config.hpp"

namespace goto_bench::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

// Bad flags, bad config, or a request that cannot be satisfied as given.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flag value if set, else GOTO_BENCH_THREADS if set, else 0 (auto). A positive
// GOTO_BENCH_THREADS also caps an explicit flag.
int effective_threads(std::optional<int> flag);

RunConfig load_config_or_default(const std::string& path);

struct TrainOptions {
  std::string config_path;
  std::string mode = "goto";
  std::optional<std::uint64_t> seed;
  std::optional<int> iterations;
  std::optional<int> population;
  std::optional<int> threads;
  std::string out_dir;  // empty: [Run] output_dir
};

struct TrainOutputs {
  std::string policy_path;
  std::string log_path;
};

TrainOutputs cmd_train(const TrainOptions& options);

struct EvalOptions {
  std::string config_path;
  std::vector<std::string> controllers{"fsm", "agility2", "agility3"};
  std::vector<std::string> policy_paths;
  std::vector<double> grid_distances;  // empty: config grid
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::vector<std::string> trace_commands{"0.4,3.14159265358979,0",
                                          "1,0.785398163397448,1.5707963267949"};
  std::string out_dir;
};

// Writes report.json, table.csv, difficulty.csv, and for every controller and
// trace command trace_<controller>_<command>.{svg,csv}. Returns the written
// paths.
std::vector<std::string> cmd_eval(const EvalOptions& options);

struct TraceOptions {
  std::string config_path;
  std::string controller = "agility2";
  std::string command;  // "r,phi,theta"
  std::string policy_path;
  std::optional<std::uint64_t> seed;
  double perturb_scale = 0.0;  // m
  std::string out_dir;
};

std::vector<std::string> cmd_trace(const TraceOptions& options);

}  // namespace goto_bench::cli

#endif  // GOTO_BENCH_TOOLS_COMMANDS_HPP_
