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

#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#include "goto_bench/policy.hpp"
#include "goto_bench/svg.hpp"
#include "goto_bench/trainer.hpp"

namespace goto_bench::cli {

namespace {

namespace fs = std::filesystem;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

fs::path prepare_dir(const std::string& requested, const RunConfig& config) {
  fs::path dir = requested.empty() ? fs::path(config.output_dir) : fs::path(requested);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

ControllerId controller_for(PolicyMode mode) {
  return mode == PolicyMode::kGoTo ? ControllerId::kGoTo : ControllerId::kHier;
}

ControllerId parse_controller_or_usage(const std::string& name) {
  try {
    return parse_controller_id(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Command parse_command_or_usage(const std::string& text) {
  try {
    return parse_command(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

PolicyMap load_policies(const std::vector<std::string>& paths) {
  PolicyMap policies;
  for (const auto& path : paths) {
    PolicyParams p;
    try {
      p = load_policy(path);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    const ControllerId id = controller_for(p.mode);
    if (policies.count(id) > 0) {
      throw UsageError("two policies given for controller " + to_string(id));
    }
    policies.emplace(id, std::move(p));
  }
  return policies;
}

void require_policy(ControllerId id, const PolicyMap& policies) {
  if (is_learned(id) && policies.count(id) == 0) {
    throw UsageError("controller " + to_string(id) + " needs --policy with a " +
                     std::string(id == ControllerId::kGoTo ? "goto" : "hier") +
                     "-mode policy file");
  }
}

std::vector<std::string> write_trace(const fs::path& dir, const std::string& stem,
                                     const TrialRun& run) {
  const fs::path svg = dir / (stem + ".svg");
  const fs::path csv = dir / (stem + ".csv");
  write_text(svg, render_traces(make_trace(stem, run)));
  write_text(csv, trace_csv(run.final_state));
  return {svg.string(), csv.string()};
}

}  // namespace

int effective_threads(std::optional<int> flag) {
  int env = 0;
  if (const char* raw = std::getenv("GOTO_BENCH_THREADS"); raw != nullptr && *raw != '\0') {
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (*end != '\0' || v < 0) {
      throw UsageError(std::string("GOTO_BENCH_THREADS must be a non-negative integer, got '") +
                       raw + "'");
    }
    env = static_cast<int>(v);
  }
  if (flag.has_value()) {
    if (*flag < 0) throw UsageError("--threads must be >= 0");
    if (env > 0 && (*flag == 0 || *flag > env)) return env;
    return *flag;
  }
  return env;
}

RunConfig load_config_or_default(const std::string& path) {
  try {
    return path.empty() ? RunConfig{} : load_run_config(path);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
}

TrainOutputs cmd_train(const TrainOptions& options) {
  RunConfig config = load_config_or_default(options.config_path);
  PolicyMode mode;
  try {
    mode = parse_policy_mode(options.mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (options.seed) config.seed = *options.seed;
  if (options.iterations) config.cem.iterations = *options.iterations;
  if (options.population) config.cem.population = *options.population;
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  config.cem.seed = config.seed;
  config.cem.threads = effective_threads(options.threads);

  const TrainingSetup setup = config.training_setup();
  std::vector<CemLogRow> log;
  const PolicyParams policy = cem_train(config.cem, mode, setup, &log);

  const fs::path dir = prepare_dir(options.out_dir, config);
  TrainOutputs out;
  out.policy_path = (dir / ("policy_" + to_string(mode) + ".bin")).string();
  out.log_path = (dir / "train_log.csv").string();
  save_policy(policy, action_scale(mode, setup.stepper, setup.limits), out.policy_path);
  write_text(out.log_path, training_log_csv(log));
  return out;
}

std::vector<std::string> cmd_eval(const EvalOptions& options) {
  RunConfig config = load_config_or_default(options.config_path);
  if (options.seed) config.seed = *options.seed;
  if (!options.grid_distances.empty()) config.grid.distances = options.grid_distances;
  if (options.trials) config.grid.trials_per_command = *options.trials;
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }

  std::vector<ControllerId> controllers;
  for (const auto& name : options.controllers) {
    const ControllerId id = parse_controller_or_usage(name);
    for (ControllerId seen : controllers) {
      if (seen == id) throw UsageError("controller listed twice: " + name);
    }
    controllers.push_back(id);
  }
  if (controllers.empty()) throw UsageError("--controllers is empty");
  bool has_baseline = false;
  for (ControllerId id : controllers) has_baseline |= id == ControllerId::kAgility2;
  if (!has_baseline) {
    throw UsageError("--controllers must include agility2, the normalization baseline");
  }
  const PolicyMap policies = load_policies(options.policy_paths);
  for (ControllerId id : controllers) require_policy(id, policies);
  std::vector<Command> traces;
  for (const auto& text : options.trace_commands) traces.push_back(parse_command_or_usage(text));

  const int threads = effective_threads(options.threads);
  const BenchSetup setup = config.bench_setup();
  const std::vector<TrialRecord> records =
      run_grid(controllers, policies, config.grid, config.seed, setup, threads);
  const BenchReport report = aggregate(records);

  const fs::path dir = prepare_dir(options.out_dir, config);
  std::vector<std::string> written;
  const auto emit = [&](const std::string& name, const std::string& text) {
    write_text(dir / name, text);
    written.push_back((dir / name).string());
  };
  emit("report.json", report_json(report));
  emit("table.csv", table_csv(report));
  emit("difficulty.csv", difficulty_csv(report.curves));
  for (std::size_t i = 0; i < traces.size(); ++i) {
    for (ControllerId id : controllers) {
      const auto it = policies.find(id);
      const TrialRun run =
          run_trial(id, it == policies.end() ? nullptr : &it->second, traces[i],
                    trial_seed(config.seed, -1 - static_cast<int>(i), 0), 0.0, setup);
      for (auto& path :
           write_trace(dir, "trace_" + to_string(id) + "_" + traces[i].label(), run)) {
        written.push_back(std::move(path));
      }
    }
  }
  return written;
}

std::vector<std::string> cmd_trace(const TraceOptions& options) {
  RunConfig config = load_config_or_default(options.config_path);
  if (options.seed) config.seed = *options.seed;
  const ControllerId id = parse_controller_or_usage(options.controller);
  const Command command = parse_command_or_usage(options.command);
  if (!(options.perturb_scale >= 0.0)) throw UsageError("--perturb must be >= 0");
  std::vector<std::string> paths;
  if (!options.policy_path.empty()) paths.push_back(options.policy_path);
  const PolicyMap policies = load_policies(paths);
  require_policy(id, policies);

  const auto it = policies.find(id);
  const TrialRun run = run_trial(id, it == policies.end() ? nullptr : &it->second, command,
                                 trial_seed(config.seed, 0, 0), options.perturb_scale,
                                 config.bench_setup());
  const fs::path dir = prepare_dir(options.out_dir, config);
  return write_trace(dir, "trace_" + command.label(), run);
}

}  // namespace goto_bench::cli
