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

#include <cstdio>
#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace cli = goto_bench::cli;

namespace {

void add_common(CLI::App* app, std::string* config, std::string* out) {
  app->add_option("-c,--config", *config,
                  "TOML run config; sections StepperConfig, RewardConfig, CemConfig, "
                  "CommandGrid, Constellation, Run (flags override file values)");
  app->add_option("-o,--out", *out, "output directory (default: [Run] output_dir)");
}

void print_paths(const std::vector<std::string>& paths) {
  for (const auto& p : paths) std::cout << p << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"goto-bench: SE(2) footstep GoTo benchmark"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "goto-bench 0.1.0");

  cli::TrainOptions train;
  CLI::App* train_cmd = app.add_subcommand("train", "train a learned controller with CEM");
  add_common(train_cmd, &train.config_path, &train.out_dir);
  train_cmd->add_option("-m,--mode", train.mode, "policy mode: goto | hier")
      ->check(CLI::IsMember({"goto", "hier"}))
      ->capture_default_str();
  train_cmd->add_option("-s,--seed", train.seed, "master seed (integer, overrides [Run] seed)");
  train_cmd->add_option("--iterations", train.iterations, "CEM iterations (count)")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--population", train.population, "CEM population (candidates)")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("-j,--threads", train.threads,
                        "worker threads (count, 0 = auto; capped by GOTO_BENCH_THREADS)");

  cli::EvalOptions eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "run the command grid and write reports");
  add_common(eval_cmd, &eval.config_path, &eval.out_dir);
  eval_cmd->add_option("--controllers", eval.controllers,
                       "comma list of fsm, agility2, agility3, hier, goto "
                       "(agility2 required as baseline)")
      ->delimiter(',')
      ->capture_default_str();
  eval_cmd->add_option("-p,--policy", eval.policy_paths,
                       "policy file(s); the header mode selects goto or hier")
      ->delimiter(',');
  eval_cmd->add_option("--grid", eval.grid_distances,
                       "comma list of command distances in m (overrides [CommandGrid] "
                       "distances)")
      ->delimiter(',');
  eval_cmd->add_option("--trials", eval.trials, "trials per command (count)")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("-s,--seed", eval.seed, "master seed (integer, overrides [Run] seed)");
  eval_cmd->add_option("-j,--threads", eval.threads,
                       "worker threads (count, 0 = auto; capped by GOTO_BENCH_THREADS)");
  eval_cmd->add_option("--trace", eval.trace_commands,
                       "trace command r,phi,theta in m,rad,rad (repeatable; default: "
                       "0.4,pi,0 and 1,pi/4,pi/2)");

  cli::TraceOptions trace;
  CLI::App* trace_cmd = app.add_subcommand("trace", "write the footstep trace of one trial");
  add_common(trace_cmd, &trace.config_path, &trace.out_dir);
  trace_cmd->add_option("--controller", trace.controller,
                        "fsm | agility2 | agility3 | hier | goto")
      ->capture_default_str();
  trace_cmd->add_option("--command", trace.command,
                        "goal r,phi,theta: distance m, approach angle rad, heading rad")
      ->required();
  trace_cmd->add_option("-p,--policy", trace.policy_path,
                        "policy file (required for hier and goto)");
  trace_cmd->add_option("-s,--seed", trace.seed, "master seed (integer, overrides [Run] seed)");
  trace_cmd->add_option("--perturb", trace.perturb_scale,
                        "start perturbation scale (m and rad, default 0)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  try {
    if (train_cmd->parsed()) {
      const cli::TrainOutputs out = cli::cmd_train(train);
      print_paths({out.policy_path, out.log_path});
    } else if (eval_cmd->parsed()) {
      print_paths(cli::cmd_eval(eval));
    } else if (trace_cmd->parsed()) {
      print_paths(cli::cmd_trace(trace));
    }
  } catch (const cli::UsageError& e) {
    std::cerr << "goto-bench: " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "goto-bench: " << e.what() << "\n";
    return cli::kExitRuntime;
  }
  return cli::kExitOk;
}
