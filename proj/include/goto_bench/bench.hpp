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

// Evaluation protocol: trial execution, per-trial metrics, aggregation into
// a baseline-normalised table and difficulty-binned curves.

#ifndef GOTO_BENCH_BENCH_HPP_
#define GOTO_BENCH_BENCH_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "goto_bench/controllers.hpp"
#include "goto_bench/policy.hpp"
#include "goto_bench/se2.hpp"
#include "goto_bench/stepper.hpp"

namespace goto_bench {

// SE(2) target command relative to a start at the origin facing +x.
struct Command {
  double distance = 0.0;        // r, m
  double approach_angle = 0.0;  // phi, rad
  double heading = 0.0;         // final theta, rad

  // (r cos phi, r sin phi, theta).
  Pose2 goal() const;
  // Filename-safe label, e.g. "r1_phi0.785_th1.571".
  std::string label() const;
};

// Parses "r,phi,theta" (radians). Throws std::invalid_argument.
Command parse_command(const std::string& text);

struct CommandGrid {
  std::vector<double> distances{0.5, 1.0, 2.0, 4.0};
  std::vector<double> approach_angles{0.0, kPi / 4, kPi / 2, 3 * kPi / 4};
  std::vector<double> headings{0.0, kPi / 4, kPi / 2, 3 * kPi / 4};
  int trials_per_command = 16;
  double perturb_scale = 0.02;

  void validate() const;
  // Distance-major, then approach angle, then heading.
  std::vector<Command> commands() const;
};

struct BenchSetup {
  StepperConfig stepper;
  BaselineTuning tuning;
  VelocityLimits limits;
  double pos_tol = 0.05;  // m, success threshold
  double ang_tol = 0.1;   // rad
  int max_actions = 200;
};

// Commanded distances below this have no meaningful energy per meter.
inline constexpr double kMinDistanceForEnergyPerMeter = 0.1;

struct TrialRecord {
  ControllerId controller = ControllerId::kAgility2;
  Command command;
  int command_index = 0;
  int trial_index = 0;
  std::uint64_t seed = 0;
  bool success = false;
  double pos_error = 0.0;  // m
  double ang_error = 0.0;  // rad
  double time_s = 0.0;
  int footsteps = 0;
  double energy_j = 0.0;
  std::optional<double> energy_per_meter;  // J/m
  int actions = 0;  // stand actions included
};

struct TrialRun {
  TrialRecord record;
  StepperState initial_state;
  StepperState final_state;
  Pose2 goal;
  std::vector<PhaseId> phases;  // phase after each action
};

// Perturbation seed of one trial. Independent of the controller so every
// controller faces the same initial states.
std::uint64_t trial_seed(std::uint64_t master_seed, int command_index,
                         int trial_index);

// Steps `controller` from `initial` until settled at `goal` or the action
// cap. Metrics come from the final state and its step log.
TrialRun run_trial_from(ControllerId controller, const PolicyParams* policy,
                        const StepperState& initial, const Pose2& goal,
                        const BenchSetup& setup);

// Starts from a perturbed nominal stance at the origin.
TrialRun run_trial(ControllerId controller, const PolicyParams* policy,
                   const Command& command, std::uint64_t seed,
                   double perturb_scale, const BenchSetup& setup);

// Trapezoidal integral of sum_i tau_i(t) * omega_i(t). Each outer element is
// one joint's series; all series must have equal length.
double energy_integral(std::span<const std::vector<double>> torques,
                       std::span<const std::vector<double>> velocities,
                       double dt);

using PolicyMap = std::map<ControllerId, PolicyParams>;

// Every (controller, command, trial) of the grid, sorted by
// (controller order in `controllers`, command index, trial index).
std::vector<TrialRecord> run_grid(std::span<const ControllerId> controllers,
                                  const PolicyMap& policies,
                                  const CommandGrid& grid,
                                  std::uint64_t master_seed,
                                  const BenchSetup& setup, int threads);

enum class Metric { kEnergy, kEnergyPerMeter, kTime, kFootsteps, kPosError, kAngError };
inline constexpr std::array<Metric, 6> kAllMetrics = {
    Metric::kEnergy,    Metric::kEnergyPerMeter, Metric::kTime,
    Metric::kFootsteps, Metric::kPosError,       Metric::kAngError};
std::string to_string(Metric m);
// The value a record contributes to a metric; energy per meter is absent for
// near-zero commanded distances.
std::optional<double> metric_value(const TrialRecord& r, Metric m);

struct MetricStats {
  double mean = 0.0;
  double stddev = 0.0;  // population std
  int count = 0;
};

struct ControllerSummary {
  ControllerId controller = ControllerId::kAgility2;
  int trials = 0;
  int successes = 0;
  std::map<Metric, MetricStats> raw;
  // Mean and std divided by the baseline mean; nullopt when undefined.
  std::map<Metric, std::optional<double>> normalized_mean;
  std::map<Metric, std::optional<double>> normalized_std;
};

struct FailedTrial {
  ControllerId controller;
  int command_index;
  int trial_index;
  Command command;
  double pos_error;
  double ang_error;
};

struct DifficultyBin {
  int difficulty = 0;  // floor of the baseline's mean footsteps
  int commands = 0;
  // controller -> metric (time, energy, footsteps) mean over successes.
  std::map<ControllerId, std::map<Metric, MetricStats>> means;
};

struct DifficultyCurves {
  // (distance, heading) -> baseline mean footsteps.
  std::map<std::pair<double, double>, double> difficulty;
  std::vector<DifficultyBin> bins;
};

struct BenchReport {
  ControllerId baseline = ControllerId::kAgility2;
  std::vector<ControllerSummary> summaries;  // input controller order
  std::vector<FailedTrial> failures;
  DifficultyCurves curves;
};

// Table-1 analogue: per-controller means/stds over successful trials, divided
// by the baseline controller's means. Throws if the baseline is missing.
BenchReport aggregate(std::span<const TrialRecord> records,
                      ControllerId baseline = ControllerId::kAgility2);

// Fig.-3 analogue: difficulty of each (distance, heading) pair is the
// baseline's mean footstep count over approach angles and trials; commands
// are binned by its integer part.
DifficultyCurves difficulty_curves(std::span<const TrialRecord> records,
                                   ControllerId baseline = ControllerId::kAgility2);

// Each controller's normalized means divided by the same controller's
// normalized means in `reference`; null where either side is null or the
// reference is zero. normalize_against(r, r) is all ones wherever defined.
std::map<ControllerId, std::map<Metric, std::optional<double>>> normalize_against(
    const BenchReport& report, const BenchReport& reference);

std::string report_json(const BenchReport& report);
// controller,success_rate,<metric>_mean,<metric>_std,... (normalised values)
std::string table_csv(const BenchReport& report);
// difficulty,commands,controller,time_s,energy_j,footsteps
std::string difficulty_csv(const DifficultyCurves& curves);

}  // namespace goto_bench

#endif  // GOTO_BENCH_BENCH_HPP_
