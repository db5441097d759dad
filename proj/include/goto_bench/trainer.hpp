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

// Derivative-free training of the learned controllers: goal sampling with
// mid-episode resampling, reward-accumulating rollouts, and a diagonal
// Gaussian cross-entropy method.

#ifndef GOTO_BENCH_TRAINER_HPP_
#define GOTO_BENCH_TRAINER_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "goto_bench/controllers.hpp"
#include "goto_bench/policy.hpp"
#include "goto_bench/reward.hpp"
#include "goto_bench/rng.hpp"
#include "goto_bench/se2.hpp"
#include "goto_bench/stepper.hpp"

namespace goto_bench {

enum class TaskCategory { kStand, kStraight, kLateral, kTurn, kCombined };

inline constexpr std::array<double, 5> kCategoryProbabilities = {0.1, 0.2, 0.2,
                                                                 0.2, 0.3};

std::string to_string(TaskCategory c);

struct TaskRanges {
  double dx = 2.0;       // m, goal offsets drawn in [-dx, dx]
  double dy = 1.5;       // m
  double dtheta = kPi;   // rad
  int min_gap = 10;      // steps between goal issues (4 s at 0.4 s/step)
  int max_gap = 20;      // 8 s
};

// A goal issued mid-episode, expressed relative to the base pose at the
// moment it is issued.
struct GoalIssue {
  int step = 0;
  Pose2 delta;
  TaskCategory category = TaskCategory::kStand;
};

struct TaskSpec {
  Pose2 start;
  Pose2 goal;
  TaskCategory category = TaskCategory::kStand;
  std::vector<GoalIssue> resamples;
  std::uint64_t perturb_seed = 0;
};

TaskCategory sample_category(RngStream& rng);
// Offset in the robot frame, zero in the components the category fixes.
Pose2 sample_goal_delta(TaskCategory category, RngStream& rng,
                        const TaskRanges& ranges = {});

// Start pose anywhere in a 2 m box with any heading; resample steps spaced
// by uniform gaps until `horizon`.
TaskSpec sample_task(RngStream& rng, int horizon, const TaskRanges& ranges = {});

// Reflection across the world x-axis of start, goal and every later offset.
TaskSpec mirror_task(const TaskSpec& task);

struct TrainingSetup {
  StepperConfig stepper;
  RewardConfig reward;
  Constellation constellation = Constellation::make_circle(1.0, 8);
  VelocityLimits limits;
  double perturb_scale = 0.02;
};

struct RolloutResult {
  double total_return = 0.0;
  std::vector<double> rewards;
  std::vector<Pose2> goals;  // active goal at each step
  StepperState final_state;
};

// Undiscounted sum of per-step total reward against the goal active at each
// step. Deterministic given the task.
RolloutResult rollout(std::span<const double> params, PolicyMode mode,
                      const TaskSpec& task, int horizon,
                      const TrainingSetup& setup);

struct CemConfig {
  int population = 64;
  int elites = 8;
  int iterations = 300;
  double init_std = 0.5;
  double std_floor = 0.02;
  int tasks_per_candidate = 16;
  int horizon = 60;
  std::uint64_t seed = 1;
  double mirror_probability = 0.5;
  // Fraction of the elite refit that replaces the previous mean and std each
  // iteration; below 1 the search distribution shrinks gradually.
  double smoothing = 0.15;
  int threads = 0;  // 0: hardware concurrency

  void validate() const;
};

struct CemLogRow {
  int iteration = 0;
  double mean_return = 0.0;
  double elite_mean = 0.0;
  double best_return = 0.0;
  double param_std = 0.0;
};

// Scores every candidate of one iteration. Must write scores[i] for
// population[i]; may run candidates concurrently.
using CemBatchObjective = std::function<void(
    int iteration, const std::vector<std::vector<double>>& population,
    std::vector<double>& scores)>;

struct CemResult {
  std::vector<double> mean;
  std::vector<double> std;
  std::vector<CemLogRow> log;
};

// Maximises the objective. Candidates are drawn with per-(iteration,
// candidate) seeds; elites are the top scores with ties broken by candidate
// index, so the result is independent of evaluation order.
CemResult cem_optimize(std::span<const double> initial_mean,
                       const CemConfig& cfg, const CemBatchObjective& objective);

// The task set every candidate of `iteration` is scored on.
std::vector<TaskSpec> iteration_tasks(const CemConfig& cfg, int iteration);

PolicyParams cem_train(const CemConfig& cfg, PolicyMode mode,
                       const TrainingSetup& setup,
                       std::vector<CemLogRow>* log = nullptr);

// iteration,mean_return,elite_mean,best_return,param_std
std::string training_log_csv(std::span<const CemLogRow> rows);

}  // namespace goto_bench

#endif  // GOTO_BENCH_TRAINER_HPP_
