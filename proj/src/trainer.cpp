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

#include "goto_bench/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "goto_bench/parallel.hpp"
#include "goto_bench/text.hpp"

namespace goto_bench {

namespace {

constexpr std::uint64_t kTaskStreamTag = 0x7a5c;
constexpr std::uint64_t kCandidateStreamTag = 0xc3;

}  // namespace

std::string to_string(TaskCategory c) {
  switch (c) {
    case TaskCategory::kStand: return "stand";
    case TaskCategory::kStraight: return "straight";
    case TaskCategory::kLateral: return "lateral";
    case TaskCategory::kTurn: return "turn";
    case TaskCategory::kCombined: return "combined";
  }
  return "?";
}

TaskCategory sample_category(RngStream& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < kCategoryProbabilities.size(); ++i) {
    acc += kCategoryProbabilities[i];
    if (u < acc) return static_cast<TaskCategory>(i);
  }
  return TaskCategory::kCombined;
}

Pose2 sample_goal_delta(TaskCategory category, RngStream& rng,
                        const TaskRanges& ranges) {
  double dx = 0.0;
  double dy = 0.0;
  double dt = 0.0;
  switch (category) {
    case TaskCategory::kStand:
      break;
    case TaskCategory::kStraight:
      dx = rng.uniform(-ranges.dx, ranges.dx);
      break;
    case TaskCategory::kLateral:
      dy = rng.uniform(-ranges.dy, ranges.dy);
      break;
    case TaskCategory::kTurn:
      dt = rng.uniform(-ranges.dtheta, ranges.dtheta);
      break;
    case TaskCategory::kCombined:
      dx = rng.uniform(-ranges.dx, ranges.dx);
      dy = rng.uniform(-ranges.dy, ranges.dy);
      dt = rng.uniform(-ranges.dtheta, ranges.dtheta);
      break;
  }
  return {dx, dy, dt};
}

TaskSpec sample_task(RngStream& rng, int horizon, const TaskRanges& ranges) {
  if (ranges.min_gap < 1 || ranges.max_gap < ranges.min_gap) {
    throw std::invalid_argument("sample_task: bad resample gap range");
  }
  TaskSpec task;
  const double sx = rng.uniform(-1.0, 1.0);
  const double sy = rng.uniform(-1.0, 1.0);
  const double st = rng.uniform(-kPi, kPi);
  task.start = Pose2(sx, sy, st);
  task.category = sample_category(rng);
  task.goal = task.start.compose(sample_goal_delta(task.category, rng, ranges));
  for (int t = rng.uniform_int(ranges.min_gap, ranges.max_gap); t < horizon;
       t += rng.uniform_int(ranges.min_gap, ranges.max_gap)) {
    const TaskCategory c = sample_category(rng);
    task.resamples.push_back({t, sample_goal_delta(c, rng, ranges), c});
  }
  task.perturb_seed = rng.next_u64();
  return task;
}

TaskSpec mirror_task(const TaskSpec& task) {
  TaskSpec m = task;
  m.start = task.start.mirrored();
  m.goal = task.goal.mirrored();
  for (GoalIssue& g : m.resamples) g.delta = g.delta.mirrored();
  return m;
}

RolloutResult rollout(std::span<const double> params, PolicyMode mode,
                      const TaskSpec& task, int horizon,
                      const TrainingSetup& setup) {
  if (params.size() != kPolicyParamCount) {
    throw std::invalid_argument("rollout: wrong parameter count");
  }
  RngStream perturb_rng(task.perturb_seed);
  RolloutResult out;
  StepperState& state = out.final_state;
  state = reset(task.start, setup.perturb_scale, perturb_rng, setup.stepper);
  out.rewards.reserve(static_cast<std::size_t>(horizon));
  out.goals.reserve(static_cast<std::size_t>(horizon));

  PolicyParams policy;
  policy.mode = mode;
  policy.values.assign(params.begin(), params.end());

  Pose2 goal = task.goal;
  std::size_t next_issue = 0;
  std::array<double, 3> prev{0.0, 0.0, 0.0};
  for (int t = 0; t < horizon; ++t) {
    if (next_issue < task.resamples.size() &&
        task.resamples[next_issue].step == t) {
      goal = state.base.compose(task.resamples[next_issue].delta);
      ++next_issue;
    }
    const FootstepAction requested =
        mode == PolicyMode::kGoTo
            ? goto_controller(policy, state, goal, t, setup.stepper)
            : hierarchical_controller(policy, state, goal, t,
                                      setup.stepper, setup.limits);
    const FootstepAction executed =
        clamp_action(requested, state.swing_foot(), setup.stepper);
    const double energy = advance(state, executed, setup.stepper);
    const auto now = executed.as_vector();
    const double r = total_reward(
        constellation_distance(state.base, goal, setup.constellation), prev,
        now, energy, setup.reward);
    prev = now;
    out.rewards.push_back(r);
    out.goals.push_back(goal);
    out.total_return += r;
  }
  return out;
}

void CemConfig::validate() const {
  if (population < 2 || elites < 1 || elites >= population) {
    throw std::invalid_argument(
        "CemConfig: need population >= 2 and 1 <= elites < population");
  }
  if (iterations < 1 || tasks_per_candidate < 1 || horizon < 1) {
    throw std::invalid_argument(
        "CemConfig: iterations, tasks_per_candidate, horizon must be positive");
  }
  if (!(init_std > 0.0) || !(std_floor > 0.0)) {
    throw std::invalid_argument("CemConfig: std values must be positive");
  }
  if (!(smoothing > 0.0 && smoothing <= 1.0)) {
    throw std::invalid_argument("CemConfig: smoothing not in (0, 1]");
  }
  if (!(mirror_probability >= 0.0 && mirror_probability <= 1.0)) {
    throw std::invalid_argument("CemConfig: mirror_probability not in [0, 1]");
  }
}

CemResult cem_optimize(std::span<const double> initial_mean,
                       const CemConfig& cfg,
                       const CemBatchObjective& objective) {
  cfg.validate();
  const std::size_t dim = initial_mean.size();
  const auto pop = static_cast<std::size_t>(cfg.population);
  const auto n_elite = static_cast<std::size_t>(cfg.elites);

  CemResult res;
  res.mean.assign(initial_mean.begin(), initial_mean.end());
  res.std.assign(dim, cfg.init_std);
  std::vector<std::vector<double>> population(pop, std::vector<double>(dim));
  std::vector<double> scores(pop);
  std::vector<std::size_t> order(pop);

  for (int it = 0; it < cfg.iterations; ++it) {
    for (std::size_t i = 0; i < pop; ++i) {
      RngStream rng(derive_seed({cfg.seed, kCandidateStreamTag,
                                 static_cast<std::uint64_t>(it), i}));
      for (std::size_t k = 0; k < dim; ++k) {
        population[i][k] = res.mean[k] + res.std[k] * rng.normal();
      }
    }
    std::fill(scores.begin(), scores.end(), 0.0);
    objective(it, population, scores);

    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (scores[a] != scores[b]) return scores[a] > scores[b];
      return a < b;
    });

    std::vector<double> elite_mean(dim, 0.0);
    for (std::size_t e = 0; e < n_elite; ++e) {
      const auto& x = population[order[e]];
      for (std::size_t k = 0; k < dim; ++k) elite_mean[k] += x[k];
    }
    for (double& v : elite_mean) v /= static_cast<double>(n_elite);
    double std_sum = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      double var = 0.0;
      for (std::size_t e = 0; e < n_elite; ++e) {
        const double d = population[order[e]][k] - elite_mean[k];
        var += d * d;
      }
      var /= static_cast<double>(n_elite);
      const double a = cfg.smoothing;
      res.std[k] = std::max(cfg.std_floor,
                            a * std::sqrt(var) + (1.0 - a) * res.std[k]);
      std_sum += res.std[k];
      res.mean[k] = a * elite_mean[k] + (1.0 - a) * res.mean[k];
    }

    CemLogRow row;
    row.iteration = it;
    row.mean_return =
        std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(pop);
    double elite_score = 0.0;
    for (std::size_t e = 0; e < n_elite; ++e) elite_score += scores[order[e]];
    row.elite_mean = elite_score / static_cast<double>(n_elite);
    row.best_return = scores[order[0]];
    row.param_std = dim == 0 ? 0.0 : std_sum / static_cast<double>(dim);
    res.log.push_back(row);
  }
  return res;
}

std::vector<TaskSpec> iteration_tasks(const CemConfig& cfg, int iteration) {
  RngStream rng(derive_seed(
      {cfg.seed, kTaskStreamTag, static_cast<std::uint64_t>(iteration)}));
  std::vector<TaskSpec> tasks;
  tasks.reserve(static_cast<std::size_t>(cfg.tasks_per_candidate));
  for (int k = 0; k < cfg.tasks_per_candidate; ++k) {
    TaskSpec t = sample_task(rng, cfg.horizon);
    if (rng.uniform() < cfg.mirror_probability) t = mirror_task(t);
    tasks.push_back(std::move(t));
  }
  return tasks;
}

PolicyParams cem_train(const CemConfig& cfg, PolicyMode mode,
                       const TrainingSetup& setup,
                       std::vector<CemLogRow>* log) {
  cfg.validate();
  setup.stepper.validate();
  setup.reward.validate();

  const std::vector<double> init(kPolicyParamCount, 0.0);
  const CemResult res = cem_optimize(
      init, cfg,
      [&](int it, const std::vector<std::vector<double>>& population,
          std::vector<double>& scores) {
        const std::vector<TaskSpec> tasks = iteration_tasks(cfg, it);
        parallel_for(population.size(), cfg.threads, [&](std::size_t i) {
          double sum = 0.0;
          for (const TaskSpec& task : tasks) {
            sum += rollout(population[i], mode, task, cfg.horizon, setup)
                       .total_return;
          }
          scores[i] = sum / static_cast<double>(tasks.size());
        });
      });
  if (log != nullptr) *log = res.log;

  PolicyParams policy;
  policy.mode = mode;
  policy.seed = cfg.seed;
  policy.values = res.mean;
  return policy;
}

std::string training_log_csv(std::span<const CemLogRow> rows) {
  std::string out = "iteration,mean_return,elite_mean,best_return,param_std\n";
  for (const CemLogRow& r : rows) {
    out += std::to_string(r.iteration) + ',' + format_double(r.mean_return) +
           ',' + format_double(r.elite_mean) + ',' +
           format_double(r.best_return) + ',' + format_double(r.param_std) +
           '\n';
  }
  return out;
}

}  // namespace goto_bench
