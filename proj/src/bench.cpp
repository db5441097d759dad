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

#include "goto_bench/bench.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "goto_bench/parallel.hpp"
#include "goto_bench/rng.hpp"
#include "goto_bench/text.hpp"
#include "json.hpp"

namespace goto_bench {

using nlohmann::ordered_json;

Pose2 Command::goal() const {
  return {distance * std::cos(approach_angle),
          distance * std::sin(approach_angle), heading};
}

std::string Command::label() const {
  return "r" + format_double(distance) + "_phi" + format_fixed(approach_angle, 3) +
         "_th" + format_fixed(heading, 3);
}

Command parse_command(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v)) {
      throw std::invalid_argument("malformed command '" + text +
                                  "': expected r,phi,theta");
    }
    parts.push_back(v);
  }
  if (parts.size() != 3 || text.empty() || text.back() == ',') {
    throw std::invalid_argument("malformed command '" + text +
                                "': expected r,phi,theta");
  }
  if (parts[0] < 0.0) {
    throw std::invalid_argument("command distance must be >= 0");
  }
  return {parts[0], parts[1], parts[2]};
}

void CommandGrid::validate() const {
  if (distances.empty() || approach_angles.empty() || headings.empty()) {
    throw std::invalid_argument("CommandGrid: empty axis");
  }
  for (double r : distances) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("CommandGrid: distances must be >= 0");
    }
  }
  if (trials_per_command < 1) {
    throw std::invalid_argument("CommandGrid: trials_per_command must be >= 1");
  }
  if (!(perturb_scale >= 0.0)) {
    throw std::invalid_argument("CommandGrid: perturb_scale must be >= 0");
  }
}

std::vector<Command> CommandGrid::commands() const {
  std::vector<Command> out;
  for (double r : distances) {
    for (double phi : approach_angles) {
      for (double th : headings) out.push_back({r, phi, th});
    }
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t master_seed, int command_index,
                         int trial_index) {
  return derive_seed({master_seed, static_cast<std::uint64_t>(command_index),
                      static_cast<std::uint64_t>(trial_index)});
}

TrialRun run_trial_from(ControllerId controller, const PolicyParams* policy,
                        const StepperState& initial, const Pose2& goal,
                        const BenchSetup& setup) {
  ControllerRunner runner(controller, policy, setup.stepper, setup.tuning,
                          setup.limits);
  TrialRun run;
  run.initial_state = initial;
  run.goal = goal;
  StepperState& state = run.final_state;
  state = initial;

  int motion_actions = 0;  // actions up to and including the last footstep
  bool settled = false;
  for (int a = 0; a < setup.max_actions && !settled; ++a) {
    const FootstepAction action = runner.next(state, goal, a);
    advance(state, action, setup.stepper);
    run.phases.push_back(runner.phase().id);
    if (!action.is_stand) motion_actions = a + 1;
    settled = is_settled(state, goal, setup.pos_tol, setup.ang_tol, setup.stepper);
  }

  TrialRecord& r = run.record;
  r.controller = controller;
  r.success = settled;
  r.pos_error = position_error(state.base, goal);
  r.ang_error = orientation_error(state.base.theta(), goal.theta());
  r.time_s = motion_actions * setup.stepper.step_duration +
             setup.stepper.settle_duration;
  r.footsteps = state.footsteps();
  r.energy_j = state.energy;
  r.actions = state.actions;
  return run;
}

TrialRun run_trial(ControllerId controller, const PolicyParams* policy,
                   const Command& command, std::uint64_t seed,
                   double perturb_scale, const BenchSetup& setup) {
  RngStream rng(seed);
  const StepperState initial =
      reset(Pose2::identity(), perturb_scale, rng, setup.stepper);
  TrialRun run = run_trial_from(controller, policy, initial, command.goal(), setup);
  run.record.command = command;
  run.record.seed = seed;
  if (command.distance >= kMinDistanceForEnergyPerMeter) {
    run.record.energy_per_meter = run.record.energy_j / command.distance;
  }
  return run;
}

double energy_integral(std::span<const std::vector<double>> torques,
                       std::span<const std::vector<double>> velocities,
                       double dt) {
  if (torques.size() != velocities.size()) {
    throw std::invalid_argument("energy_integral: joint count mismatch");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("energy_integral: dt must be > 0");
  if (torques.empty()) return 0.0;
  const std::size_t n = torques.front().size();
  for (std::size_t j = 0; j < torques.size(); ++j) {
    if (torques[j].size() != n || velocities[j].size() != n) {
      throw std::invalid_argument("energy_integral: series length mismatch");
    }
  }
  auto power = [&](std::size_t k) {
    double p = 0.0;
    for (std::size_t j = 0; j < torques.size(); ++j) {
      p += torques[j][k] * velocities[j][k];
    }
    return p;
  };
  double e = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) e += 0.5 * dt * (power(k) + power(k + 1));
  return e;
}

std::vector<TrialRecord> run_grid(std::span<const ControllerId> controllers,
                                  const PolicyMap& policies,
                                  const CommandGrid& grid,
                                  std::uint64_t master_seed,
                                  const BenchSetup& setup, int threads) {
  grid.validate();
  setup.stepper.validate();
  const std::vector<Command> commands = grid.commands();
  for (ControllerId id : controllers) {
    if (is_learned(id) && !policies.contains(id)) {
      throw std::invalid_argument("controller " + to_string(id) +
                                  " needs a trained policy");
    }
  }
  struct Job {
    ControllerId controller;
    int command_index;
    int trial_index;
  };
  std::vector<Job> jobs;
  for (ControllerId id : controllers) {
    for (int c = 0; c < static_cast<int>(commands.size()); ++c) {
      for (int t = 0; t < grid.trials_per_command; ++t) jobs.push_back({id, c, t});
    }
  }
  std::vector<TrialRecord> records(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t i) {
    const Job& job = jobs[i];
    const auto it = policies.find(job.controller);
    const PolicyParams* policy = it == policies.end() ? nullptr : &it->second;
    const std::uint64_t seed =
        trial_seed(master_seed, job.command_index, job.trial_index);
    TrialRecord r = run_trial(job.controller, policy, commands[job.command_index],
                              seed, grid.perturb_scale, setup)
                        .record;
    r.command_index = job.command_index;
    r.trial_index = job.trial_index;
    records[i] = r;
  });
  return records;
}

std::string to_string(Metric m) {
  switch (m) {
    case Metric::kEnergy: return "energy_j";
    case Metric::kEnergyPerMeter: return "energy_per_meter";
    case Metric::kTime: return "time_s";
    case Metric::kFootsteps: return "footsteps";
    case Metric::kPosError: return "pos_error_m";
    case Metric::kAngError: return "ang_error_rad";
  }
  return "?";
}

std::optional<double> metric_value(const TrialRecord& r, Metric m) {
  switch (m) {
    case Metric::kEnergy: return r.energy_j;
    case Metric::kEnergyPerMeter: return r.energy_per_meter;
    case Metric::kTime: return r.time_s;
    case Metric::kFootsteps: return static_cast<double>(r.footsteps);
    case Metric::kPosError: return r.pos_error;
    case Metric::kAngError: return r.ang_error;
  }
  return std::nullopt;
}

namespace {

class StatsAccumulator {
 public:
  void add(double v) {
    sum_ += v;
    values_.push_back(v);
  }
  MetricStats finish() const {
    MetricStats s;
    s.count = static_cast<int>(values_.size());
    if (values_.empty()) return s;
    s.mean = sum_ / s.count;
    double ss = 0.0;
    for (double v : values_) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / s.count);
    return s;
  }

 private:
  double sum_ = 0.0;
  std::vector<double> values_;
};

std::optional<double> normalize_value(double v, const MetricStats& base) {
  if (base.count == 0) return std::nullopt;
  if (base.mean != 0.0) return v / base.mean;
  // A zero baseline only normalises a zero value.
  if (v == 0.0) return 1.0;
  return std::nullopt;
}

std::vector<ControllerId> controllers_in_order(
    std::span<const TrialRecord> records) {
  std::vector<ControllerId> order;
  for (const TrialRecord& r : records) {
    if (std::find(order.begin(), order.end(), r.controller) == order.end()) {
      order.push_back(r.controller);
    }
  }
  return order;
}

ordered_json optional_json(const std::optional<double>& v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

}  // namespace

BenchReport aggregate(std::span<const TrialRecord> records,
                      ControllerId baseline) {
  const std::vector<ControllerId> order = controllers_in_order(records);
  if (std::find(order.begin(), order.end(), baseline) == order.end()) {
    throw std::invalid_argument("aggregate: no records for baseline controller " +
                                to_string(baseline));
  }
  BenchReport report;
  report.baseline = baseline;
  for (ControllerId id : order) {
    ControllerSummary s;
    s.controller = id;
    std::map<Metric, StatsAccumulator> acc;
    for (const TrialRecord& r : records) {
      if (r.controller != id) continue;
      ++s.trials;
      if (!r.success) {
        report.failures.push_back({id, r.command_index, r.trial_index, r.command,
                                   r.pos_error, r.ang_error});
        continue;
      }
      ++s.successes;
      for (Metric m : kAllMetrics) {
        if (auto v = metric_value(r, m)) acc[m].add(*v);
      }
    }
    for (Metric m : kAllMetrics) s.raw[m] = acc[m].finish();
    report.summaries.push_back(std::move(s));
  }
  const auto base_it =
      std::find_if(report.summaries.begin(), report.summaries.end(),
                   [&](const ControllerSummary& s) { return s.controller == baseline; });
  const std::map<Metric, MetricStats> base_raw = base_it->raw;
  for (ControllerSummary& s : report.summaries) {
    for (Metric m : kAllMetrics) {
      const MetricStats& st = s.raw[m];
      if (st.count == 0) {
        s.normalized_mean[m] = std::nullopt;
        s.normalized_std[m] = std::nullopt;
        continue;
      }
      s.normalized_mean[m] = normalize_value(st.mean, base_raw.at(m));
      const auto& b = base_raw.at(m);
      s.normalized_std[m] =
          (b.count > 0 && b.mean != 0.0) ? std::optional<double>(st.stddev / b.mean)
                                         : std::nullopt;
    }
  }
  report.curves = difficulty_curves(records, baseline);
  return report;
}

DifficultyCurves difficulty_curves(std::span<const TrialRecord> records,
                                   ControllerId baseline) {
  DifficultyCurves curves;
  using Key = std::pair<double, double>;
  std::map<Key, StatsAccumulator> base_steps;
  for (const TrialRecord& r : records) {
    if (r.controller != baseline) continue;
    base_steps[{r.command.distance, r.command.heading}].add(r.footsteps);
  }
  for (const auto& [key, acc] : base_steps) {
    curves.difficulty[key] = acc.finish().mean;
  }

  std::map<int, DifficultyBin> bins;
  for (const auto& [key, d] : curves.difficulty) {
    const int b = static_cast<int>(std::floor(d));
    bins[b].difficulty = b;
    bins[b].commands += 1;
  }
  std::map<int, std::map<ControllerId, std::map<Metric, StatsAccumulator>>> acc;
  for (const TrialRecord& r : records) {
    const auto it = curves.difficulty.find({r.command.distance, r.command.heading});
    if (it == curves.difficulty.end() || !r.success) continue;
    const int b = static_cast<int>(std::floor(it->second));
    for (Metric m : {Metric::kTime, Metric::kEnergy, Metric::kFootsteps}) {
      acc[b][r.controller][m].add(*metric_value(r, m));
    }
  }
  for (auto& [b, per_controller] : acc) {
    for (auto& [id, per_metric] : per_controller) {
      for (auto& [m, a] : per_metric) bins[b].means[id][m] = a.finish();
    }
  }
  for (auto& [b, bin] : bins) curves.bins.push_back(std::move(bin));
  return curves;
}

std::map<ControllerId, std::map<Metric, std::optional<double>>> normalize_against(
    const BenchReport& report, const BenchReport& reference) {
  std::map<ControllerId, std::map<Metric, std::optional<double>>> out;
  for (const ControllerSummary& s : report.summaries) {
    const auto ref = std::find_if(
        reference.summaries.begin(), reference.summaries.end(),
        [&](const ControllerSummary& r) { return r.controller == s.controller; });
    for (Metric m : kAllMetrics) {
      std::optional<double> v;
      if (ref != reference.summaries.end()) {
        const auto& num = s.normalized_mean.at(m);
        const auto& den = ref->normalized_mean.at(m);
        if (num && den && *den != 0.0) v = *num / *den;
      }
      out[s.controller][m] = v;
    }
  }
  return out;
}

std::string report_json(const BenchReport& report) {
  ordered_json j;
  j["baseline"] = to_string(report.baseline);
  ordered_json controllers = ordered_json::array();
  for (const ControllerSummary& s : report.summaries) {
    ordered_json c;
    c["controller"] = to_string(s.controller);
    c["trials"] = s.trials;
    c["successes"] = s.successes;
    c["success_rate"] =
        s.trials > 0 ? static_cast<double>(s.successes) / s.trials : 0.0;
    ordered_json raw;
    ordered_json norm;
    for (Metric m : kAllMetrics) {
      const MetricStats& st = s.raw.at(m);
      raw[to_string(m)] = {{"mean", st.mean}, {"std", st.stddev}, {"count", st.count}};
      norm[to_string(m)] = {{"mean", optional_json(s.normalized_mean.at(m))},
                            {"std", optional_json(s.normalized_std.at(m))}};
    }
    c["raw"] = raw;
    c["normalized"] = norm;
    controllers.push_back(c);
  }
  j["controllers"] = controllers;

  ordered_json failures = ordered_json::array();
  for (const FailedTrial& f : report.failures) {
    failures.push_back({{"controller", to_string(f.controller)},
                        {"command_index", f.command_index},
                        {"trial_index", f.trial_index},
                        {"r", f.command.distance},
                        {"phi", f.command.approach_angle},
                        {"theta", f.command.heading},
                        {"pos_error", f.pos_error},
                        {"ang_error", f.ang_error}});
  }
  j["failures"] = failures;

  ordered_json diff = ordered_json::array();
  for (const auto& [key, d] : report.curves.difficulty) {
    diff.push_back({{"distance", key.first}, {"heading", key.second}, {"difficulty", d}});
  }
  ordered_json bins = ordered_json::array();
  for (const DifficultyBin& b : report.curves.bins) {
    ordered_json per;
    for (const auto& [id, metrics] : b.means) {
      ordered_json mj;
      for (const auto& [m, st] : metrics) mj[to_string(m)] = st.mean;
      mj["count"] = metrics.begin()->second.count;
      per[to_string(id)] = mj;
    }
    bins.push_back({{"difficulty", b.difficulty}, {"commands", b.commands}, {"means", per}});
  }
  j["difficulty"] = {{"commands", diff}, {"bins", bins}};
  return j.dump(2) + "\n";
}

std::string table_csv(const BenchReport& report) {
  std::string out = "controller,success_rate";
  for (Metric m : kAllMetrics) {
    out += "," + to_string(m) + "_mean," + to_string(m) + "_std";
  }
  out += "\n";
  auto cell = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("NA");
  };
  for (const ControllerSummary& s : report.summaries) {
    out += to_string(s.controller);
    out += "," + format_double(s.trials > 0
                                   ? static_cast<double>(s.successes) / s.trials
                                   : 0.0);
    for (Metric m : kAllMetrics) {
      out += "," + cell(s.normalized_mean.at(m)) + "," + cell(s.normalized_std.at(m));
    }
    out += "\n";
  }
  return out;
}

std::string difficulty_csv(const DifficultyCurves& curves) {
  std::string out = "difficulty,commands,controller,trials,time_s,energy_j,footsteps\n";
  for (const DifficultyBin& b : curves.bins) {
    for (const auto& [id, metrics] : b.means) {
      out += std::to_string(b.difficulty) + "," + std::to_string(b.commands) + "," +
             to_string(id) + "," +
             std::to_string(metrics.at(Metric::kTime).count) + "," +
             format_double(metrics.at(Metric::kTime).mean) + "," +
             format_double(metrics.at(Metric::kEnergy).mean) + "," +
             format_double(metrics.at(Metric::kFootsteps).mean) + "\n";
    }
  }
  return out;
}

}  // namespace goto_bench
