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
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

namespace goto_bench {
namespace {

constexpr ControllerId kBaselines[] = {ControllerId::kFsm, ControllerId::kAgility2,
                                       ControllerId::kAgility3};

CommandGrid small_grid() {
  CommandGrid g;
  g.distances = {0.5, 1.0, 2.0};
  g.trials_per_command = 2;
  return g;
}

int count_lines(const std::string& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

TEST(EnergyIntegralTest, Examples) {
  const int n = 4001;  // T = 4 s at dt = 1 ms
  const std::vector<std::vector<double>> tau{std::vector<double>(n, 2.0)};
  const std::vector<std::vector<double>> omega{std::vector<double>(n, 1.5)};
  EXPECT_NEAR(energy_integral(tau, omega, 0.001), 12.0, 1e-9);

  std::vector<double> ramp(2001), one(2001, 1.0);
  for (int i = 0; i < 2001; ++i) ramp[i] = i * 0.001;
  const std::vector<std::vector<double>> rt{ramp}, rw{one};
  EXPECT_NEAR(energy_integral(rt, rw, 0.001), 2.0, 1e-6);

  EXPECT_EQ(energy_integral({}, {}, 0.001), 0.0);
  const std::vector<std::vector<double>> empty{{}};
  EXPECT_EQ(energy_integral(empty, empty, 0.001), 0.0);
}

TEST(EnergyIntegralTest, SignedPowerSummedOverJoints) {
  const std::vector<std::vector<double>> tau{{-1.0, -1.0, -1.0}, {2.0, 2.0, 2.0}};
  const std::vector<std::vector<double>> omega{{3.0, 3.0, 3.0}, {1.0, 1.0, 1.0}};
  EXPECT_NEAR(energy_integral(tau, omega, 0.5), (-3.0 + 2.0) * 1.0, 1e-12);
  const std::vector<std::vector<double>> short_w{{1.0, 1.0}};
  EXPECT_THROW(energy_integral(std::vector<std::vector<double>>{{1.0, 1.0, 1.0}}, short_w, 0.1),
               std::invalid_argument);
}

TEST(CommandTest, ParseAndLabel) {
  const Command c = parse_command("1, 0.785398, 1.5");
  EXPECT_EQ(c.distance, 1.0);
  EXPECT_EQ(c.heading, 1.5);
  EXPECT_EQ(c.label(), "r1_phi0.785_th1.500");
  const Pose2 g = parse_command("2,1.5707963267948966,0").goal();
  EXPECT_NEAR(g.x(), 0.0, 1e-15);
  EXPECT_NEAR(g.y(), 2.0, 1e-15);
  EXPECT_THROW(parse_command("1,2"), std::invalid_argument);
  EXPECT_THROW(parse_command("1,2,3,4"), std::invalid_argument);
  EXPECT_THROW(parse_command("a,b,c"), std::invalid_argument);
  EXPECT_THROW(parse_command("-1,0,0"), std::invalid_argument);
  EXPECT_THROW(parse_command(""), std::invalid_argument);
}

TEST(CommandGridTest, Order) {
  const CommandGrid g;
  const std::vector<Command> cmds = g.commands();
  ASSERT_EQ(cmds.size(), 64u);
  EXPECT_EQ(cmds[0].distance, 0.5);
  EXPECT_EQ(cmds[1].heading, kPi / 4);
  EXPECT_EQ(cmds[4].approach_angle, kPi / 4);
  EXPECT_EQ(cmds[16].distance, 1.0);
  CommandGrid bad;
  bad.trials_per_command = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(RunTrialTest, StandCommand) {
  const BenchSetup setup;
  PolicyParams goto_zero, hier_zero;
  hier_zero.mode = PolicyMode::kHier;
  for (ControllerId id : kAllControllers) {
    const PolicyParams* p = id == ControllerId::kGoTo   ? &goto_zero
                            : id == ControllerId::kHier ? &hier_zero
                                                        : nullptr;
    const TrialRecord r = run_trial(id, p, {0.0, 0.0, 0.0}, 1, 0.0, setup).record;
    EXPECT_TRUE(r.success) << to_string(id);
    EXPECT_EQ(r.footsteps, 0);
    EXPECT_EQ(r.energy_j, 0.0);
    EXPECT_FALSE(r.energy_per_meter.has_value());
  }
}

TEST(RunTrialTest, Agility2GoldenForward) {
  const BenchSetup setup;
  for (int rep = 0; rep < 2; ++rep) {
    const TrialRecord r =
        run_trial(ControllerId::kAgility2, nullptr, {1.0, 0.0, 0.0}, 5, 0.0, setup).record;
    EXPECT_TRUE(r.success);
    // ceil(1.0 / 0.4) = 3 strides plus one step that squares the feet up.
    EXPECT_EQ(r.footsteps, 4);
    EXPECT_NEAR(r.energy_j, 0.16 + 0.64 + 0.36 + 0.04 + 4 * 0.2, 1e-12);
    EXPECT_NEAR(r.time_s, 4 * 0.4 + 0.5, 1e-12);
    EXPECT_NEAR(*r.energy_per_meter, r.energy_j / 1.0, 1e-12);
  }
}

TEST(RunTrialTest, RecordsMatchTrajectories) {
  const BenchSetup setup;
  const CommandGrid grid = small_grid();
  const std::vector<Command> cmds = grid.commands();
  for (ControllerId id : kBaselines) {
    for (std::size_t c = 0; c < cmds.size(); ++c) {
      const TrialRun run = run_trial(id, nullptr, cmds[c], trial_seed(1, c, 0), 0.02, setup);
      EXPECT_EQ(run.record.footsteps, run.final_state.footsteps());
      int non_stand = 0;
      for (const StepRecord& s : run.final_state.step_log) non_stand += s.energy > 0.0;
      EXPECT_EQ(run.record.footsteps, non_stand);
      EXPECT_NEAR(run.record.pos_error, position_error(run.final_state.base, run.goal), 1e-12);
      EXPECT_NEAR(run.record.ang_error,
                  orientation_error(run.final_state.base.theta(), run.goal.theta()), 1e-12);
      EXPECT_NEAR(run.record.energy_j, run.final_state.energy, 1e-12);
      EXPECT_EQ(run.record.actions, run.final_state.actions);
      EXPECT_EQ(static_cast<int>(run.phases.size()), run.record.actions);
    }
  }
}

TEST(TrialSeedTest, SharedAcrossControllersDistinctAcrossTrials) {
  std::set<std::uint64_t> seen;
  for (int c = 0; c < 64; ++c) {
    for (int t = 0; t < 16; ++t) seen.insert(trial_seed(7, c, t));
  }
  EXPECT_EQ(seen.size(), 64u * 16u);
  EXPECT_NE(trial_seed(7, 0, 0), trial_seed(8, 0, 0));
}

TEST(RunGridTest, ThreadCountDoesNotChangeOutputs) {
  const BenchSetup setup;
  const std::vector<ControllerId> ids(std::begin(kBaselines), std::end(kBaselines));
  const auto a = run_grid(ids, {}, small_grid(), 11, setup, 1);
  const auto b = run_grid(ids, {}, small_grid(), 11, setup, 4);
  ASSERT_EQ(a.size(), b.size());
  ASSERT_EQ(a.size(), 3u * 48u * 2u);
  const BenchReport ra = aggregate(a), rb = aggregate(b);
  EXPECT_EQ(report_json(ra), report_json(rb));
  EXPECT_EQ(table_csv(ra), table_csv(rb));
  EXPECT_EQ(difficulty_csv(ra.curves), difficulty_csv(rb.curves));
  EXPECT_EQ(a[0].controller, ControllerId::kFsm);
  EXPECT_EQ(a[1].trial_index, 1);
  EXPECT_EQ(a[2].command_index, 1);
}

TEST(RunGridTest, LearnedControllerWithoutPolicyThrows) {
  const std::vector<ControllerId> ids{ControllerId::kAgility2, ControllerId::kGoTo};
  EXPECT_THROW(run_grid(ids, {}, small_grid(), 1, BenchSetup{}, 1), std::invalid_argument);
}

TEST(AggregateTest, BaselineSelfNormalizes) {
  const BenchSetup setup;
  const std::vector<ControllerId> ids(std::begin(kBaselines), std::end(kBaselines));
  const auto records = run_grid(ids, {}, small_grid(), 3, setup, 0);
  const BenchReport report = aggregate(records);
  ASSERT_EQ(report.summaries.size(), 3u);
  const ControllerSummary& a2 = report.summaries[1];
  EXPECT_EQ(a2.controller, ControllerId::kAgility2);
  for (Metric m : {Metric::kEnergy, Metric::kTime, Metric::kFootsteps}) {
    EXPECT_EQ(*a2.normalized_mean.at(m), 1.0);
    EXPECT_NEAR(*a2.normalized_std.at(m), a2.raw.at(m).stddev / a2.raw.at(m).mean, 1e-15);
  }
  for (const ControllerSummary& s : report.summaries) {
    EXPECT_EQ(s.trials, 96);
    EXPECT_EQ(s.successes, 96);
  }
  EXPECT_TRUE(report.failures.empty());
  // FSM rotates then walks, so it needs more footsteps than Agility-2.
  EXPECT_GT(*report.summaries[0].normalized_mean.at(Metric::kFootsteps), 1.0);
}

TEST(AggregateTest, RawStatsMatchRecords) {
  const BenchSetup setup;
  const std::vector<ControllerId> ids{ControllerId::kAgility2};
  const auto records = run_grid(ids, {}, small_grid(), 3, setup, 0);
  double sum = 0.0, sq = 0.0;
  for (const TrialRecord& r : records) sum += r.time_s;
  const double mean = sum / records.size();
  for (const TrialRecord& r : records) sq += (r.time_s - mean) * (r.time_s - mean);
  const BenchReport report = aggregate(records);
  EXPECT_NEAR(report.summaries[0].raw.at(Metric::kTime).mean, mean, 1e-12);
  EXPECT_NEAR(report.summaries[0].raw.at(Metric::kTime).stddev, std::sqrt(sq / records.size()),
              1e-12);
  // Baseline alone is valid and normalizes to ones.
  const std::string csv = table_csv(report);
  EXPECT_EQ(count_lines(csv), 2);
  EXPECT_NE(csv.find("agility2,1,1,"), std::string::npos);
}

TEST(AggregateTest, MissingBaselineThrows) {
  const std::vector<ControllerId> ids{ControllerId::kFsm};
  const auto records = run_grid(ids, {}, small_grid(), 3, BenchSetup{}, 0);
  EXPECT_THROW(aggregate(records), std::invalid_argument);
}

TEST(AggregateTest, ZeroBaselineMean) {
  TrialRecord base;
  base.controller = ControllerId::kAgility2;
  base.success = true;
  TrialRecord other = base;
  other.controller = ControllerId::kFsm;
  other.pos_error = 0.01;
  const std::vector<TrialRecord> records{base, other};
  const BenchReport report = aggregate(records);
  // 0 / 0 is taken as 1 for the baseline itself; 0.01 / 0 is undefined.
  EXPECT_EQ(*report.summaries[0].normalized_mean.at(Metric::kPosError), 1.0);
  EXPECT_FALSE(report.summaries[1].normalized_mean.at(Metric::kPosError).has_value());
  EXPECT_NE(table_csv(report).find("NA"), std::string::npos);
  EXPECT_NE(report_json(report).find("null"), std::string::npos);
}

TEST(AggregateTest, FailuresExcludedAndListed) {
  TrialRecord ok;
  ok.controller = ControllerId::kAgility2;
  ok.success = true;
  ok.footsteps = 4;
  TrialRecord bad = ok;
  bad.success = false;
  bad.footsteps = 200;
  bad.trial_index = 1;
  const std::vector<TrialRecord> records{ok, bad};
  const BenchReport report = aggregate(records);
  EXPECT_EQ(report.summaries[0].raw.at(Metric::kFootsteps).mean, 4.0);
  ASSERT_EQ(report.failures.size(), 1u);
  EXPECT_EQ(report.failures[0].trial_index, 1);
}

TEST(AggregateTest, NormalizationInvolution) {
  const BenchSetup setup;
  const std::vector<ControllerId> ids(std::begin(kBaselines), std::end(kBaselines));
  const BenchReport report = aggregate(run_grid(ids, {}, small_grid(), 5, setup, 0));
  const auto again = normalize_against(report, report);
  int defined = 0;
  for (const auto& [id, metrics] : again) {
    for (const auto& [m, v] : metrics) {
      const auto& orig = std::find_if(report.summaries.begin(), report.summaries.end(),
                                      [&](const ControllerSummary& s) { return s.controller == id; })
                             ->normalized_mean.at(m);
      EXPECT_EQ(v.has_value(), orig.has_value() && *orig != 0.0);
      if (v) {
        EXPECT_NEAR(*v, 1.0, 1e-15);
        ++defined;
      }
    }
  }
  EXPECT_GT(defined, 9);
}

TEST(DifficultyTest, CurvesPartitionAndMonotone) {
  CommandGrid grid;
  grid.distances = {0.0, 0.5, 1.0, 2.0, 4.0};
  grid.trials_per_command = 2;
  const std::vector<ControllerId> ids{ControllerId::kAgility2, ControllerId::kAgility3};
  const auto records = run_grid(ids, {}, grid, 9, BenchSetup{}, 0);
  const DifficultyCurves curves = difficulty_curves(records);
  EXPECT_EQ(curves.difficulty.size(), grid.distances.size() * grid.headings.size());
  EXPECT_EQ(curves.difficulty.at({0.0, 0.0}), 0.0);
  for (double h : grid.headings) {
    double prev = -1.0;
    for (double r : grid.distances) {
      const double d = curves.difficulty.at({r, h});
      EXPECT_GE(d, prev) << "r=" << r << " heading=" << h;
      prev = d;
    }
  }
  int covered = 0;
  std::set<int> bins;
  for (const DifficultyBin& b : curves.bins) {
    covered += b.commands;
    EXPECT_TRUE(bins.insert(b.difficulty).second);
    EXPECT_EQ(b.means.size(), 2u);
  }
  EXPECT_EQ(covered, static_cast<int>(curves.difficulty.size()));
  const std::string csv = difficulty_csv(curves);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "difficulty,commands,controller,trials,time_s,energy_j,footsteps");
  EXPECT_EQ(count_lines(csv), 1 + 2 * static_cast<int>(curves.bins.size()));
}

TEST(ReportTest, JsonShape) {
  const std::vector<ControllerId> ids{ControllerId::kAgility2, ControllerId::kFsm};
  const BenchReport report = aggregate(run_grid(ids, {}, small_grid(), 5, BenchSetup{}, 0));
  const std::string json = report_json(report);
  EXPECT_EQ(json, report_json(report));
  for (const char* key : {"\"baseline\"", "\"controllers\"", "\"failures\"", "\"difficulty\"",
                          "\"normalized\"", "\"success_rate\""}) {
    EXPECT_NE(json.find(key), std::string::npos) << key;
  }
  const std::string csv = table_csv(report);
  EXPECT_EQ(count_lines(csv), 3);
  EXPECT_EQ(csv.substr(0, csv.find(',')), "controller");
}

}  // namespace
}  // namespace goto_bench
