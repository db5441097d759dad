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

#include "goto_bench/stepper.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

namespace goto_bench {
namespace {

StepperState nominal(const Pose2& start = {}) {
  RngStream rng(0);
  return reset(start, 0.0, rng, StepperConfig{});
}

FootstepAction random_action(RngStream& rng) {
  if (rng.uniform() < 0.1) return FootstepAction::stand();
  return {rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8), rng.uniform(-1.2, 1.2), false};
}

// Swing-foot placement relative to the stance foot's nominal mirrored slot.
Pose2 placement(const StepperState& before, const StepRecord& rec, const StepperConfig& cfg) {
  const Pose2& stance = before.foot(other(rec.foot));
  const double sign = rec.foot == Foot::kLeft ? 1.0 : -1.0;
  const Pose2 slot = stance.compose(Pose2(0.0, sign * cfg.stance_width, 0.0));
  return slot.between(rec.pose);
}

double rec_side(Foot swing) { return swing == Foot::kLeft ? 1.0 : -1.0; }

void expect_pose_near(const Pose2& a, const Pose2& b, double tol) {
  EXPECT_NEAR(a.x(), b.x(), tol);
  EXPECT_NEAR(a.y(), b.y(), tol);
  EXPECT_NEAR(orientation_error(a.theta(), b.theta()), 0.0, tol);
}

TEST(ResetTest, NominalStance) {
  const StepperState s = nominal();
  EXPECT_EQ(s.left_foot, Pose2(0, 0.15, 0));
  EXPECT_EQ(s.right_foot, Pose2(0, -0.15, 0));
  EXPECT_EQ(s.base, Pose2(0, 0, 0));
  EXPECT_FALSE(s.swing_is_left);
  EXPECT_EQ(s.footsteps(), 0);
  EXPECT_EQ(s.energy, 0.0);
}

TEST(ResetTest, DeterministicAndBounded) {
  const StepperConfig cfg;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    RngStream a(seed), b(seed);
    const StepperState sa = reset({1, 2, 0.5}, 0.02, a, cfg);
    const StepperState sb = reset({1, 2, 0.5}, 0.02, b, cfg);
    EXPECT_EQ(sa.left_foot, sb.left_foot);
    EXPECT_EQ(sa.right_foot, sb.right_foot);
    for (Foot f : {Foot::kLeft, Foot::kRight}) {
      const Pose2 n = nominal_slot({1, 2, 0.5}, f, cfg);
      EXPECT_LE(std::fabs(sa.foot(f).x() - n.x()), 0.02 + 1e-12);
      EXPECT_LE(std::fabs(sa.foot(f).y() - n.y()), 0.02 + 1e-12);
      EXPECT_LE(orientation_error(sa.foot(f).theta(), n.theta()), 0.02 + 1e-12);
    }
  }
}

TEST(StepTest, ForwardRightStep) {
  const StepperConfig cfg;
  const StepperState s = step(nominal(), {0.2, 0.0, 0.0, false}, cfg);
  expect_pose_near(s.right_foot, {0.2, -0.15, 0.0}, 1e-15);
  expect_pose_near(s.base, {0.1, 0.0, 0.0}, 1e-15);
  EXPECT_EQ(s.left_foot, Pose2(0, 0.15, 0));
  EXPECT_TRUE(s.swing_is_left);
  EXPECT_EQ(s.footsteps(), 1);
  EXPECT_NEAR(s.energy, cfg.k_lin * 0.04 + cfg.e_base, 1e-15);
  EXPECT_NEAR(s.clock, cfg.step_duration, 1e-15);
}

TEST(StepTest, StandAction) {
  const StepperConfig cfg;
  const StepperState s0 = step(nominal(), {0.2, 0.0, 0.1, false}, cfg);
  const StepperState s1 = step(s0, FootstepAction::stand(), cfg);
  EXPECT_EQ(s1.footsteps(), s0.footsteps());
  EXPECT_EQ(s1.energy, s0.energy);
  EXPECT_NEAR(s1.clock - s0.clock, 0.4, 1e-15);
  EXPECT_EQ(s1.left_foot, s0.left_foot);
  EXPECT_EQ(s1.right_foot, s0.right_foot);
  EXPECT_EQ(s1.swing_is_left, s0.swing_is_left);
}

TEST(StepTest, Saturation) {
  const StepperConfig cfg;
  const StepperState s0 = nominal();
  const StepperState s = step(s0, {1.0, 0.0, 2.0, false}, cfg);
  const Pose2 rel = placement(s0, s.step_log.back(), cfg);
  EXPECT_NEAR(rel.translation().norm(), 0.4, 1e-15);
  EXPECT_NEAR(rel.theta(), 0.5, 1e-15);
}

TEST(StepTest, NoCrossing) {
  const StepperConfig cfg;
  const FootstepAction inward{0.0, 1.0, 0.0, false};
  const FootstepAction right = clamp_action(inward, Foot::kRight, cfg);
  EXPECT_NEAR(right.dy, cfg.stance_width - cfg.lateral_margin, 1e-15);
  const FootstepAction left = clamp_action(inward.mirrored(), Foot::kLeft, cfg);
  EXPECT_NEAR(left.dy, -(cfg.stance_width - cfg.lateral_margin), 1e-15);
  const StepperState s = step(nominal(), inward, cfg);
  EXPECT_NEAR(s.left_foot.y() - s.right_foot.y(), cfg.lateral_margin, 1e-15);
}

TEST(StepTest, RejectsNonFinite) {
  StepperState s = nominal();
  EXPECT_THROW(advance(s, {NAN, 0, 0, false}, StepperConfig{}), std::invalid_argument);
}

TEST(StepTest, ActionToPlaceRoundTrip) {
  const StepperConfig cfg;
  RngStream rng(4);
  StepperState s = nominal({0.5, -0.3, 1.0});
  for (int i = 0; i < 200; ++i) {
    const FootstepAction a = clamp_action(random_action(rng), s.swing_foot(), cfg);
    if (a.is_stand) continue;
    const StepperState next = step(s, a, cfg);
    const FootstepAction back = action_to_place(s, next.step_log.back().pose, cfg);
    EXPECT_NEAR(back.dx, a.dx, 1e-12);
    EXPECT_NEAR(back.dy, a.dy, 1e-12);
    EXPECT_NEAR(back.dyaw, a.dyaw, 1e-12);
    s = next;
  }
}

TEST(StepperPropertyTest, DeterminismEnergyCountReachability) {
  const StepperConfig cfg;
  RngStream rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<FootstepAction> actions;
    for (int i = 0; i < 60; ++i) actions.push_back(random_action(rng));
    StepperState a = nominal({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-3, 3)});
    StepperState b = a;
    int non_stand = 0;
    for (const FootstepAction& act : actions) {
      const StepperState before = a;
      advance(a, act, cfg);
      advance(b, act, cfg);
      if (!act.is_stand) {
        ++non_stand;
        const Pose2 rel = placement(before, a.step_log.back(), cfg);
        EXPECT_LE(rel.translation().norm(), cfg.max_step_len + 1e-12);
        EXPECT_LE(std::fabs(rel.theta()), cfg.max_step_yaw + 1e-12);
        // No crossing: the swing foot stays on its own side of the stance foot.
        const double side = rec_side(a.step_log.back().foot);
        EXPECT_GE(side * (rel.y() + side * cfg.stance_width), cfg.lateral_margin - 1e-12);
      }
    }
    EXPECT_EQ(a.footsteps(), non_stand);
    EXPECT_EQ(a.left_foot, b.left_foot);
    EXPECT_EQ(a.right_foot, b.right_foot);
    EXPECT_EQ(a.energy, b.energy);
    double sum = 0.0;
    for (const StepRecord& r : a.step_log) sum += r.energy;
    EXPECT_NEAR(a.energy, sum, 1e-9);
  }
}

TEST(StepperPropertyTest, MirrorEquivariance) {
  const StepperConfig cfg;
  RngStream rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    StepperState a = nominal({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-3, 3)});
    StepperState m = a.mirrored();
    for (int i = 0; i < 40; ++i) {
      const FootstepAction act = random_action(rng);
      advance(a, act, cfg);
      advance(m, act.mirrored(), cfg);
      const StepperState am = a.mirrored();
      expect_pose_near(m.left_foot, am.left_foot, 1e-12);
      expect_pose_near(m.right_foot, am.right_foot, 1e-12);
      expect_pose_near(m.base, am.base, 1e-12);
      EXPECT_NEAR(m.energy, a.energy, 1e-12);
      EXPECT_EQ(m.swing_is_left, am.swing_is_left);
    }
  }
}

TEST(BaseFromFeetTest, CircularMean) {
  const Pose2 base = base_from_feet({0, 1, 3.0}, {0, -1, -3.0});
  EXPECT_NEAR(std::fabs(base.theta()), kPi, 1e-12);
  EXPECT_NEAR(base.y(), 0.0, 1e-15);
}

TEST(IsSettledTest, Examples) {
  const StepperConfig cfg;
  StepperState s = nominal();
  const Pose2 goal(0, 0, 0);
  EXPECT_FALSE(is_settled(s, goal, 0.05, 0.1, cfg));
  advance(s, FootstepAction::stand(), cfg);
  advance(s, FootstepAction::stand(), cfg);
  EXPECT_TRUE(is_settled(s, goal, 0.05, 0.1, cfg));

  StepperState moving = step(nominal({-0.01, 0, 0}), {0.01, 0, 0, false}, cfg);
  EXPECT_LT(position_error(moving.base, goal), 0.05);
  EXPECT_FALSE(is_settled(moving, goal, 0.05, 0.1, cfg));

  StepperState near = nominal({0.049, 0, 0});
  advance(near, FootstepAction::stand(), cfg);
  advance(near, FootstepAction::stand(), cfg);
  EXPECT_TRUE(is_settled(near, goal, 0.05, 0.1, cfg));
  EXPECT_FALSE(is_settled(near, goal, 0.04, 0.1, cfg));
}

TEST(TraceCsvTest, HeaderAndRows) {
  const StepperConfig cfg;
  StepperState s = nominal();
  advance(s, {0.2, 0, 0, false}, cfg);
  advance(s, FootstepAction::stand(), cfg);
  advance(s, {0.2, 0, 0, false}, cfg);
  std::istringstream in(trace_csv(s));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "step_index,time_s,foot,x_m,y_m,theta_rad,energy_j");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 8), "0,0.4,R,");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 2), "1,");
  EXPECT_NEAR(std::stod(line.substr(2)), 1.2, 1e-12);
  EXPECT_EQ(line.substr(line.find(",L,") , 3), ",L,");
  EXPECT_FALSE(std::getline(in, line));
}

TEST(StepperConfigTest, Validation) {
  StepperConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.lateral_margin = 0.4;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = StepperConfig{};
  cfg.max_step_len = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace goto_bench
