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
#include <stdexcept>
#include <string>

#include "goto_bench/text.hpp"

namespace goto_bench {

namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw std::invalid_argument(std::string("StepperConfig: ") + name +
                                " must be finite and > 0");
  }
}

double lateral_sign(Foot f) { return f == Foot::kLeft ? 1.0 : -1.0; }

}  // namespace

void StepperConfig::validate() const {
  require_positive(max_step_len, "max_step_len");
  require_positive(max_step_yaw, "max_step_yaw");
  require_positive(stance_width, "stance_width");
  require_positive(lateral_margin, "lateral_margin");
  require_positive(step_duration, "step_duration");
  require_positive(settle_duration, "settle_duration");
  require_positive(k_lin, "k_lin");
  require_positive(k_ang, "k_ang");
  require_positive(e_base, "e_base");
  require_positive(stance_pos_tol, "stance_pos_tol");
  require_positive(stance_yaw_tol, "stance_yaw_tol");
  if (!(lateral_margin < stance_width)) {
    throw std::invalid_argument(
        "StepperConfig: lateral_margin must be < stance_width");
  }
}

StepperState StepperState::mirrored() const {
  StepperState m;
  m.left_foot = right_foot.mirrored();
  m.right_foot = left_foot.mirrored();
  m.base = base.mirrored();
  m.swing_is_left = !swing_is_left;
  m.clock = clock;
  m.energy = energy;
  m.stand_streak = stand_streak;
  m.actions = actions;
  m.step_log.reserve(step_log.size());
  for (const StepRecord& r : step_log) {
    m.step_log.push_back({r.time, other(r.foot), r.pose.mirrored(), r.energy});
  }
  return m;
}

Pose2 nominal_slot(const Pose2& base, Foot foot, const StepperConfig& cfg) {
  return base.compose(Pose2(0.0, lateral_sign(foot) * 0.5 * cfg.stance_width, 0.0));
}

Pose2 implied_base(const Pose2& foot_pose, Foot foot, const StepperConfig& cfg) {
  return foot_pose.compose(
      Pose2(0.0, -lateral_sign(foot) * 0.5 * cfg.stance_width, 0.0));
}

Pose2 base_from_feet(const Pose2& left, const Pose2& right) {
  const double x = 0.5 * (left.x() + right.x());
  const double y = 0.5 * (left.y() + right.y());
  const double s = std::sin(left.theta()) + std::sin(right.theta());
  const double c = std::cos(left.theta()) + std::cos(right.theta());
  return {x, y, std::atan2(s, c)};
}

FootstepAction clamp_action(const FootstepAction& action, Foot swing,
                            const StepperConfig& cfg) {
  if (action.is_stand) return FootstepAction::stand();
  FootstepAction a = action;
  // Signed lateral offset of the swing foot from the stance foot is
  // dy + sign * width; it must stay on the swing foot's own side.
  const double inward_limit = cfg.stance_width - cfg.lateral_margin;
  if (swing == Foot::kRight) {
    a.dy = std::min(a.dy, inward_limit);
  } else {
    a.dy = std::max(a.dy, -inward_limit);
  }
  const double len = std::hypot(a.dx, a.dy);
  if (len > cfg.max_step_len) {
    const double s = cfg.max_step_len / len;
    a.dx *= s;
    a.dy *= s;
  }
  a.dyaw = std::clamp(a.dyaw, -cfg.max_step_yaw, cfg.max_step_yaw);
  return a;
}

FootstepAction action_to_place(const StepperState& state, const Pose2& target,
                               const StepperConfig& cfg) {
  const Foot swing = state.swing_foot();
  const Pose2 rel = state.foot(state.stance_foot()).between(target);
  return {rel.x(), rel.y() - lateral_sign(swing) * cfg.stance_width, rel.theta(),
          false};
}

StepperState reset(const Pose2& start, double perturb_scale, RngStream& rng,
                   const StepperConfig& cfg) {
  if (!(perturb_scale >= 0.0) || !std::isfinite(perturb_scale)) {
    throw std::invalid_argument("reset: perturb_scale must be >= 0");
  }
  auto perturb = [&](const Pose2& p) {
    const double dx = rng.uniform(-perturb_scale, perturb_scale);
    const double dy = rng.uniform(-perturb_scale, perturb_scale);
    const double dt = rng.uniform(-perturb_scale, perturb_scale);
    return Pose2(p.x() + dx, p.y() + dy, p.theta() + dt);
  };
  StepperState s;
  s.left_foot = nominal_slot(start, Foot::kLeft, cfg);
  s.right_foot = nominal_slot(start, Foot::kRight, cfg);
  if (perturb_scale > 0.0) {
    s.left_foot = perturb(s.left_foot);
    s.right_foot = perturb(s.right_foot);
  }
  s.base = base_from_feet(s.left_foot, s.right_foot);
  s.swing_is_left = false;
  return s;
}

double advance(StepperState& state, const FootstepAction& action,
               const StepperConfig& cfg) {
  if (!std::isfinite(action.dx) || !std::isfinite(action.dy) ||
      !std::isfinite(action.dyaw)) {
    throw std::invalid_argument("step: non-finite action");
  }
  state.actions += 1;
  state.clock = state.actions * cfg.step_duration;
  if (action.is_stand) {
    state.stand_streak += 1;
    return 0.0;
  }
  state.stand_streak = 0;

  const Foot swing = state.swing_foot();
  const FootstepAction a = clamp_action(action, swing, cfg);
  const Pose2& stance = state.foot(state.stance_foot());
  const Pose2 placed = stance.compose(
      Pose2(a.dx, a.dy + lateral_sign(swing) * cfg.stance_width, a.dyaw));

  Pose2& moved = swing == Foot::kLeft ? state.left_foot : state.right_foot;
  const double lin = (placed.translation() - moved.translation()).squared_norm();
  const double ang = wrap_angle(placed.theta() - moved.theta());
  const double e = cfg.k_lin * lin + cfg.k_ang * ang * ang + cfg.e_base;
  moved = placed;

  state.base = base_from_feet(state.left_foot, state.right_foot);
  state.swing_is_left = !state.swing_is_left;
  state.energy += e;
  state.step_log.push_back({state.clock, swing, placed, e});
  return e;
}

StepperState step(const StepperState& state, const FootstepAction& action,
                  const StepperConfig& cfg) {
  StepperState next = state;
  advance(next, action, cfg);
  return next;
}

bool feet_in_stance(const StepperState& state, const StepperConfig& cfg) {
  for (Foot f : {Foot::kLeft, Foot::kRight}) {
    const Pose2 rel = nominal_slot(state.base, f, cfg).between(state.foot(f));
    if (rel.translation().norm() > cfg.stance_pos_tol) return false;
    if (std::fabs(rel.theta()) > cfg.stance_yaw_tol) return false;
  }
  return true;
}

bool is_settled(const StepperState& state, const Pose2& goal, double pos_tol,
                double ang_tol, const StepperConfig& cfg) {
  return state.stand_streak >= 2 && feet_in_stance(state, cfg) &&
         position_error(state.base, goal) < pos_tol &&
         orientation_error(state.base.theta(), goal.theta()) < ang_tol;
}

std::string trace_csv(const StepperState& state) {
  std::string out = "step_index,time_s,foot,x_m,y_m,theta_rad,energy_j\n";
  for (std::size_t i = 0; i < state.step_log.size(); ++i) {
    const StepRecord& r = state.step_log[i];
    out += std::to_string(i);
    out += ',';
    out += format_double(r.time);
    out += ',';
    out += foot_label(r.foot);
    out += ',';
    out += format_double(r.pose.x());
    out += ',';
    out += format_double(r.pose.y());
    out += ',';
    out += format_double(r.pose.theta());
    out += ',';
    out += format_double(r.energy);
    out += '\n';
  }
  return out;
}

}  // namespace goto_bench
