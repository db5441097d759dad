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

#include "goto_bench/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace goto_bench {

namespace {

enum class TranslateStyle { kTrapezoid, kNominal, kOmni };

constexpr PhaseId kBearingChain[] = {PhaseId::kOrientBearing,
                                     PhaseId::kTranslate, PhaseId::kOrientFinal,
                                     PhaseId::kSettle};
constexpr PhaseId kHeadingFirstChain[] = {
    PhaseId::kOrientFinal, PhaseId::kTranslate, PhaseId::kSettle};
constexpr PhaseId kLearnedChain[] = {PhaseId::kSettle};

Pose2 stance_center(const StepperState& s, const StepperConfig& cfg) {
  return implied_base(s.foot(s.stance_foot()), s.stance_foot(), cfg);
}

bool at_goal(const StepperState& s, const Pose2& goal, const StepperConfig& cfg,
             const BaselineTuning& t) {
  return feet_in_stance(s, cfg) &&
         position_error(s.base, goal) < t.done_pos_tol &&
         orientation_error(s.base.theta(), goal.theta()) < t.done_ang_tol;
}

bool headings_aligned(const StepperState& s, double target, double tol) {
  return std::fabs(wrap_angle(target - s.left_foot.theta())) < tol &&
         std::fabs(wrap_angle(target - s.right_foot.theta())) < tol;
}

// Leapfrog turn about `pivot`: each step lands the swing foot in the nominal
// slot of a base rotated at most max_step_yaw past the stance foot.
FootstepAction turn_step(const StepperState& s, Vec2 pivot, double target,
                         const StepperConfig& cfg) {
  const double stance_heading = s.foot(s.stance_foot()).theta();
  const double turn = std::clamp(wrap_angle(target - stance_heading),
                                 -cfg.max_step_yaw, cfg.max_step_yaw);
  const Pose2 next_base(pivot.x, pivot.y, stance_heading + turn);
  return action_to_place(s, nominal_slot(next_base, s.swing_foot(), cfg), cfg);
}

// Longest step along `dir` (world frame, unit) the swing foot can take
// without crossing under the stance foot.
double reachable_length(const StepperState& s, Vec2 dir,
                        const StepperConfig& cfg) {
  const Vec2 body = s.foot(s.stance_foot()).unrotate(dir);
  const double inward = cfg.stance_width - cfg.lateral_margin;
  double len = cfg.max_step_len;
  if (s.swing_foot() == Foot::kRight && body.y > 0.0) {
    len = std::min(len, inward / body.y);
  } else if (s.swing_foot() == Foot::kLeft && body.y < 0.0) {
    len = std::min(len, inward / -body.y);
  }
  return len;
}

// Step-length cap from a trapezoid with `ramp` ramp steps: grows by one
// increment per step from the start and shrinks so that the remaining
// distance can still be covered by a descending ramp.
double trapezoid_length(int steps_taken, double remaining, double max_len,
                        int ramp) {
  const double unit = max_len / (ramp + 1);
  const int up = std::min(steps_taken + 1, ramp + 1);
  int down = 1;
  for (int j = 1; j <= ramp + 1; ++j) {
    if (0.5 * j * (j + 1) * unit <= remaining + 1e-12) down = j;
  }
  return unit * std::min(up, down);
}

FootstepAction translate_step(const StepperState& s, const Pose2& goal,
                              double hold_heading, TranslateStyle style,
                              int steps_taken, const StepperConfig& cfg,
                              const BaselineTuning& t) {
  const Pose2 center = stance_center(s, cfg);
  const Vec2 offset = goal.translation() - center.translation();
  const double dist = offset.norm();
  const Vec2 dir{offset.x / dist, offset.y / dist};
  double len = std::min(dist, reachable_length(s, dir, cfg));
  if (style == TranslateStyle::kTrapezoid) {
    len = std::min(len, trapezoid_length(steps_taken, dist, cfg.max_step_len,
                                         t.ramp_steps));
  }
  const Vec2 p = center.translation() + len * dir;
  const Pose2 next_base(p.x, p.y, hold_heading);
  return action_to_place(s, nominal_slot(next_base, s.swing_foot(), cfg), cfg);
}

FootstepAction square_up_step(const StepperState& s, const Pose2& goal,
                              const StepperConfig& cfg) {
  return action_to_place(s, nominal_slot(goal, s.swing_foot(), cfg), cfg);
}

ControlStep run_phased(std::span<const PhaseId> chain, TranslateStyle style,
                       bool final_pivot_at_goal, const StepperState& state,
                       const Pose2& goal, const ControllerPhase& phase_in,
                       const StepperConfig& cfg, const BaselineTuning& t) {
  ControllerPhase ph = phase_in;

  auto enter = [&](PhaseId id) {
    ph.id = id;
    ph.steps_in_phase = 0;
    const Pose2 center = stance_center(state, cfg);
    switch (id) {
      case PhaseId::kOrientBearing: {
        ph.pivot = center.translation();
        const Vec2 to_goal = goal.translation() - ph.pivot;
        ph.target_heading = std::atan2(to_goal.y, to_goal.x);
        break;
      }
      case PhaseId::kOrientFinal:
        ph.pivot = final_pivot_at_goal ? goal.translation()
                                       : center.translation();
        ph.target_heading = goal.theta();
        break;
      case PhaseId::kTranslate:
        // Bearing-first controllers keep the bearing they turned to;
        // heading-first controllers already face the goal heading.
        if (chain.front() != PhaseId::kOrientBearing) {
          ph.target_heading = goal.theta();
        }
        break;
      case PhaseId::kSettle:
        break;
    }
  };
  auto advance_phase = [&]() {
    const auto it = std::find(chain.begin(), chain.end(), ph.id);
    enter(it + 1 == chain.end() ? PhaseId::kSettle : *(it + 1));
  };

  if (!ph.initialized) {
    ph.initialized = true;
    enter(chain.front());
    if (ph.id == PhaseId::kOrientBearing &&
        (goal.translation() - ph.pivot).norm() < t.done_pos_tol) {
      // No meaningful bearing; go straight to the final turn.
      enter(PhaseId::kOrientFinal);
    }
  }

  // Each phase either emits an action or hands over to the next one.
  for (std::size_t guard = 0; guard <= chain.size(); ++guard) {
    if (ph.id != PhaseId::kSettle && at_goal(state, goal, cfg, t)) {
      enter(PhaseId::kSettle);
    }
    switch (ph.id) {
      case PhaseId::kOrientBearing:
      case PhaseId::kOrientFinal:
        if (headings_aligned(state, ph.target_heading, t.heading_tol)) {
          advance_phase();
          continue;
        }
        ++ph.steps_in_phase;
        return {turn_step(state, ph.pivot, ph.target_heading, cfg), ph};
      case PhaseId::kTranslate: {
        const Pose2 center = stance_center(state, cfg);
        if (position_error(center, goal) < t.arrive_tol) {
          advance_phase();
          continue;
        }
        const int taken = ph.steps_in_phase++;
        return {translate_step(state, goal, ph.target_heading, style, taken,
                               cfg, t),
                ph};
      }
      case PhaseId::kSettle:
        if (at_goal(state, goal, cfg, t)) {
          return {FootstepAction::stand(), ph};
        }
        ++ph.steps_in_phase;
        return {square_up_step(state, goal, cfg), ph};
    }
  }
  throw std::logic_error("controller phase machine did not converge");
}

FootstepAction action_from_output(const PolicyOutput& out,
                                  const std::array<double, kOutputSize>& scale) {
  const double mag = std::sqrt(out[0] * out[0] + out[1] * out[1] + out[2] * out[2]);
  if (mag < kStandThreshold) return FootstepAction::stand();
  return {out[0] * scale[0], out[1] * scale[1], out[2] * scale[2], false};
}

}  // namespace

std::string to_string(ControllerId id) {
  switch (id) {
    case ControllerId::kFsm: return "fsm";
    case ControllerId::kAgility2: return "agility2";
    case ControllerId::kAgility3: return "agility3";
    case ControllerId::kHier: return "hier";
    case ControllerId::kGoTo: return "goto";
  }
  return "?";
}

ControllerId parse_controller_id(const std::string& name) {
  for (ControllerId id : kAllControllers) {
    if (to_string(id) == name) return id;
  }
  throw std::invalid_argument("unknown controller '" + name +
                              "' (expected fsm|agility2|agility3|hier|goto)");
}

bool is_learned(ControllerId id) {
  return id == ControllerId::kHier || id == ControllerId::kGoTo;
}

std::string to_string(PhaseId id) {
  switch (id) {
    case PhaseId::kOrientBearing: return "orient_bearing";
    case PhaseId::kOrientFinal: return "orient_final";
    case PhaseId::kTranslate: return "translate";
    case PhaseId::kSettle: return "settle";
  }
  return "?";
}

std::span<const PhaseId> phase_chain(ControllerId id) {
  switch (id) {
    case ControllerId::kFsm:
    case ControllerId::kAgility3:
      return kBearingChain;
    case ControllerId::kAgility2:
      return kHeadingFirstChain;
    default:
      return kLearnedChain;
  }
}

VelocityCommand clamp_command(const VelocityCommand& cmd,
                              const VelocityLimits& limits) {
  return {std::clamp(cmd.vx, -limits.vx, limits.vx),
          std::clamp(cmd.vy, -limits.vy, limits.vy),
          std::clamp(cmd.omega, -limits.omega, limits.omega)};
}

FootstepAction gait_generator(const VelocityCommand& cmd,
                              const StepperConfig& cfg) {
  if (!std::isfinite(cmd.vx) || !std::isfinite(cmd.vy) ||
      !std::isfinite(cmd.omega)) {
    throw std::invalid_argument("gait_generator: non-finite command");
  }
  if (cmd.vx == 0.0 && cmd.vy == 0.0 && cmd.omega == 0.0) {
    return FootstepAction::stand();
  }
  FootstepAction a{cmd.vx * cfg.step_duration, cmd.vy * cfg.step_duration,
                   cmd.omega * cfg.step_duration, false};
  const double len = std::hypot(a.dx, a.dy);
  if (len > cfg.max_step_len) {
    a.dx *= cfg.max_step_len / len;
    a.dy *= cfg.max_step_len / len;
  }
  a.dyaw = std::clamp(a.dyaw, -cfg.max_step_yaw, cfg.max_step_yaw);
  return a;
}

ControlStep fsm_controller(const StepperState& state, const Pose2& goal,
                           const ControllerPhase& phase,
                           const StepperConfig& cfg,
                           const BaselineTuning& tuning) {
  return run_phased(kBearingChain, TranslateStyle::kTrapezoid, true, state,
                    goal, phase, cfg, tuning);
}

ControlStep agility3_controller(const StepperState& state, const Pose2& goal,
                                const ControllerPhase& phase,
                                const StepperConfig& cfg,
                                const BaselineTuning& tuning) {
  return run_phased(kBearingChain, TranslateStyle::kNominal, true, state, goal,
                    phase, cfg, tuning);
}

ControlStep agility2_controller(const StepperState& state, const Pose2& goal,
                                const ControllerPhase& phase,
                                const StepperConfig& cfg,
                                const BaselineTuning& tuning) {
  return run_phased(kHeadingFirstChain, TranslateStyle::kOmni, false, state,
                    goal, phase, cfg, tuning);
}

std::array<double, kOutputSize> action_scale(PolicyMode mode,
                                             const StepperConfig& cfg,
                                             const VelocityLimits& limits) {
  if (mode == PolicyMode::kGoTo) {
    return {cfg.max_step_len, cfg.max_step_len, cfg.max_step_yaw};
  }
  return {limits.vx, limits.vy, limits.omega};
}

FootstepAction hierarchical_controller(const PolicyParams& policy,
                                       const StepperState& state,
                                       const Pose2& goal, int step_in_trial,
                                       const StepperConfig& cfg,
                                       const VelocityLimits& limits) {
  policy.validate();
  const PolicyOutput out =
      policy_forward(policy.values, make_observation(state, goal, step_in_trial));
  const FootstepAction scaled =
      action_from_output(out, action_scale(PolicyMode::kHier, cfg, limits));
  if (scaled.is_stand) return scaled;
  return gait_generator(
      clamp_command({scaled.dx, scaled.dy, scaled.dyaw}, limits), cfg);
}

FootstepAction goto_controller(const PolicyParams& policy,
                               const StepperState& state, const Pose2& goal,
                               int step_in_trial, const StepperConfig& cfg) {
  policy.validate();
  const PolicyOutput out =
      policy_forward(policy.values, make_observation(state, goal, step_in_trial));
  return action_from_output(out, action_scale(PolicyMode::kGoTo, cfg, {}));
}

ControllerRunner::ControllerRunner(ControllerId id, const PolicyParams* policy,
                                   const StepperConfig& cfg,
                                   const BaselineTuning& tuning,
                                   const VelocityLimits& limits)
    : id_(id), policy_(policy), cfg_(cfg), tuning_(tuning), limits_(limits) {
  if (is_learned(id)) {
    if (policy == nullptr) {
      throw std::invalid_argument("controller " + to_string(id) +
                                  " needs a trained policy");
    }
    policy->validate();
    const PolicyMode want =
        id == ControllerId::kGoTo ? PolicyMode::kGoTo : PolicyMode::kHier;
    if (policy->mode != want) {
      throw std::invalid_argument("controller " + to_string(id) +
                                  " given a '" + to_string(policy->mode) +
                                  "' policy");
    }
    phase_.id = PhaseId::kSettle;
    phase_.initialized = true;
  }
}

FootstepAction ControllerRunner::next(const StepperState& state,
                                      const Pose2& goal, int step_in_trial) {
  ControlStep out;
  switch (id_) {
    case ControllerId::kFsm:
      out = fsm_controller(state, goal, phase_, cfg_, tuning_);
      break;
    case ControllerId::kAgility2:
      out = agility2_controller(state, goal, phase_, cfg_, tuning_);
      break;
    case ControllerId::kAgility3:
      out = agility3_controller(state, goal, phase_, cfg_, tuning_);
      break;
    case ControllerId::kHier:
      return hierarchical_controller(*policy_, state, goal, step_in_trial,
                                     cfg_, limits_);
    case ControllerId::kGoTo:
      return goto_controller(*policy_, state, goal, step_in_trial, cfg_);
  }
  phase_ = out.phase;
  return out.action;
}

}  // namespace goto_bench
