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

// Footstep-level planar biped. The robot is two foot poses; an action places
// the swing foot relative to where it would stand nominally beside the stance
// foot, then the feet swap roles.

#ifndef GOTO_BENCH_STEPPER_HPP_
#define GOTO_BENCH_STEPPER_HPP_

#include <array>
#include <string>
#include <vector>

#include "goto_bench/rng.hpp"
#include "goto_bench/se2.hpp"

namespace goto_bench {

struct StepperConfig {
  double max_step_len = 0.4;     // m
  double max_step_yaw = 0.5;     // rad
  double stance_width = 0.3;     // m, nominal left-right foot separation
  double lateral_margin = 0.05;  // m, minimum foot-to-foot lateral offset
  double step_duration = 0.4;    // s
  double settle_duration = 0.5;  // s
  double k_lin = 1.0;            // J/m^2
  double k_ang = 0.5;            // J/rad^2
  double e_base = 0.2;           // J per footstep
  // How far each foot may sit from its nominal slot and still count as a
  // settled standing pose.
  double stance_pos_tol = 0.1;   // m
  double stance_yaw_tol = 0.25;  // rad

  void validate() const;
};

enum class Foot { kLeft, kRight };

inline Foot other(Foot f) { return f == Foot::kLeft ? Foot::kRight : Foot::kLeft; }
inline char foot_label(Foot f) { return f == Foot::kLeft ? 'L' : 'R'; }

struct FootstepAction {
  double dx = 0.0;    // m, along the stance foot heading
  double dy = 0.0;    // m, lateral, relative to the nominal mirrored slot
  double dyaw = 0.0;  // rad, relative to the stance foot heading
  bool is_stand = false;

  static FootstepAction stand() { return {0.0, 0.0, 0.0, true}; }
  FootstepAction mirrored() const { return {dx, -dy, -dyaw, is_stand}; }
  // Stand actions read as the zero vector.
  std::array<double, 3> as_vector() const {
    if (is_stand) return {0.0, 0.0, 0.0};
    return {dx, dy, dyaw};
  }
};

struct StepRecord {
  double time = 0.0;  // clock after the step lands, s
  Foot foot = Foot::kRight;
  Pose2 pose;
  double energy = 0.0;  // J spent on this step
};

struct StepperState {
  Pose2 left_foot;
  Pose2 right_foot;
  Pose2 base;
  bool swing_is_left = false;
  double clock = 0.0;
  double energy = 0.0;
  // Consecutive stand actions ending at the most recent action.
  int stand_streak = 0;
  // Actions applied so far, stand actions included.
  int actions = 0;
  std::vector<StepRecord> step_log;

  Foot swing_foot() const { return swing_is_left ? Foot::kLeft : Foot::kRight; }
  Foot stance_foot() const { return other(swing_foot()); }
  const Pose2& foot(Foot f) const {
    return f == Foot::kLeft ? left_foot : right_foot;
  }
  int footsteps() const { return static_cast<int>(step_log.size()); }

  // Reflection across the world x-axis; the feet exchange roles.
  StepperState mirrored() const;
};

// Where `foot` stands when the base is at `base` in nominal stance.
Pose2 nominal_slot(const Pose2& base, Foot foot, const StepperConfig& cfg);
// The base pose for which `foot_pose` would be the nominal slot of `foot`.
Pose2 implied_base(const Pose2& foot_pose, Foot foot, const StepperConfig& cfg);

// Feet midpoint, circular mean of the two headings.
Pose2 base_from_feet(const Pose2& left, const Pose2& right);

// Projects an action onto the reachable set for the given swing foot:
// lateral no-crossing bound first, then step length, then yaw.
FootstepAction clamp_action(const FootstepAction& action, Foot swing,
                            const StepperConfig& cfg);

// Unclamped action that lands the swing foot exactly on `target`.
FootstepAction action_to_place(const StepperState& state, const Pose2& target,
                               const StepperConfig& cfg);

// Nominal stance about `start`, each foot coordinate perturbed uniformly in
// +-perturb_scale. The right foot swings first.
StepperState reset(const Pose2& start, double perturb_scale, RngStream& rng,
                   const StepperConfig& cfg);

// In-place step. Returns the energy spent (0 for a stand action).
double advance(StepperState& state, const FootstepAction& action,
               const StepperConfig& cfg);

StepperState step(const StepperState& state, const FootstepAction& action,
                  const StepperConfig& cfg);

// Both feet in nominal stance about the base, within the config tolerances.
bool feet_in_stance(const StepperState& state, const StepperConfig& cfg);

// Footstep analogue of "standing still at the goal": the last two actions
// were stand actions, the feet are in stance and the base is within the
// position/heading tolerances of `goal`.
bool is_settled(const StepperState& state, const Pose2& goal, double pos_tol,
                double ang_tol, const StepperConfig& cfg);

// step_index,time_s,foot,x_m,y_m,theta_rad,energy_j
std::string trace_csv(const StepperState& state);

}  // namespace goto_bench

#endif  // GOTO_BENCH_STEPPER_HPP_
