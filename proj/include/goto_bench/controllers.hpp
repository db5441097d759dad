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

// Baseline SE(2)-target controllers and the adapters that drive the stepper
// from a learned policy. Every controller maps (state, goal) to one footstep
// action; the phase-structured baselines also thread a caller-owned phase.

#ifndef GOTO_BENCH_CONTROLLERS_HPP_
#define GOTO_BENCH_CONTROLLERS_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>

#include "goto_bench/policy.hpp"
#include "goto_bench/se2.hpp"
#include "goto_bench/stepper.hpp"

namespace goto_bench {

enum class ControllerId { kFsm, kAgility2, kAgility3, kHier, kGoTo };

inline constexpr std::array<ControllerId, 5> kAllControllers = {
    ControllerId::kFsm, ControllerId::kAgility2, ControllerId::kAgility3,
    ControllerId::kHier, ControllerId::kGoTo};

std::string to_string(ControllerId id);
// fsm | agility2 | agility3 | hier | goto
ControllerId parse_controller_id(const std::string& name);
bool is_learned(ControllerId id);

enum class PhaseId { kOrientBearing, kOrientFinal, kTranslate, kSettle };

std::string to_string(PhaseId id);

// Per-trial controller memory. `pivot` is the point the robot turns about
// during an orient phase; `target_heading` the heading it turns to.
struct ControllerPhase {
  PhaseId id = PhaseId::kOrientBearing;
  int steps_in_phase = 0;
  bool initialized = false;
  Vec2 pivot;
  double target_heading = 0.0;
};

// Phase order each baseline walks through; phases never repeat.
std::span<const PhaseId> phase_chain(ControllerId id);

// Hand-tuned constants shared by the phase-structured baselines.
struct BaselineTuning {
  double heading_tol = 0.05;  // rad, orient phases end below this
  int ramp_steps = 3;         // trapezoid ramp length for the FSM
  // A baseline stops stepping once the base is this close to the goal with
  // the feet in stance. Tighter than the success thresholds.
  double done_pos_tol = 0.03;
  double done_ang_tol = 0.05;
  // Translation is finished when the stance foot's implied base is this close.
  double arrive_tol = 1e-6;
};

struct VelocityCommand {
  double vx = 0.0;     // m/s, body frame
  double vy = 0.0;     // m/s, body frame
  double omega = 0.0;  // rad/s
};

struct VelocityLimits {
  double vx = 1.0;
  double vy = 1.0;
  double omega = 1.25;
};

VelocityCommand clamp_command(const VelocityCommand& cmd,
                              const VelocityLimits& limits);

// Velocity held for one step_duration becomes a footstep displacement,
// saturated at the step length and yaw limits. The zero command stands.
FootstepAction gait_generator(const VelocityCommand& cmd,
                              const StepperConfig& cfg);

struct ControlStep {
  FootstepAction action;
  ControllerPhase phase;
};

// Face the goal, walk to it with a trapezoidal step-length profile, turn to
// the goal heading.
ControlStep fsm_controller(const StepperState& state, const Pose2& goal,
                           const ControllerPhase& phase,
                           const StepperConfig& cfg,
                           const BaselineTuning& tuning = {});

// Face the goal, walk to it at nominal step length, turn to the goal heading.
ControlStep agility3_controller(const StepperState& state, const Pose2& goal,
                                const ControllerPhase& phase,
                                const StepperConfig& cfg,
                                const BaselineTuning& tuning = {});

// Turn to the goal heading, then side/back/forward-step to the goal position.
ControlStep agility2_controller(const StepperState& state, const Pose2& goal,
                                const ControllerPhase& phase,
                                const StepperConfig& cfg,
                                const BaselineTuning& tuning = {});

// Policy output scale for each mode.
std::array<double, kOutputSize> action_scale(PolicyMode mode,
                                             const StepperConfig& cfg,
                                             const VelocityLimits& limits);

// Learned high-level velocity command, tracked by gait_generator.
FootstepAction hierarchical_controller(const PolicyParams& policy,
                                       const StepperState& state,
                                       const Pose2& goal, int step_in_trial,
                                       const StepperConfig& cfg,
                                       const VelocityLimits& limits = {});

// End-to-end learned footstep policy.
FootstepAction goto_controller(const PolicyParams& policy,
                               const StepperState& state, const Pose2& goal,
                               int step_in_trial, const StepperConfig& cfg);

// Uniform driver over all five controllers for one trial.
class ControllerRunner {
 public:
  // `policy` is required for learned controllers and must outlive the runner.
  ControllerRunner(ControllerId id, const PolicyParams* policy,
                   const StepperConfig& cfg, const BaselineTuning& tuning = {},
                   const VelocityLimits& limits = {});

  FootstepAction next(const StepperState& state, const Pose2& goal,
                      int step_in_trial);

  ControllerId id() const { return id_; }
  const ControllerPhase& phase() const { return phase_; }

 private:
  ControllerId id_;
  const PolicyParams* policy_;
  StepperConfig cfg_;
  BaselineTuning tuning_;
  VelocityLimits limits_;
  ControllerPhase phase_;
};

}  // namespace goto_bench

#endif  // GOTO_BENCH_CONTROLLERS_HPP_
