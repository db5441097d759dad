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

// Feedforward policy shared by the end-to-end GoTo controller and the
// high-level velocity policy of the hierarchical controller.
//
// Observation (6): goal offset in the robot base frame (dx, dy), sin and cos
// of the heading offset, swing foot indicator (+1 left, -1 right), step
// index within the trial over kTimeFeatureSteps, clipped to 1.
// Network: 6 -> 32 tanh -> 32 tanh -> 3 tanh. Outputs are scaled per mode;
// an output vector with norm below kStandThreshold is a stand request.

#ifndef GOTO_BENCH_POLICY_HPP_
#define GOTO_BENCH_POLICY_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "goto_bench/se2.hpp"
#include "goto_bench/stepper.hpp"

namespace goto_bench {

enum class PolicyMode { kGoTo, kHier };

std::string to_string(PolicyMode mode);
// Accepts "goto" and "hier"; throws std::invalid_argument otherwise.
PolicyMode parse_policy_mode(const std::string& name);

inline constexpr int kObservationSize = 6;
inline constexpr int kHiddenSize = 32;
inline constexpr int kOutputSize = 3;
inline constexpr std::size_t kPolicyParamCount =
    kObservationSize * kHiddenSize + kHiddenSize + kHiddenSize * kHiddenSize +
    kHiddenSize + kHiddenSize * kOutputSize + kOutputSize;
static_assert(kPolicyParamCount == 1379);

inline constexpr double kStandThreshold = 0.05;
// Steps after which the time feature saturates at 1.
inline constexpr int kTimeFeatureSteps = 60;

using Observation = std::array<double, kObservationSize>;
using PolicyOutput = std::array<double, kOutputSize>;

Observation make_observation(const StepperState& state, const Pose2& goal,
                             int step_in_trial);

// Raw tanh outputs in [-1, 1]^3. `params` must hold kPolicyParamCount values.
PolicyOutput policy_forward(std::span<const double> params,
                            const Observation& obs);

struct PolicyParams {
  PolicyMode mode = PolicyMode::kGoTo;
  std::uint64_t seed = 0;
  std::vector<double> values = std::vector<double>(kPolicyParamCount, 0.0);

  // Throws std::invalid_argument on a parameter-count mismatch.
  void validate() const;
};

// On-disk form: one line of JSON
//   {"mode":..,"layer_sizes":[6,32,32,3],"action_scale":[..],"seed":..,
//    "param_count":1379}
// terminated by '\n', followed by param_count little-endian IEEE-754 doubles.
void save_policy(const PolicyParams& policy,
                 const std::array<double, kOutputSize>& action_scale,
                 const std::string& path);
PolicyParams load_policy(const std::string& path);

}  // namespace goto_bench

#endif  // GOTO_BENCH_POLICY_HPP_
