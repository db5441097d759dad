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

#ifndef GOTO_BENCH_REWARD_HPP_
#define GOTO_BENCH_REWARD_HPP_

#include <span>

#include "goto_bench/se2.hpp"

namespace goto_bench {

struct RewardConfig {
  double w_c = 0.2;  // constellation decay, 1/m^2
  // Additive baseline (ablation arm only).
  double a_p = 0.5;
  double a_o = 0.5;
  double w_p = 0.5;  // 1/m^2
  double w_o = 0.5;  // 1/rad^2
  // Regularization proxy.
  double k_action = 0.05;
  double k_energy = 0.1;  // per joule

  // Throws std::invalid_argument when a weight is negative or non-finite.
  void validate() const;
};

// exp(-w_c * d_con), in (0, 1].
double constellation_reward(const DistanceBreakdown& d, const RewardConfig& cfg);

// a_p exp(-w_p d_p) + a_o exp(-w_o d_o).
double additive_reward(double d_p, double d_o, const RewardConfig& cfg);

// -k_action |action - prev|^2 - k_energy * step_energy. Never positive.
double regularization_reward(std::span<const double> prev_action,
                             std::span<const double> action,
                             double step_energy, const RewardConfig& cfg);

double total_reward(const DistanceBreakdown& d,
                    std::span<const double> prev_action,
                    std::span<const double> action, double step_energy,
                    const RewardConfig& cfg);

}  // namespace goto_bench

#endif  // GOTO_BENCH_REWARD_HPP_
