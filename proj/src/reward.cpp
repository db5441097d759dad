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

#include "goto_bench/reward.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace goto_bench {

namespace {

void require_weight(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument(std::string("RewardConfig: ") + name +
                                " must be finite and >= 0");
  }
}

}  // namespace

void RewardConfig::validate() const {
  require_weight(w_c, "w_c");
  require_weight(a_p, "a_p");
  require_weight(a_o, "a_o");
  require_weight(w_p, "w_p");
  require_weight(w_o, "w_o");
  require_weight(k_action, "k_action");
  require_weight(k_energy, "k_energy");
  if (!(a_p + a_o > 0.0)) {
    throw std::invalid_argument("RewardConfig: a_p + a_o must be positive");
  }
}

double constellation_reward(const DistanceBreakdown& d,
                            const RewardConfig& cfg) {
  return std::exp(-cfg.w_c * d.total);
}

double additive_reward(double d_p, double d_o, const RewardConfig& cfg) {
  return cfg.a_p * std::exp(-cfg.w_p * d_p) + cfg.a_o * std::exp(-cfg.w_o * d_o);
}

double regularization_reward(std::span<const double> prev_action,
                             std::span<const double> action,
                             double step_energy, const RewardConfig& cfg) {
  if (prev_action.size() != action.size()) {
    throw std::invalid_argument("regularization_reward: action size " +
                                std::to_string(action.size()) +
                                " != previous " +
                                std::to_string(prev_action.size()));
  }
  double change = 0.0;
  for (std::size_t i = 0; i < action.size(); ++i) {
    const double diff = action[i] - prev_action[i];
    change += diff * diff;
  }
  return -cfg.k_action * change - cfg.k_energy * step_energy;
}

double total_reward(const DistanceBreakdown& d,
                    std::span<const double> prev_action,
                    std::span<const double> action, double step_energy,
                    const RewardConfig& cfg) {
  return constellation_reward(d, cfg) +
         regularization_reward(prev_action, action, step_energy, cfg);
}

}  // namespace goto_bench
