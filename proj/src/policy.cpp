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

#include "goto_bench/policy.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace goto_bench {

std::string to_string(PolicyMode mode) {
  return mode == PolicyMode::kGoTo ? "goto" : "hier";
}

PolicyMode parse_policy_mode(const std::string& name) {
  if (name == "goto") return PolicyMode::kGoTo;
  if (name == "hier") return PolicyMode::kHier;
  throw std::invalid_argument("unknown policy mode '" + name +
                              "' (expected goto|hier)");
}

Observation make_observation(const StepperState& state, const Pose2& goal,
                             int step_in_trial) {
  const PoseDelta d = pose_delta(state.base, goal);
  const double t = std::min(
      1.0, static_cast<double>(step_in_trial) / kTimeFeatureSteps);
  return {d.dx_body, d.dy_body,  std::sin(d.dtheta), std::cos(d.dtheta),
          state.swing_is_left ? 1.0 : -1.0, t};
}

PolicyOutput policy_forward(std::span<const double> params,
                            const Observation& obs) {
  if (params.size() != kPolicyParamCount) {
    throw std::invalid_argument("policy_forward: expected " +
                                std::to_string(kPolicyParamCount) +
                                " parameters, got " +
                                std::to_string(params.size()));
  }
  const double* p = params.data();
  const double* w1 = p;
  const double* b1 = w1 + kHiddenSize * kObservationSize;
  const double* w2 = b1 + kHiddenSize;
  const double* b2 = w2 + kHiddenSize * kHiddenSize;
  const double* w3 = b2 + kHiddenSize;
  const double* b3 = w3 + kOutputSize * kHiddenSize;

  std::array<double, kHiddenSize> h1;
  for (int i = 0; i < kHiddenSize; ++i) {
    double acc = b1[i];
    for (int j = 0; j < kObservationSize; ++j) {
      acc += w1[i * kObservationSize + j] * obs[j];
    }
    h1[i] = std::tanh(acc);
  }
  std::array<double, kHiddenSize> h2;
  for (int i = 0; i < kHiddenSize; ++i) {
    double acc = b2[i];
    for (int j = 0; j < kHiddenSize; ++j) acc += w2[i * kHiddenSize + j] * h1[j];
    h2[i] = std::tanh(acc);
  }
  PolicyOutput out;
  for (int i = 0; i < kOutputSize; ++i) {
    double acc = b3[i];
    for (int j = 0; j < kHiddenSize; ++j) acc += w3[i * kHiddenSize + j] * h2[j];
    out[i] = std::tanh(acc);
  }
  return out;
}

void PolicyParams::validate() const {
  if (values.size() != kPolicyParamCount) {
    throw std::invalid_argument("PolicyParams: expected " +
                                std::to_string(kPolicyParamCount) +
                                " parameters, got " +
                                std::to_string(values.size()));
  }
}

void save_policy(const PolicyParams& policy,
                 const std::array<double, kOutputSize>& action_scale,
                 const std::string& path) {
  policy.validate();
  nlohmann::ordered_json header;
  header["mode"] = to_string(policy.mode);
  header["layer_sizes"] = {kObservationSize, kHiddenSize, kHiddenSize,
                           kOutputSize};
  header["action_scale"] = action_scale;
  header["seed"] = policy.seed;
  header["param_count"] = kPolicyParamCount;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write policy file " + path);
  out << header.dump() << '\n';
  for (double v : policy.values) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    char bytes[8];
    for (int i = 0; i < 8; ++i) {
      bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xffU);
    }
    out.write(bytes, 8);
  }
  if (!out) throw std::runtime_error("failed writing policy file " + path);
}

PolicyParams load_policy(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open policy file " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("policy file " + path + " has no header");
  }
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("policy file " + path + ": bad header: " +
                             e.what());
  }
  PolicyParams policy;
  policy.mode = parse_policy_mode(header.at("mode").get<std::string>());
  policy.seed = header.at("seed").get<std::uint64_t>();
  const auto layers = header.at("layer_sizes").get<std::vector<int>>();
  if (layers != std::vector<int>{kObservationSize, kHiddenSize, kHiddenSize,
                                 kOutputSize}) {
    throw std::runtime_error("policy file " + path +
                             ": unsupported layer_sizes");
  }
  const auto count = header.value("param_count", kPolicyParamCount);
  if (count != kPolicyParamCount) {
    throw std::runtime_error("policy file " + path + ": param_count " +
                             std::to_string(count) + " != " +
                             std::to_string(kPolicyParamCount));
  }
  policy.values.assign(kPolicyParamCount, 0.0);
  for (double& v : policy.values) {
    unsigned char bytes[8];
    if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
      throw std::runtime_error("policy file " + path + " is truncated");
    }
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= std::uint64_t{bytes[i]} << (8 * i);
    v = std::bit_cast<double>(bits);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw std::runtime_error("policy file " + path + " has trailing bytes");
  }
  return policy;
}

}  // namespace goto_bench
