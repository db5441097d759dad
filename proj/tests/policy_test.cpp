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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "goto_bench/controllers.hpp"
#include "gtest/gtest.h"

namespace goto_bench {
namespace {

constexpr std::size_t kB1 = kHiddenSize * kObservationSize;
constexpr std::size_t kW2 = kB1 + kHiddenSize;
constexpr std::size_t kB2 = kW2 + kHiddenSize * kHiddenSize;
constexpr std::size_t kW3 = kB2 + kHiddenSize;
constexpr std::size_t kB3 = kW3 + kOutputSize * kHiddenSize;

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("goto_bench_" + name)).string();
}

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

StepperState nominal(const Pose2& start = {}) {
  RngStream rng(0);
  return reset(start, 0.0, rng, StepperConfig{});
}

TEST(PolicyTest, ParameterCount) {
  EXPECT_EQ(kPolicyParamCount, 1379u);
  EXPECT_EQ(kB3 + kOutputSize, kPolicyParamCount);
}

TEST(ObservationTest, Features) {
  const StepperState s = nominal({1.0, 1.0, kPi / 2});
  const Observation o = make_observation(s, {1.0, 2.0, kPi / 2 + 0.3}, 30);
  EXPECT_NEAR(o[0], 1.0, 1e-12);
  EXPECT_NEAR(o[1], 0.0, 1e-12);
  EXPECT_NEAR(o[2], std::sin(0.3), 1e-12);
  EXPECT_NEAR(o[3], std::cos(0.3), 1e-12);
  EXPECT_EQ(o[4], -1.0);  // right foot swings first
  EXPECT_EQ(o[5], 0.5);
  EXPECT_EQ(make_observation(s, {}, 600)[5], 1.0);
}

TEST(ForwardTest, HandWiredNetwork) {
  std::vector<double> p(kPolicyParamCount, 0.0);
  // Output bias only.
  p[kB3 + 0] = std::atanh(0.5);
  Observation obs{};
  EXPECT_NEAR(policy_forward(p, obs)[0], 0.5, 1e-15);
  EXPECT_EQ(policy_forward(p, obs)[1], 0.0);
  // obs[0] -> h1[0] -> h2[0] -> out[2].
  p[0 * kObservationSize + 0] = 0.7;
  p[kW2 + 0] = 1.3;
  p[kW3 + 2 * kHiddenSize + 0] = 0.9;
  obs[0] = 0.4;
  const double expect = std::tanh(0.9 * std::tanh(1.3 * std::tanh(0.7 * 0.4)));
  EXPECT_NEAR(policy_forward(p, obs)[2], expect, 1e-15);
  EXPECT_THROW(policy_forward(std::vector<double>(10), obs), std::invalid_argument);
}

TEST(ForwardTest, SmallOutputIsStand) {
  PolicyParams p;
  p.values[kB3 + 0] = std::atanh(0.03);
  p.values[kB3 + 1] = std::atanh(0.03);
  EXPECT_TRUE(goto_controller(p, nominal(), {1, 0, 0}, 0, StepperConfig{}).is_stand);
  p.values[kB3 + 0] = std::atanh(0.5);
  const FootstepAction a = goto_controller(p, nominal(), {1, 0, 0}, 0, StepperConfig{});
  EXPECT_FALSE(a.is_stand);
  EXPECT_NEAR(a.dx, 0.5 * 0.4, 1e-12);
}

TEST(PolicyFileTest, RoundTripAndHeader) {
  PolicyParams p;
  p.mode = PolicyMode::kHier;
  p.seed = 42;
  for (std::size_t i = 0; i < p.values.size(); ++i) p.values[i] = std::sin(1.0 + i) * 1e3;
  p.values[5] = -0.0;
  const std::string path = temp_path("roundtrip.bin");
  save_policy(p, {1.0, 1.0, 1.25}, path);
  const PolicyParams q = load_policy(path);
  EXPECT_EQ(q.mode, PolicyMode::kHier);
  EXPECT_EQ(q.seed, 42u);
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(q.values[i]), std::bit_cast<std::uint64_t>(p.values[i]));
  }
  const std::string bytes = read_bytes(path);
  const std::string header = bytes.substr(0, bytes.find('\n'));
  EXPECT_EQ(header,
            "{\"mode\":\"hier\",\"layer_sizes\":[6,32,32,3],\"action_scale\":[1.0,1.0,1.25],"
            "\"seed\":42,\"param_count\":1379}");
  EXPECT_EQ(bytes.size(), header.size() + 1 + 8 * kPolicyParamCount);

  save_policy(p, {1.0, 1.0, 1.25}, path + "2");
  EXPECT_EQ(read_bytes(path + "2"), bytes);
  std::remove(path.c_str());
  std::remove((path + "2").c_str());
}

TEST(PolicyFileTest, RejectsCorruptFiles) {
  PolicyParams p;
  const std::string path = temp_path("corrupt.bin");
  save_policy(p, {0.4, 0.4, 0.5}, path);
  const std::string bytes = read_bytes(path);

  std::ofstream(path, std::ios::binary) << bytes.substr(0, bytes.size() - 3);
  EXPECT_THROW(load_policy(path), std::runtime_error);
  std::ofstream(path, std::ios::binary) << bytes << "x";
  EXPECT_THROW(load_policy(path), std::runtime_error);
  std::ofstream(path, std::ios::binary) << "not json\n";
  EXPECT_THROW(load_policy(path), std::runtime_error);
  std::remove(path.c_str());
  EXPECT_THROW(load_policy(path), std::runtime_error);
}

TEST(PolicyModeTest, Names) {
  EXPECT_EQ(parse_policy_mode("goto"), PolicyMode::kGoTo);
  EXPECT_EQ(parse_policy_mode("hier"), PolicyMode::kHier);
  EXPECT_EQ(to_string(PolicyMode::kGoTo), "goto");
  EXPECT_THROW(parse_policy_mode("ppo"), std::invalid_argument);
}

}  // namespace
}  // namespace goto_bench
