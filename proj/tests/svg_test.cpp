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

#include "goto_bench/svg.hpp"

#include <string>

#include "gtest/gtest.h"

namespace goto_bench {
namespace {

int count(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

TEST(SvgTest, EmptyTraceHasOnlyMarkers) {
  FootTrace t;
  t.title = "empty";
  t.goal = Pose2(1.0, 0.5, 0.3);
  const std::string svg = render_traces(t);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_EQ(count(svg, "<rect"), 0);
  EXPECT_EQ(count(svg, "<g class=\"start\">"), 1);
  EXPECT_EQ(count(svg, "<g class=\"goal\">"), 1);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(SvgTest, OneRectanglePerFootstep) {
  const TrialRun run =
      run_trial(ControllerId::kAgility2, nullptr, {1.0, 0.5, 1.0}, 3, 0.02, BenchSetup{});
  const FootTrace t = make_trace("a2", run);
  ASSERT_GT(t.steps.size(), 2u);
  const std::string svg = render_traces(t);
  EXPECT_EQ(count(svg, "<rect"), static_cast<int>(t.steps.size()));
  int left = 0;
  for (const StepRecord& s : t.steps) left += s.foot == Foot::kLeft;
  EXPECT_EQ(count(svg, "foot foot-left"), left);
  EXPECT_EQ(count(svg, "foot foot-right"), static_cast<int>(t.steps.size()) - left);
  EXPECT_EQ(svg, render_traces(make_trace("a2", run)));
  EXPECT_NE(svg.find("<title>a2</title>"), std::string::npos);
}

TEST(SvgTest, EscapesTitle) {
  FootTrace t;
  t.title = "a<b&c";
  EXPECT_NE(render_traces(t).find("a&lt;b&amp;c"), std::string::npos);
}

}  // namespace
}  // namespace goto_bench
