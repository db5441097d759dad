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

// Footstep trace rendering: each footstep is a semi-transparent rectangle
// oriented with the foot, left feet outlined, with an arrowhead at the toe.

#ifndef GOTO_BENCH_SVG_HPP_
#define GOTO_BENCH_SVG_HPP_

#include <string>
#include <vector>

#include "goto_bench/bench.hpp"
#include "goto_bench/se2.hpp"
#include "goto_bench/stepper.hpp"

namespace goto_bench {

struct FootTrace {
  std::string title;
  Pose2 start;
  Pose2 goal;
  std::vector<StepRecord> steps;
};

FootTrace make_trace(const std::string& title, const TrialRun& run);

struct SvgStyle {
  double pixels_per_meter = 120.0;
  double margin_m = 0.5;
  double foot_length_m = 0.22;
  double foot_width_m = 0.10;
  std::string left_color = "#2ca02c";
  std::string right_color = "#1f77b4";
  double opacity = 0.45;
};

// Deterministic SVG document; identical input gives identical bytes.
std::string render_traces(const FootTrace& trace, const SvgStyle& style = {});

}  // namespace goto_bench

#endif  // GOTO_BENCH_SVG_HPP_
