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

#include <algorithm>
#include <cmath>

#include "goto_bench/text.hpp"

namespace goto_bench {

namespace {

std::string num(double v) { return format_fixed(v, 2); }

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// World (m, y up) to SVG (px, y down).
struct Canvas {
  double min_x, max_y, scale, margin;
  double px(double x) const { return (x - min_x) * scale + margin; }
  double py(double y) const { return (max_y - y) * scale + margin; }
};

std::string polygon(const Canvas& cv, const std::vector<Vec2>& pts,
                    const std::string& attrs) {
  std::string s = "<polygon points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0) s += ' ';
    s += num(cv.px(pts[i].x)) + "," + num(cv.py(pts[i].y));
  }
  return s + "\" " + attrs + "/>\n";
}

// Black dot with a heading arrow.
std::string pose_marker(const Canvas& cv, const Pose2& p, const std::string& cls) {
  const double len = 0.35;
  const Vec2 tip = p.transform_point({len, 0.0});
  std::string s = "<g class=\"" + cls + "\">\n";
  s += "<circle cx=\"" + num(cv.px(p.x())) + "\" cy=\"" + num(cv.py(p.y())) +
       "\" r=\"5\" fill=\"black\"/>\n";
  s += "<line x1=\"" + num(cv.px(p.x())) + "\" y1=\"" + num(cv.py(p.y())) +
       "\" x2=\"" + num(cv.px(tip.x)) + "\" y2=\"" + num(cv.py(tip.y)) +
       "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  s += polygon(cv,
               {p.transform_point({len + 0.1, 0.0}),
                p.transform_point({len, 0.05}), p.transform_point({len, -0.05})},
               "fill=\"black\"");
  return s + "</g>\n";
}

}  // namespace

FootTrace make_trace(const std::string& title, const TrialRun& run) {
  FootTrace t;
  t.title = title;
  t.start = run.initial_state.base;
  t.goal = run.goal;
  t.steps = run.final_state.step_log;
  return t;
}

std::string render_traces(const FootTrace& trace, const SvgStyle& style) {
  double min_x = std::min(trace.start.x(), trace.goal.x());
  double max_x = std::max(trace.start.x(), trace.goal.x());
  double min_y = std::min(trace.start.y(), trace.goal.y());
  double max_y = std::max(trace.start.y(), trace.goal.y());
  for (const StepRecord& r : trace.steps) {
    min_x = std::min(min_x, r.pose.x());
    max_x = std::max(max_x, r.pose.x());
    min_y = std::min(min_y, r.pose.y());
    max_y = std::max(max_y, r.pose.y());
  }
  min_x -= style.margin_m;
  max_x += style.margin_m;
  min_y -= style.margin_m;
  max_y += style.margin_m;
  const double margin_px = 10.0;
  const Canvas cv{min_x, max_y, style.pixels_per_meter, margin_px};
  const double width = (max_x - min_x) * style.pixels_per_meter + 2 * margin_px;
  const double height = (max_y - min_y) * style.pixels_per_meter + 2 * margin_px;

  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
         "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
         num(height) + "\">\n";
  svg += "<title>" + escape_xml(trace.title) + "</title>\n";

  const double half_l = 0.5 * style.foot_length_m;
  const double half_w = 0.5 * style.foot_width_m;
  const double deg = 180.0 / kPi;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const StepRecord& r = trace.steps[i];
    const bool left = r.foot == Foot::kLeft;
    const std::string& color = left ? style.left_color : style.right_color;
    const double cx = cv.px(r.pose.x());
    const double cy = cv.py(r.pose.y());
    // SVG rotation is clockwise in screen space, i.e. -theta in world.
    svg += "<rect class=\"foot foot-" + std::string(left ? "left" : "right") +
           "\" data-step=\"" + std::to_string(i) + "\" x=\"" +
           num(cx - half_l * style.pixels_per_meter) + "\" y=\"" +
           num(cy - half_w * style.pixels_per_meter) + "\" width=\"" +
           num(style.foot_length_m * style.pixels_per_meter) + "\" height=\"" +
           num(style.foot_width_m * style.pixels_per_meter) + "\" transform=\"rotate(" +
           num(-r.pose.theta() * deg) + " " + num(cx) + " " + num(cy) +
           ")\" fill=\"" + color + "\" fill-opacity=\"" + num(style.opacity) + "\"" +
           (left ? " stroke=\"black\" stroke-width=\"1.5\"" : " stroke=\"none\"") +
           "/>\n";
    svg += polygon(cv,
                   {r.pose.transform_point({half_l + 0.04, 0.0}),
                    r.pose.transform_point({half_l - 0.02, half_w * 0.8}),
                    r.pose.transform_point({half_l - 0.02, -half_w * 0.8})},
                   "class=\"toe\" fill=\"" + color + "\"");
  }
  svg += pose_marker(cv, trace.start, "start");
  svg += pose_marker(cv, trace.goal, "goal");
  svg += "</svg>\n";
  return svg;
}

}  // namespace goto_bench
