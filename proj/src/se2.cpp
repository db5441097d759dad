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

#include "goto_bench/se2.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace goto_bench {

double wrap_angle(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("wrap_angle: non-finite angle");
  }
  // remainder() is exact and odd-symmetric, which keeps mirrored
  // trajectories bit-identical up to sign.
  double r = std::remainder(theta, kTwoPi);
  if (r <= -kPi) r = kPi;
  return r;
}

double Vec2::norm() const { return std::hypot(x, y); }

Pose2::Pose2(double x, double y, double theta)
    : x_(x), y_(y), theta_(wrap_angle(theta)) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw std::invalid_argument("Pose2: non-finite translation");
  }
}

Vec2 Pose2::rotate(Vec2 v) const {
  const double c = std::cos(theta_);
  const double s = std::sin(theta_);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Vec2 Pose2::unrotate(Vec2 v) const {
  const double c = std::cos(theta_);
  const double s = std::sin(theta_);
  return {c * v.x + s * v.y, -s * v.x + c * v.y};
}

Vec2 Pose2::transform_point(Vec2 body_point) const {
  return translation() + rotate(body_point);
}

Pose2 Pose2::compose(const Pose2& other) const {
  const Vec2 t = transform_point(other.translation());
  return {t.x, t.y, theta_ + other.theta_};
}

Pose2 Pose2::inverse() const {
  const Vec2 t = unrotate(translation());
  return {-t.x, -t.y, -theta_};
}

Pose2 Pose2::between(const Pose2& other) const {
  const Vec2 t = unrotate(other.translation() - translation());
  return {t.x, t.y, other.theta_ - theta_};
}

Pose2 Pose2::mirrored() const { return {x_, -y_, -theta_}; }

PoseDelta pose_delta(const Pose2& current, const Pose2& goal) {
  const Vec2 body = current.unrotate(goal.translation() - current.translation());
  return {body.x, body.y, wrap_angle(goal.theta() - current.theta())};
}

Constellation::Constellation(Vec2 centroid, std::vector<Vec2> offsets,
                             double moment)
    : centroid_(centroid), offsets_(std::move(offsets)), moment_(moment) {}

Constellation Constellation::from_points(std::span<const Vec2> body_points) {
  if (body_points.size() < 2) {
    throw std::invalid_argument("Constellation: need at least 2 points");
  }
  const double n = static_cast<double>(body_points.size());
  Vec2 sum;
  for (const Vec2& p : body_points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("Constellation: non-finite point");
    }
    sum = sum + p;
  }
  const Vec2 centroid{sum.x / n, sum.y / n};

  std::vector<Vec2> offsets;
  offsets.reserve(body_points.size());
  double second_moment = 0.0;
  for (const Vec2& p : body_points) {
    const Vec2 q = p - centroid;
    offsets.push_back(q);
    second_moment += q.squared_norm();
  }
  const double moment = second_moment / n;
  if (!(moment > 0.0)) {
    throw std::invalid_argument(
        "Constellation: points are coincident, heading is unobservable");
  }
  return Constellation(centroid, std::move(offsets), moment);
}

Constellation Constellation::make_circle(double radius, int count) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("make_circle: radius must be positive");
  }
  if (count < 2) {
    throw std::invalid_argument("make_circle: count must be >= 2, got " +
                                std::to_string(count));
  }
  std::vector<Vec2> offsets;
  offsets.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double a = kTwoPi * i / count;
    offsets.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  // The points are centred by construction; the closed-form moment avoids
  // carrying the rounding of the trig sums into I_c.
  return Constellation(Vec2{}, std::move(offsets), radius * radius);
}

DistanceBreakdown constellation_distance(const Pose2& a, const Pose2& b,
                                         const Constellation& c) {
  DistanceBreakdown d;
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec2 body = c.point(i);
    sum += (a.transform_point(body) - b.transform_point(body)).squared_norm();
  }
  d.total = sum / static_cast<double>(c.size());
  d.positional =
      (a.transform_point(c.centroid()) - b.transform_point(c.centroid()))
          .squared_norm();
  d.heading_error = wrap_angle(b.theta() - a.theta());
  d.moment = c.moment();
  d.rotational_exact = 2.0 * c.moment() * (1.0 - std::cos(d.heading_error));
  return d;
}

double position_error(const Pose2& final_pose, const Pose2& goal) {
  return (final_pose.translation() - goal.translation()).norm();
}

double orientation_error(double theta_final, double theta_goal) {
  // min(|d|, 2pi - |d|) generalised to unwrapped inputs.
  return std::fabs(std::remainder(theta_final - theta_goal, kTwoPi));
}

}  // namespace goto_bench
