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

// Planar rigid-body algebra and point-constellation geometry.

#ifndef GOTO_BENCH_SE2_HPP_
#define GOTO_BENCH_SE2_HPP_

#include <numbers>
#include <span>
#include <vector>

namespace goto_bench {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Maps theta into (-pi, pi]. Throws std::invalid_argument on NaN/inf.
double wrap_angle(double theta);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;

  double squared_norm() const { return x * x + y * y; }
  double norm() const;
};

// Element of SE(2). The heading is kept in (-pi, pi] at all times.
class Pose2 {
 public:
  Pose2() = default;
  Pose2(double x, double y, double theta);

  static Pose2 identity() { return {}; }

  double x() const { return x_; }
  double y() const { return y_; }
  double theta() const { return theta_; }
  Vec2 translation() const { return {x_, y_}; }

  // this * other: `other` expressed in this pose's frame, mapped to world.
  Pose2 compose(const Pose2& other) const;
  Pose2 inverse() const;
  // this^-1 * other.
  Pose2 between(const Pose2& other) const;

  Vec2 transform_point(Vec2 body_point) const;
  Vec2 rotate(Vec2 v) const;
  Vec2 unrotate(Vec2 v) const;

  // Reflection across the world x-axis: (x, y, theta) -> (x, -y, -theta).
  Pose2 mirrored() const;

  friend bool operator==(const Pose2&, const Pose2&) = default;

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  double theta_ = 0.0;
};

// Goal offset seen from `current`: translation in the current body frame,
// wrapped heading difference.
struct PoseDelta {
  double dx_body = 0.0;
  double dy_body = 0.0;
  double dtheta = 0.0;
};

PoseDelta pose_delta(const Pose2& current, const Pose2& goal);

// Rigid landmark set attached to a pose. Points are held relative to their
// centroid; the body-frame centroid offset is kept separately.
class Constellation {
 public:
  // Requires at least two points that are not all coincident.
  static Constellation from_points(std::span<const Vec2> body_points);
  // `count` points evenly spaced on a circle centred on the body origin.
  static Constellation make_circle(double radius, int count);

  std::size_t size() const { return offsets_.size(); }
  const std::vector<Vec2>& centroid_offsets() const { return offsets_; }
  Vec2 centroid() const { return centroid_; }
  // Body-frame point i (centroid + offset).
  Vec2 point(std::size_t i) const { return centroid_ + offsets_[i]; }
  // Planar moment of inertia I_c = mean squared centroid-relative radius.
  double moment() const { return moment_; }

 private:
  Constellation(Vec2 centroid, std::vector<Vec2> offsets, double moment);

  Vec2 centroid_;
  std::vector<Vec2> offsets_;
  double moment_ = 0.0;
};

struct DistanceBreakdown {
  double total = 0.0;             // mean squared point distance, m^2
  double positional = 0.0;        // squared centroid distance, m^2
  double rotational_exact = 0.0;  // 2 I_c (1 - cos dtheta), m^2
  double heading_error = 0.0;     // wrapped dtheta, rad
  double moment = 0.0;            // I_c of the constellation used

  // Small-angle form I_c * dtheta^2. Approximation only; the exact term is
  // what satisfies total == positional + rotational_exact.
  double rotational_small_angle() const {
    return moment * heading_error * heading_error;
  }
};

DistanceBreakdown constellation_distance(const Pose2& a, const Pose2& b,
                                         const Constellation& c);

// Euclidean distance between the planar positions.
double position_error(const Pose2& final_pose, const Pose2& goal);
// Absolute heading difference on the circle, in [0, pi].
double orientation_error(double theta_final, double theta_goal);

}  // namespace goto_bench

#endif  // GOTO_BENCH_SE2_HPP_
