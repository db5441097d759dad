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

// Reference implementations written without the library's pose algebra, used
// to cross-check derived values.

#ifndef GOTO_BENCH_TESTS_ORACLES_HPP_
#define GOTO_BENCH_TESTS_ORACLES_HPP_

#include <cmath>
#include <utility>
#include <vector>

namespace goto_bench::oracle {

struct P {
  double x, y;
};

inline P to_world(double px, double py, double th, P q) {
  return {px + std::cos(th) * q.x - std::sin(th) * q.y,
          py + std::sin(th) * q.x + std::cos(th) * q.y};
}

// Mean squared distance between corresponding constellation points, summed
// point by point in the world frame.
inline double constellation_distance(double ax, double ay, double ath, double bx,
                                     double by, double bth,
                                     const std::vector<P>& body) {
  double sum = 0.0;
  for (const P& q : body) {
    const P pa = to_world(ax, ay, ath, q);
    const P pb = to_world(bx, by, bth, q);
    sum += (pa.x - pb.x) * (pa.x - pb.x) + (pa.y - pb.y) * (pa.y - pb.y);
  }
  return sum / static_cast<double>(body.size());
}

inline double moment(const std::vector<P>& pts) {
  double cx = 0.0, cy = 0.0;
  for (const P& p : pts) {
    cx += p.x;
    cy += p.y;
  }
  cx /= pts.size();
  cy /= pts.size();
  double s = 0.0;
  for (const P& p : pts) s += (p.x - cx) * (p.x - cx) + (p.y - cy) * (p.y - cy);
  return s / pts.size();
}

inline std::vector<P> circle(double r, int n) {
  std::vector<P> pts;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * M_PI * i / n;
    pts.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return pts;
}

// World offset expressed in a frame with heading th, via the transposed
// rotation matrix.
inline std::pair<double, double> body_offset(double th, double wx, double wy) {
  const double c = std::cos(th), s = std::sin(th);
  return {c * wx + s * wy, -s * wx + c * wy};
}

}  // namespace goto_bench::oracle

#endif  // GOTO_BENCH_TESTS_ORACLES_HPP_
