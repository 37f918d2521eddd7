// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>

namespace pcbplace {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

inline double l1_distance(Vec2 a, Vec2 b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

inline double euclidean_distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Axis-aligned rectangle given by its lower-left corner and extent.
struct Rect {
  Vec2 origin;
  double width = 0.0;
  double height = 0.0;

  Vec2 max_corner() const { return {origin.x + width, origin.y + height}; }

  /// Closed containment, boundary included.
  bool contains(Vec2 p) const {
    return p.x >= origin.x && p.x <= origin.x + width && p.y >= origin.y && p.y <= origin.y + height;
  }

  /// Open containment, boundary excluded.
  bool contains_strictly(Vec2 p) const {
    return p.x > origin.x && p.x < origin.x + width && p.y > origin.y && p.y < origin.y + height;
  }

  friend bool operator==(const Rect &, const Rect &) = default;
};

/// Area of the intersection of two rectangles; zero when they only touch.
inline double intersection_area(const Rect &a, const Rect &b) {
  const double w = std::min(a.origin.x + a.width, b.origin.x + b.width) - std::max(a.origin.x, b.origin.x);
  const double h = std::min(a.origin.y + a.height, b.origin.y + b.height) - std::max(a.origin.y, b.origin.y);
  return (w > 0.0 && h > 0.0) ? w * h : 0.0;
}

} // namespace pcbplace
