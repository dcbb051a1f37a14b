#ifndef TEXT2ANIM_GEOMETRY_H_
#define TEXT2ANIM_GEOMETRY_H_

#include <cmath>

namespace text2anim {

// Canvas coordinates: origin top-left, y grows downward.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend Vec2 operator*(double s, Vec2 a) { return {a.x * s, a.y * s}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;

  double length() const { return std::hypot(x, y); }
};

struct Size {
  int width = 0;
  int height = 0;
  friend bool operator==(Size a, Size b) = default;
};

// Axis-aligned box, closed on all sides: boxes that touch count as
// overlapping.
// Boxes closer than this count as touching; absorbs drift from summing
// fractional positions.
inline constexpr double kContactTolerance = 1e-6;

struct Box {
  double left = 0.0;
  double top = 0.0;
  double right = 0.0;
  double bottom = 0.0;

  bool Overlaps(const Box& o) const {
    constexpr double e = kContactTolerance;
    return left <= o.right + e && o.left <= right + e && top <= o.bottom + e &&
           o.top <= bottom + e;
  }
};

}  // namespace text2anim

#endif  // TEXT2ANIM_GEOMETRY_H_
