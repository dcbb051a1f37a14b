#ifndef TEXT2ANIM_TIMELINE_H_
#define TEXT2ANIM_TIMELINE_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "text2anim/geometry.h"

namespace text2anim {

// p0 + v t
struct LinearMotion {
  Vec2 p0;
  Vec2 velocity;  // px/tick
};

// p0 + v0 t + a t^2 / 2
struct AcceleratedMotion {
  Vec2 p0;
  Vec2 v0;     // px/tick
  Vec2 accel;  // px/tick^2
};

// (cx + r cos θ, cy - r sin θ), θ = theta0 + dtheta t in degrees; the minus
// sign makes increasing θ run counterclockwise on a y-down canvas.
struct OrbitMotion {
  Vec2 center;
  double radius = 1.0;
  double theta0 = 0.0;
  double dtheta = 1.0;
};

// Cubic Bernstein curve over the whole segment, u = t / length.
struct BezierMotion {
  std::array<Vec2, 4> points;
};

struct HoldMotion {
  Vec2 p0;
};

using Motion =
    std::variant<LinearMotion, AcceleratedMotion, OrbitMotion, BezierMotion, HoldMotion>;

// Active over ticks [start, end).
struct MotionSegment {
  int start = 0;
  int end = 1;
  Motion motion;

  int length() const { return end - start; }
};

std::string_view SegmentKindName(const Motion& motion);

// Position `t` ticks after the segment start, 0 <= t <= length.
Vec2 PositionAt(const MotionSegment& segment, double t);

struct ScaleKey {
  int tick = 0;
  double width = 1.0;
  double height = 1.0;
};

struct SwapEvent {
  int tick = 0;
  bool on_collision = false;  // tick is meaningless until resolved
  std::string sprite;         // asset path
};

struct Track {
  std::string entity;
  int z = 0;
  std::string sprite;                  // initial asset path
  Size native_size;                    // of the initial sprite
  Vec2 anchor;                         // native pixels; placed at the position
  std::vector<int> frame_delays_ms;    // animated sprites only
  std::vector<MotionSegment> segments;
  std::vector<ScaleKey> scale_keys;    // linear interpolation between keys
  std::optional<int> rotation_interval;  // quarter turns = floor(t/K) mod 4
  std::vector<SwapEvent> swaps;
  // When set, the track switches to Linear motion at this velocity (Hold when
  // zero) from the collision tick onward.
  std::optional<Vec2> collision_velocity;
};

struct BackgroundSwap {
  int tick = 0;
  std::string asset;
};

struct CollisionTrigger {
  std::string mover;
  std::string target;
  std::optional<int> tick;  // set once resolved
};

struct TimelineIR {
  Size canvas{640, 480};
  int tick_rate = 30;
  int duration = 1;
  std::vector<BackgroundSwap> backgrounds;
  std::vector<Track> tracks;
  std::optional<CollisionTrigger> collision;
  std::map<std::string, int> markers;  // named ticks, e.g. "landfall"

  const Track* FindTrack(std::string_view entity) const;
};

struct EntityState {
  std::string entity;
  int z = 0;
  Vec2 position;         // where the (scaled, rotated) anchor lands
  Size size;             // drawn size before rotation
  int quarter_turns = 0;
  std::string sprite;
  size_t frame = 0;      // animation frame of the sprite
  Box box;               // on-canvas extent after scaling and rotation
  bool visible = true;   // box intersects the canvas
};

struct SceneState {
  int tick = 0;
  std::string background;
  std::vector<EntityState> entities;  // same order as the tracks
};

// Pure evaluation of the timeline at one tick. Throws kTickOutOfRange.
SceneState Sample(const TimelineIR& ir, int tick);

// State of a single track at `tick` (no range check against the duration).
EntityState SampleTrack(const TimelineIR& ir, const Track& track, int tick);

// Quarter turns for a rotation interval: floor(tick / K) mod 4.
int QuarterTurnsAt(int interval, int tick);

// First tick at which the mover's box touches the target's box, or nullopt.
// Uses closed-form interval solving when both tracks are piecewise linear
// and unscaled, else a per-tick scan.
std::optional<int> FindCollisionTick(const TimelineIR& ir, const Track& mover,
                                     const Track& target);

// Rewrites collision-conditioned swaps and motion changes into concrete
// ticks. Timelines without a pending trigger are returned unchanged.
// Throws kNeverCollides.
TimelineIR ResolveCollisions(const TimelineIR& ir);

// Structural invariants; empty when all hold.
std::vector<std::string> ValidateTimeline(const TimelineIR& ir);

nlohmann::json TimelineToJson(const TimelineIR& ir);

}  // namespace text2anim

#endif  // TEXT2ANIM_TIMELINE_H_
