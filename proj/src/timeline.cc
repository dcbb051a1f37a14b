#include "text2anim/timeline.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "text2anim/error.h"

namespace text2anim {

namespace {

struct KindName {
  std::string_view operator()(const LinearMotion&) const { return "Linear"; }
  std::string_view operator()(const AcceleratedMotion&) const { return "Accelerated"; }
  std::string_view operator()(const OrbitMotion&) const { return "Orbit"; }
  std::string_view operator()(const BezierMotion&) const { return "Bezier"; }
  std::string_view operator()(const HoldMotion&) const { return "Hold"; }
};

const MotionSegment* SegmentAt(const Track& track, int tick) {
  auto it = std::upper_bound(track.segments.begin(), track.segments.end(), tick,
                             [](int t, const MotionSegment& s) { return t < s.start; });
  if (it == track.segments.begin()) return nullptr;
  --it;
  return tick < it->end ? &*it : nullptr;
}

std::pair<double, double> ScaleAt(const Track& track, int tick) {
  const auto& keys = track.scale_keys;
  if (keys.empty())
    return {static_cast<double>(track.native_size.width),
            static_cast<double>(track.native_size.height)};
  if (tick <= keys.front().tick) return {keys.front().width, keys.front().height};
  if (tick >= keys.back().tick) return {keys.back().width, keys.back().height};
  auto hi = std::upper_bound(keys.begin(), keys.end(), tick,
                             [](int t, const ScaleKey& k) { return t < k.tick; });
  auto lo = hi - 1;
  const double f = static_cast<double>(tick - lo->tick) / (hi->tick - lo->tick);
  return {lo->width + (hi->width - lo->width) * f,
          lo->height + (hi->height - lo->height) * f};
}

bool PiecewiseLinear(const Track& track) {
  if (!track.scale_keys.empty() || track.rotation_interval) return false;
  for (const MotionSegment& s : track.segments)
    if (!std::holds_alternative<LinearMotion>(s.motion) &&
        !std::holds_alternative<HoldMotion>(s.motion))
      return false;
  return true;
}

Vec2 VelocityOf(const MotionSegment& s) {
  if (const auto* l = std::get_if<LinearMotion>(&s.motion)) return l->velocity;
  return {0.0, 0.0};
}

// Ticks satisfying alpha + beta * tau <= 0, intersected into [lo, hi].
void Constrain(double alpha, double beta, double& lo, double& hi) {
  if (beta == 0.0) {
    if (alpha > 0.0) {
      lo = 1.0;
      hi = 0.0;
    }
    return;
  }
  const double root = -alpha / beta;
  if (beta > 0.0) {
    hi = std::min(hi, root);
  } else {
    lo = std::max(lo, root);
  }
}

nlohmann::json Point(Vec2 p) { return {p.x, p.y}; }

}  // namespace

std::string_view SegmentKindName(const Motion& motion) {
  return std::visit(KindName{}, motion);
}

Vec2 PositionAt(const MotionSegment& segment, double t) {
  struct Eval {
    double t;
    double length;
    Vec2 operator()(const LinearMotion& m) const { return m.p0 + m.velocity * t; }
    Vec2 operator()(const AcceleratedMotion& m) const {
      return m.p0 + m.v0 * t + m.accel * (0.5 * t * t);
    }
    Vec2 operator()(const OrbitMotion& m) const {
      const double theta = (m.theta0 + m.dtheta * t) * std::numbers::pi / 180.0;
      return {m.center.x + m.radius * std::cos(theta),
              m.center.y - m.radius * std::sin(theta)};
    }
    Vec2 operator()(const BezierMotion& m) const {
      const double u = length > 0 ? t / length : 0.0;
      const double v = 1.0 - u;
      const auto& p = m.points;
      return p[0] * (v * v * v) + p[1] * (3.0 * v * v * u) + p[2] * (3.0 * v * u * u) +
             p[3] * (u * u * u);
    }
    Vec2 operator()(const HoldMotion& m) const { return m.p0; }
  };
  return std::visit(Eval{t, static_cast<double>(segment.length())}, segment.motion);
}

int QuarterTurnsAt(int interval, int tick) {
  if (interval <= 0) return 0;
  return (tick / interval) % 4;
}

const Track* TimelineIR::FindTrack(std::string_view entity) const {
  for (const Track& t : tracks)
    if (t.entity == entity) return &t;
  return nullptr;
}

EntityState SampleTrack(const TimelineIR& ir, const Track& track, int tick) {
  EntityState s;
  s.entity = track.entity;
  s.z = track.z;

  const MotionSegment* seg = SegmentAt(track, tick);
  if (!seg)
    throw Error(ErrorKind::kTickOutOfRange,
                "track '" + track.entity + "' has no segment at tick " + std::to_string(tick),
                tick);
  s.position = PositionAt(*seg, tick - seg->start);

  const auto [w, h] = ScaleAt(track, tick);
  s.size = {std::max(1, static_cast<int>(std::lround(w))),
            std::max(1, static_cast<int>(std::lround(h)))};
  s.quarter_turns = track.rotation_interval ? QuarterTurnsAt(*track.rotation_interval, tick) : 0;

  s.sprite = track.sprite;
  for (const SwapEvent& e : track.swaps)
    if (!e.on_collision && e.tick <= tick) s.sprite = e.sprite;

  if (track.frame_delays_ms.size() > 1) {
    const double elapsed = tick * 1000.0 / ir.tick_rate;
    int total = 0;
    for (int d : track.frame_delays_ms) total += d;
    double t = std::fmod(elapsed, static_cast<double>(total));
    double acc = 0;
    s.frame = track.frame_delays_ms.size() - 1;
    for (size_t i = 0; i < track.frame_delays_ms.size(); ++i) {
      acc += track.frame_delays_ms[i];
      if (t < acc) {
        s.frame = i;
        break;
      }
    }
  }

  // Anchor follows the sprite through scaling and rotation.
  const double sw = s.size.width, sh = s.size.height;
  Vec2 a{track.native_size.width > 0 ? track.anchor.x * sw / track.native_size.width : 0.0,
         track.native_size.height > 0 ? track.anchor.y * sh / track.native_size.height : 0.0};
  double bw = sw, bh = sh;
  switch (s.quarter_turns) {
    case 1: a = {sh - a.y, a.x}; std::swap(bw, bh); break;
    case 2: a = {sw - a.x, sh - a.y}; break;
    case 3: a = {a.y, sw - a.x}; std::swap(bw, bh); break;
    default: break;
  }
  s.box.left = s.position.x - a.x;
  s.box.top = s.position.y - a.y;
  s.box.right = s.box.left + bw;
  s.box.bottom = s.box.top + bh;
  s.visible = s.box.left < ir.canvas.width && s.box.right > 0 &&
              s.box.top < ir.canvas.height && s.box.bottom > 0;
  return s;
}

SceneState Sample(const TimelineIR& ir, int tick) {
  if (tick < 0 || tick >= ir.duration)
    throw Error(ErrorKind::kTickOutOfRange,
                "tick " + std::to_string(tick) + " outside [0, " +
                    std::to_string(ir.duration) + ")",
                tick);
  SceneState state;
  state.tick = tick;
  for (const BackgroundSwap& b : ir.backgrounds)
    if (b.tick <= tick) state.background = b.asset;
  state.entities.reserve(ir.tracks.size());
  for (const Track& t : ir.tracks) state.entities.push_back(SampleTrack(ir, t, tick));
  return state;
}

std::optional<int> FindCollisionTick(const TimelineIR& ir, const Track& mover,
                                     const Track& target) {
  auto overlaps = [&](int tick) {
    return SampleTrack(ir, mover, tick).box.Overlaps(SampleTrack(ir, target, tick).box);
  };

  if (!PiecewiseLinear(mover) || !PiecewiseLinear(target)) {
    for (int t = 0; t < ir.duration; ++t)
      if (overlaps(t)) return t;
    return std::nullopt;
  }

  // Split time at every segment boundary of either track; within a piece both
  // boxes translate at constant velocity and overlap on one interval.
  std::set<int> cuts{0, ir.duration};
  for (const Track* t : {&mover, &target})
    for (const MotionSegment& s : t->segments)
      if (s.start > 0 && s.start < ir.duration) cuts.insert(s.start);
  for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) {
    const int a = *it;
    const int b = *std::next(it);
    const Box m = SampleTrack(ir, mover, a).box;
    const Box g = SampleTrack(ir, target, a).box;
    const Vec2 rel = VelocityOf(*SegmentAt(mover, a)) - VelocityOf(*SegmentAt(target, a));
    double lo = 0.0, hi = b - a - 1;
    Constrain(m.left - g.right - kContactTolerance, rel.x, lo, hi);
    Constrain(g.left - m.right - kContactTolerance, -rel.x, lo, hi);
    Constrain(m.top - g.bottom - kContactTolerance, rel.y, lo, hi);
    Constrain(g.top - m.bottom - kContactTolerance, -rel.y, lo, hi);
    if (lo > hi + 1e-6) continue;

    // Settle rounding at the interval edge against the exact predicate.
    int tick = a + static_cast<int>(std::ceil(lo - 1e-9));
    tick = std::clamp(tick, a, b - 1);
    while (tick > a && overlaps(tick - 1)) --tick;
    const int limit = std::min(b - 1, a + static_cast<int>(std::floor(hi + 1e-9)) + 2);
    while (tick <= limit && !overlaps(tick)) ++tick;
    if (tick <= limit) return tick;
  }
  return std::nullopt;
}

TimelineIR ResolveCollisions(const TimelineIR& ir) {
  if (!ir.collision || ir.collision->tick) return ir;
  const Track* mover = ir.FindTrack(ir.collision->mover);
  const Track* target = ir.FindTrack(ir.collision->target);
  if (!mover || !target)
    throw Error(ErrorKind::kNeverCollides, "collision names an unknown track");

  const std::optional<int> hit = FindCollisionTick(ir, *mover, *target);
  if (!hit)
    throw Error(ErrorKind::kNeverCollides,
                "'" + mover->entity + "' never reaches '" + target->entity + "' within " +
                    std::to_string(ir.duration) + " ticks");
  const int c = *hit;

  TimelineIR out = ir;
  out.collision->tick = c;
  out.markers["collision"] = c;
  for (Track& track : out.tracks) {
    for (SwapEvent& e : track.swaps) {
      if (!e.on_collision) continue;
      e.on_collision = false;
      e.tick = c;
    }
    std::stable_sort(track.swaps.begin(), track.swaps.end(),
                     [](const SwapEvent& a, const SwapEvent& b) { return a.tick < b.tick; });
    if (!track.collision_velocity) continue;

    const Vec2 at = SampleTrack(ir, track, c).position;
    std::vector<MotionSegment> kept;
    for (MotionSegment s : track.segments) {
      if (s.start >= c) continue;
      s.end = std::min(s.end, c);
      kept.push_back(s);
    }
    const Vec2 v = *track.collision_velocity;
    MotionSegment after{c, ir.duration, HoldMotion{at}};
    if (v.x != 0.0 || v.y != 0.0) after.motion = LinearMotion{at, v};
    kept.push_back(after);
    track.segments = std::move(kept);
    track.collision_velocity.reset();
  }
  return out;
}

std::vector<std::string> ValidateTimeline(const TimelineIR& ir) {
  std::vector<std::string> out;
  if (ir.duration < 1) out.push_back("duration below 1");
  if (ir.tick_rate < 1) out.push_back("tick rate below 1");
  std::set<int> zs;
  for (const Track& t : ir.tracks) {
    const std::string who = "track '" + t.entity + "': ";
    if (!zs.insert(t.z).second) out.push_back(who + "duplicate z");
    int expect = 0;
    for (const MotionSegment& s : t.segments) {
      if (s.start != expect) out.push_back(who + "gap or overlap at tick " + std::to_string(expect));
      if (s.end <= s.start) out.push_back(who + "empty segment at tick " + std::to_string(s.start));
      if (const auto* o = std::get_if<OrbitMotion>(&s.motion); o && o->radius <= 0)
        out.push_back(who + "orbit radius not positive");
      expect = s.end;
    }
    if (expect != ir.duration) out.push_back(who + "segments do not cover the duration");
    for (size_t i = 0; i < t.scale_keys.size(); ++i) {
      if (i > 0 && t.scale_keys[i].tick <= t.scale_keys[i - 1].tick)
        out.push_back(who + "scale keys not strictly increasing");
      if (t.scale_keys[i].width < 1 || t.scale_keys[i].height < 1)
        out.push_back(who + "scale key below 1 px");
    }
    if (t.rotation_interval && *t.rotation_interval < 1)
      out.push_back(who + "rotation interval below 1");
    for (const SwapEvent& e : t.swaps)
      if (e.on_collision) out.push_back(who + "unresolved collision swap");
  }
  for (size_t i = 1; i < ir.backgrounds.size(); ++i)
    if (ir.backgrounds[i].tick <= ir.backgrounds[i - 1].tick)
      out.push_back("background swaps not strictly increasing");
  if (ir.backgrounds.empty() || ir.backgrounds.front().tick != 0)
    out.push_back("no background at tick 0");
  return out;
}

nlohmann::json TimelineToJson(const TimelineIR& ir) {
  struct SegmentJson {
    nlohmann::json& j;
    void operator()(const LinearMotion& m) const {
      j["p0"] = Point(m.p0);
      j["velocity"] = Point(m.velocity);
    }
    void operator()(const AcceleratedMotion& m) const {
      j["p0"] = Point(m.p0);
      j["v0"] = Point(m.v0);
      j["accel"] = Point(m.accel);
    }
    void operator()(const OrbitMotion& m) const {
      j["center"] = Point(m.center);
      j["radius"] = m.radius;
      j["theta0"] = m.theta0;
      j["dtheta"] = m.dtheta;
    }
    void operator()(const BezierMotion& m) const {
      nlohmann::json pts = nlohmann::json::array();
      for (const Vec2& p : m.points) pts.push_back(Point(p));
      j["points"] = pts;
    }
    void operator()(const HoldMotion& m) const { j["p0"] = Point(m.p0); }
  };

  nlohmann::json tracks = nlohmann::json::array();
  for (const Track& t : ir.tracks) {
    nlohmann::json segs = nlohmann::json::array();
    for (const MotionSegment& s : t.segments) {
      nlohmann::json j{{"kind", std::string(SegmentKindName(s.motion))},
                       {"start", s.start},
                       {"end", s.end}};
      std::visit(SegmentJson{j}, s.motion);
      segs.push_back(j);
    }
    nlohmann::json keys = nlohmann::json::array();
    for (const ScaleKey& k : t.scale_keys)
      keys.push_back({{"tick", k.tick}, {"width", k.width}, {"height", k.height}});
    nlohmann::json swaps = nlohmann::json::array();
    for (const SwapEvent& e : t.swaps) {
      nlohmann::json j{{"sprite", e.sprite}};
      j["tick"] = e.on_collision ? nlohmann::json("on-collision") : nlohmann::json(e.tick);
      swaps.push_back(j);
    }
    nlohmann::json track{{"entity", t.entity},
                         {"z", t.z},
                         {"sprite", t.sprite},
                         {"size", {t.native_size.width, t.native_size.height}},
                         {"anchor", Point(t.anchor)},
                         {"segments", segs},
                         {"scale_keys", keys},
                         {"swaps", swaps}};
    track["rotation_interval"] =
        t.rotation_interval ? nlohmann::json(*t.rotation_interval) : nlohmann::json(nullptr);
    if (!t.frame_delays_ms.empty()) track["frame_delays_ms"] = t.frame_delays_ms;
    if (t.collision_velocity) track["collision_velocity"] = Point(*t.collision_velocity);
    tracks.push_back(track);
  }
  nlohmann::json backgrounds = nlohmann::json::array();
  for (const BackgroundSwap& b : ir.backgrounds)
    backgrounds.push_back({{"tick", b.tick}, {"asset", b.asset}});

  nlohmann::json doc{{"canvas", {ir.canvas.width, ir.canvas.height}},
                     {"tick_rate", ir.tick_rate},
                     {"duration", ir.duration},
                     {"backgrounds", backgrounds},
                     {"tracks", tracks},
                     {"markers", ir.markers}};
  if (ir.collision) {
    nlohmann::json c{{"mover", ir.collision->mover}, {"target", ir.collision->target}};
    c["tick"] = ir.collision->tick ? nlohmann::json(*ir.collision->tick) : nlohmann::json(nullptr);
    doc["collision"] = c;
  } else {
    doc["collision"] = nullptr;
  }
  return doc;
}

}  // namespace text2anim
