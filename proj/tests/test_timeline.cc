#include <cmath>
#include <random>
#include <set>
#include <thread>

#include "doctest.h"
#include "oracles.h"
#include "support.h"
#include "text2anim/canonical_json.h"
#include "text2anim/instantiate.h"
#include "text2anim/pipeline.h"
#include "text2anim/timeline.h"

using namespace text2anim;
using support::KindOf;

namespace {

const AssetBase& Pack() {
  static const AssetBase base = AssetBase::Load(support::Manifest());
  return base;
}

ResolvedScene Resolve(const char* sentence) {
  return ResolveScene(PlanSentence(sentence, Lexicon::Default()), Pack());
}

const char* Caption(const char* fixture) {
  for (const auto& c : support::kCaptions)
    if (std::string_view(c.fixture) == fixture) return c.sentence;
  return "";
}

TimelineIR Plain(int duration) {
  TimelineIR ir;
  ir.duration = duration;
  ir.backgrounds = {{0, "bg"}};
  return ir;
}

Track BoxTrack(const std::string& id, int z, Size size, MotionSegment seg) {
  Track t;
  t.entity = id;
  t.z = z;
  t.sprite = id;
  t.native_size = size;
  t.segments = {seg};
  return t;
}

}  // namespace

TEST_CASE("position_at") {
  const MotionSegment orbit{0, 400, OrbitMotion{{100, 100}, 50, 0, 1}};
  Vec2 p = PositionAt(orbit, 0);
  CHECK(p.x == doctest::Approx(150));
  CHECK(p.y == doctest::Approx(100));
  p = PositionAt(orbit, 90);
  CHECK(p.x == doctest::Approx(100));
  CHECK(p.y == doctest::Approx(50));

  const MotionSegment fall{0, 20, AcceleratedMotion{{0, 0}, {0, 0}, {0, 0.6}}};
  p = PositionAt(fall, 10);
  CHECK(p.x == 0);
  CHECK(p.y == doctest::Approx(30).epsilon(1e-12));

  const MotionSegment bez{5, 25, BezierMotion{{Vec2{1, 2}, Vec2{10, -4}, Vec2{3, 30}, Vec2{7, 8}}}};
  CHECK(PositionAt(bez, 0) == Vec2{1, 2});
  p = PositionAt(bez, 20);
  CHECK(p.x == doctest::Approx(7));
  CHECK(p.y == doctest::Approx(8));

  const MotionSegment lin{0, 10, LinearMotion{{5, 5}, {3, -1}}};
  CHECK(PositionAt(lin, 4) == Vec2{17, 1});
  CHECK(PositionAt({0, 3, HoldMotion{{9, 9}}}, 2) == Vec2{9, 9});
}

TEST_CASE("quarter turns") {
  CHECK(QuarterTurnsAt(15, 61) == 0);
  CHECK(QuarterTurnsAt(15, 14) == 0);
  CHECK(QuarterTurnsAt(15, 15) == 1);
  CHECK(QuarterTurnsAt(15, 59) == 3);
  for (int k = 1; k < 20; ++k)
    for (int t = 0; t < 200; ++t) CHECK(QuarterTurnsAt(k, t + 4 * k) == QuarterTurnsAt(k, t));
}

TEST_CASE("sample range") {
  const TimelineIR ir = ResolveCollisions(Instantiate(Resolve(Caption("orbit.json"))));
  CHECK_NOTHROW(Sample(ir, 0));
  CHECK_NOTHROW(Sample(ir, ir.duration - 1));
  CHECK(KindOf([&] { Sample(ir, ir.duration); }) == ErrorKind::kTickOutOfRange);
  CHECK(KindOf([&] { Sample(ir, -1); }) == ErrorKind::kTickOutOfRange);
}

TEST_CASE("orbit track stays on its circle") {
  const TimelineIR ir = Instantiate(Resolve(Caption("orbit.json")));
  const Track* body = ir.FindTrack("body");
  REQUIRE(body);
  const auto& o = std::get<OrbitMotion>(body->segments[0].motion);
  for (int t = 0; t < ir.duration; ++t) {
    const Vec2 p = Sample(ir, t).entities[1].position;
    CHECK(std::abs((p - o.center).length() - o.radius) <= 1e-6);
  }
  // The orbit runs off the canvas on purpose.
  bool off = false;
  for (int t = 0; t < ir.duration; ++t) off |= !Sample(ir, t).entities[1].visible;
  CHECK(off);
}

TEST_CASE("animated sprite frames advance with time") {
  const TimelineIR ir = Instantiate(Resolve(Caption("orbit.json")));
  const Track* body = ir.FindTrack("body");
  REQUIRE(body->frame_delays_ms.size() == 8);
  // 100 ms frames at 30 ticks/s: frame k covers ticks [3k, 3k + 3).
  CHECK(SampleTrack(ir, *body, 0).frame == 0);
  CHECK(SampleTrack(ir, *body, 2).frame == 0);
  CHECK(SampleTrack(ir, *body, 3).frame == 1);
  CHECK(SampleTrack(ir, *body, 23).frame == 7);
  CHECK(SampleTrack(ir, *body, 24).frame == 0);
}

TEST_CASE("collide instantiation") {
  const ResolvedScene r = Resolve(Caption("collide.json"));
  const TimelineIR ir = Instantiate(r);
  const Track* car = ir.FindTrack("vehicle");
  const Track* driver = ir.FindTrack("occupant");
  REQUIRE(car);
  REQUIRE(driver);
  CHECK(driver->z < car->z);
  REQUIRE(car->swaps.size() == 1);
  CHECK(car->swaps[0].on_collision);
  CHECK(car->swaps[0].sprite == r.variants.at("vehicle").at("wrecked"));
  const auto& v = std::get<LinearMotion>(car->segments[0].motion).velocity;
  CHECK(std::abs(v.x) == 3);
  CHECK(v.y == 0);
  CHECK(std::get<LinearMotion>(driver->segments[0].motion).velocity == v);
  REQUIRE(ir.collision);
  CHECK_FALSE(ir.collision->tick);
}

TEST_CASE("collision tick is ceil(gap / speed)") {
  const TimelineIR pending = Instantiate(Resolve(Caption("collide.json")));
  const SceneState s0 = Sample(pending, 0);
  const Box car = s0.entities[2].box, wall = s0.entities[0].box;
  const int expect = static_cast<int>(std::ceil((car.left - wall.right) / 3.0));
  const TimelineIR ir = ResolveCollisions(pending);
  REQUIRE(ir.collision->tick);
  CHECK(*ir.collision->tick == expect);
  CHECK(ir.FindTrack("vehicle")->swaps[0].tick == expect);
  CHECK_FALSE(ir.FindTrack("vehicle")->swaps[0].on_collision);
  CHECK(ValidateTimeline(ir).empty());

  // The car stops and the driver leaves at the ejection velocity.
  const Vec2 c0 = Sample(ir, expect).entities[2].position;
  CHECK(Sample(ir, ir.duration - 1).entities[2].position == c0);
  const Vec2 d0 = Sample(ir, expect).entities[1].position;
  const Vec2 d1 = Sample(ir, expect + 10).entities[1].position;
  CHECK((d1 - d0).x == doctest::Approx(-40));
  CHECK((d1 - d0).y == doctest::Approx(-30));
  CHECK(Sample(ir, expect).entities[2].sprite != Sample(ir, expect - 1).entities[2].sprite);
}

TEST_CASE("collision edge cases") {
  TimelineIR ir = Plain(50);
  ir.tracks = {BoxTrack("a", 0, {10, 10}, {0, 50, HoldMotion{{0, 0}}}),
               BoxTrack("b", 1, {10, 10}, {0, 50, LinearMotion{{5, 5}, {1, 0}}})};
  ir.tracks[1].collision_velocity = Vec2{0, 0};
  ir.collision = CollisionTrigger{"b", "a", std::nullopt};
  CHECK(*ResolveCollisions(ir).collision->tick == 0);

  ir.tracks[1].segments = {{0, 50, LinearMotion{{500, 0}, {-3, 0}}}};
  CHECK(KindOf([&] { ResolveCollisions(ir); }) == ErrorKind::kNeverCollides);

  // Exactly touching counts.
  ir.tracks[1].segments = {{0, 50, LinearMotion{{40, 0}, {-3, 0}}}};
  CHECK(*ResolveCollisions(ir).collision->tick == 10);
}

TEST_CASE("collision solver agrees with the brute-force scan") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> frac(0.0, 1.0), speed(0.25, 9.0);
  const ResolvedScene base = Resolve(Caption("collide.json"));
  int hits = 0, misses = 0;
  for (int i = 0; i < 300; ++i) {
    ResolvedScene r = base;
    r.scene.params["speed"] = speed(rng);
    r.scene.params["vehicle_at"] = Vec2{frac(rng), 0.3 + 0.7 * frac(rng)};
    r.scene.params["target_at"] = Vec2{frac(rng), 0.3 + 0.7 * frac(rng)};
    if (i % 3 == 0) r.scene.params["duration"] = std::floor(1 + 120 * frac(rng));
    const TimelineIR ir = Instantiate(r);
    const std::optional<int> scan = oracle::CollisionScan(ir, "vehicle", "target");
    try {
      const TimelineIR out = ResolveCollisions(ir);
      REQUIRE(scan);
      CHECK(*out.collision->tick == *scan);
      ++hits;
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kNeverCollides);
      CHECK_FALSE(scan);
      ++misses;
    }
  }
  CHECK(hits > 50);
  CHECK(misses > 10);
}

TEST_CASE("staged acceleration swaps at 30 and 90 and leaves the canvas") {
  const ResolvedScene r = Resolve(Caption("rocket.json"));
  const TimelineIR ir = Instantiate(r);
  const Track* craft = ir.FindTrack("craft");
  REQUIRE(craft->swaps.size() == 2);
  CHECK(craft->swaps[0].tick == 30);
  CHECK(craft->swaps[1].tick == 90);
  CHECK(craft->swaps[0].sprite == r.variants.at("craft").at("partial-thrust"));
  CHECK(craft->swaps[1].sprite == r.variants.at("craft").at("full-thrust"));
  CHECK(Sample(ir, 0).entities[0].visible);
  CHECK_FALSE(Sample(ir, ir.duration - 1).entities[0].visible);
  CHECK(Sample(ir, ir.duration - 2).entities[0].visible);
  // Per-stage speed grows.
  auto step = [&](int t) { return (Sample(ir, t + 1).entities[0].position - Sample(ir, t).entities[0].position).length(); };
  CHECK(step(10) == 0);
  CHECK(step(50) == doctest::Approx(1.5));
  CHECK(step(100) == doctest::Approx(6));
  CHECK(ValidateTimeline(ir).empty());
}

TEST_CASE("staged acceleration arc path") {
  ResolvedScene r = Resolve(Caption("rocket.json"));
  const TimelineIR line = Instantiate(r);
  r.scene.params["path"] = std::string("arc");
  r.scene.params["arc_c1_at"] = Vec2{0.7, 0.4};
  r.scene.params["arc_c2_at"] = Vec2{0.9, 0.1};
  const TimelineIR arc = Instantiate(r);
  const MotionSegment& last = arc.FindTrack("craft")->segments.back();
  CHECK(SegmentKindName(last.motion) == "Bezier");
  CHECK(arc.duration == line.duration);
  const Vec2 start = Sample(arc, 90).entities[0].position;
  CHECK(start == Sample(line, 90).entities[0].position);
  CHECK(Sample(arc, 120).entities[0].position.x > start.x);

  r.scene.params["path"] = std::string("zigzag");
  CHECK(KindOf([&] { Instantiate(r); }) == ErrorKind::kMissingParam);
}

TEST_CASE("gravity fall has constant second difference") {
  const TimelineIR ir = Instantiate(Resolve(Caption("apple.json")));
  const Track* body = ir.FindTrack("body");
  const MotionSegment* fall = nullptr;
  for (const auto& s : body->segments)
    if (std::holds_alternative<AcceleratedMotion>(s.motion)) fall = &s;
  REQUIRE(fall);
  const auto& m = std::get<AcceleratedMotion>(fall->motion);
  CHECK(m.v0 == Vec2{0, 0});
  CHECK(m.accel.y > 0);
  REQUIRE(fall->length() >= 3);
  for (int t = fall->start + 1; t < fall->end - 1; ++t) {
    const double y0 = Sample(ir, t - 1).entities[0].position.y;
    const double y1 = Sample(ir, t).entities[0].position.y;
    const double y2 = Sample(ir, t + 1).entities[0].position.y;
    CHECK(std::abs((y2 - 2 * y1 + y0) - 0.6) <= 1e-9);
  }
  // Lands above the ground line and stays there.
  const double ground = 0.92 * ir.canvas.height;
  CHECK(Sample(ir, ir.duration - 1).entities[0].box.bottom <= ground);
  CHECK(Sample(ir, fall->end).entities[0].position == Sample(ir, ir.duration - 1).entities[0].position);
}

TEST_CASE("circuit backgrounds follow the spark") {
  const ResolvedScene r = Resolve(Caption("bulb.json"));
  const TimelineIR ir = Instantiate(r);
  REQUIRE(ir.backgrounds.size() == 3);
  CHECK(ir.backgrounds[0].tick == 0);
  CHECK(ir.backgrounds[1].tick == ir.markers.at("closed"));
  CHECK(ir.backgrounds[2].tick == ir.markers.at("lit"));
  std::set<std::string> distinct;
  for (const auto& b : ir.backgrounds) distinct.insert(b.asset);
  CHECK(distinct.size() == 3);
  // The spark reaches the switch exactly when the circuit closes.
  const Vec2 sw{0.5 * 640, 0.22 * 480};
  const Vec2 at = Sample(ir, ir.markers.at("closed")).entities[1].position;
  CHECK((at - sw).length() < 1e-9);
  const Track* load = ir.FindTrack("load");
  REQUIRE(load->swaps.size() == 1);
  CHECK(load->swaps[0].tick == ir.markers.at("lit"));
  CHECK(ValidateTimeline(ir).empty());
}

TEST_CASE("hurricane grows until landfall, then shrinks and rotates") {
  const TimelineIR ir = Instantiate(Resolve(Caption("hurricane.json")));
  const int l = ir.markers.at("landfall");
  REQUIRE(l > 1);
  REQUIRE(l < ir.duration - 1);
  const Track* storm = ir.FindTrack("storm");
  REQUIRE(storm->rotation_interval == 15);
  for (int t = 1; t <= l; ++t)
    CHECK(Sample(ir, t).entities[0].size.width >= Sample(ir, t - 1).entities[0].size.width);
  for (int t = l + 1; t < ir.duration; ++t)
    CHECK(Sample(ir, t).entities[0].size.width <= Sample(ir, t - 1).entities[0].size.width);
  CHECK(Sample(ir, l).entities[0].size.width > Sample(ir, 0).entities[0].size.width);
  CHECK(Sample(ir, ir.duration - 1).entities[0].size.width < Sample(ir, l).entities[0].size.width);
  CHECK(Sample(ir, 61).entities[0].quarter_turns == 0);
  CHECK(Sample(ir, 16).entities[0].quarter_turns == 1);
  // Landfall is the first tick the box meets the land strip (x < 160).
  CHECK(Sample(ir, l).entities[0].box.left <= 160);
  CHECK(Sample(ir, l - 1).entities[0].box.left > 160);
}

TEST_CASE("phased inflate: three growth phases, two one-second holds") {
  for (int rate : {30, 24, 10}) {
    CAPTURE(rate);
    TimelineOptions o;
    o.tick_rate = rate;
    const TimelineIR ir = Instantiate(Resolve(Caption("balloon.json")), o);
    const Track* b = ir.FindTrack("inflatable");
    int holds = 0, growth = 0;
    for (const auto& s : b->segments) {
      if (std::holds_alternative<HoldMotion>(s.motion)) {
        ++holds;
        CHECK(s.length() == rate);
      } else {
        ++growth;
      }
    }
    CHECK(holds == 2);
    CHECK(growth == 3);
    // Size is frozen during the holds.
    for (const auto& s : b->segments)
      if (std::holds_alternative<HoldMotion>(s.motion))
        CHECK(Sample(ir, s.start).entities[1].size == Sample(ir, s.end - 1).entities[1].size);
    CHECK(Sample(ir, ir.duration - 1).entities[1].size == Size{110, 132});
    CHECK(Sample(ir, 0).entities[1].size == Size{10, 12});
    CHECK(ValidateTimeline(ir).empty());
  }
}

TEST_CASE("missing template parameters") {
  ResolvedScene r = Resolve(Caption("orbit.json"));
  r.scene.params.erase("dtheta");
  CHECK(KindOf([&] { Instantiate(r); }) == ErrorKind::kMissingParam);
  r = Resolve(Caption("collide.json"));
  r.scene.params["speed"] = std::string("fast");
  CHECK(KindOf([&] { Instantiate(r); }) == ErrorKind::kMissingParam);
  r = Resolve(Caption("balloon.json"));
  r.scene.params.erase("end_size");
  CHECK(KindOf([&] { Instantiate(r); }) == ErrorKind::kMissingParam);
}

TEST_CASE("every caption timeline is structurally valid and pure") {
  for (const auto& c : support::kCaptions) {
    CAPTURE(c.sentence);
    const TimelineIR ir = ResolveCollisions(Instantiate(Resolve(c.sentence)));
    CHECK(ValidateTimeline(ir).empty());
    for (const Track& t : ir.tracks)
      for (int tick = 0; tick < ir.duration; ++tick) {
        int covering = 0;
        for (const auto& s : t.segments) covering += s.start <= tick && tick < s.end;
        CHECK(covering == 1);
      }
    const std::string serial = CanonicalDump(TimelineToJson(ir));
    std::vector<std::string> states(4);
    {
      std::vector<std::jthread> pool;
      for (int w = 0; w < 4; ++w)
        pool.emplace_back([&, w] {
          std::string acc;
          for (int t = w; t < ir.duration; t += 4) {
            const SceneState s = Sample(ir, t);
            for (const auto& e : s.entities) acc += std::to_string(e.position.x) + std::to_string(e.position.y);
          }
          states[w] = acc;
        });
    }
    for (int w = 0; w < 4; ++w) {
      std::string acc;
      for (int t = w; t < ir.duration; t += 4) {
        const SceneState s = Sample(ir, t);
        for (const auto& e : s.entities) acc += std::to_string(e.position.x) + std::to_string(e.position.y);
      }
      CHECK(states[w] == acc);
    }
    CHECK(serial == CanonicalDump(TimelineToJson(ResolveCollisions(Instantiate(Resolve(c.sentence))))));
  }
}

TEST_CASE("validate_timeline flags broken structure") {
  TimelineIR ir = Plain(10);
  ir.tracks = {BoxTrack("a", 0, {4, 4}, {0, 5, HoldMotion{}}),
               BoxTrack("b", 0, {4, 4}, {0, 10, HoldMotion{}})};
  ir.tracks[0].scale_keys = {{3, 4, 4}, {3, 5, 5}};
  const auto v = ValidateTimeline(ir);
  CHECK(v.size() >= 3);  // coverage gap, duplicate z, non-increasing keys
  ir.backgrounds = {{0, "x"}, {0, "y"}};
  CHECK(ValidateTimeline(ir).size() > v.size());
}
