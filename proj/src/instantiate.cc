#include "text2anim/instantiate.h"

#include <algorithm>
#include <cmath>

#include "text2anim/error.h"

namespace text2anim {

namespace {

constexpr int kScanLimit = 4000;

// Extra sprite variants each template swaps to, keyed by slot.
std::vector<std::pair<std::string, std::vector<std::string>>> VariantTags(MotionTemplate t) {
  switch (t) {
    case MotionTemplate::kCollide: return {{"vehicle", {"wrecked"}}};
    case MotionTemplate::kStagedAccelerate:
      return {{"craft", {"partial-thrust"}}, {"craft", {"full-thrust"}}};
    case MotionTemplate::kCircuitSequence: return {{"load", {"lit"}}};
    default: return {};
  }
}

std::vector<std::vector<std::string>> BackdropStages(MotionTemplate t) {
  if (t == MotionTemplate::kCircuitSequence) return {{"open"}, {"closed"}, {"closed", "lit"}};
  return {{}};
}

std::string Join(const std::vector<std::string>& tags) {
  std::string out;
  for (const std::string& t : tags) out += (out.empty() ? "" : ",") + t;
  return out;
}

class Builder {
 public:
  Builder(const ResolvedScene& r, const TimelineOptions& o) : r_(r), o_(o) {
    ir_.canvas = o.canvas;
    ir_.tick_rate = o.tick_rate;
  }

  TimelineIR Build() {
    switch (r_.scene.motion) {
      case MotionTemplate::kCollide: Collide(); break;
      case MotionTemplate::kOrbit: Orbit(); break;
      case MotionTemplate::kStagedAccelerate: StagedAccelerate(); break;
      case MotionTemplate::kGravityFall: GravityFall(); break;
      case MotionTemplate::kCircuitSequence: CircuitSequence(); break;
      case MotionTemplate::kGrowRotateTravel: GrowRotateTravel(); break;
      case MotionTemplate::kPhasedInflate: PhasedInflate(); break;
      case MotionTemplate::kLinearTravel: LinearTravel(); break;
    }
    if (ir_.backgrounds.empty()) ir_.backgrounds.push_back({0, r_.backgrounds.at(0)});
    Props();
    std::stable_sort(ir_.tracks.begin(), ir_.tracks.end(),
                     [](const Track& a, const Track& b) { return a.z < b.z; });
    return std::move(ir_);
  }

 private:
  [[noreturn]] void Missing(const std::string& name) const {
    throw Error(ErrorKind::kMissingParam,
                std::string(TemplateName(r_.scene.motion)) + " needs parameter '" + name + "'");
  }

  template <typename T>
  const T& Get(const std::string& name) const {
    auto it = r_.scene.params.find(name);
    if (it == r_.scene.params.end()) Missing(name);
    const T* v = std::get_if<T>(&it->second);
    if (!v) Missing(name);
    return *v;
  }
  double Num(const std::string& name) const { return Get<double>(name); }
  int Ticks(const std::string& name) const {
    const double v = Num(name);
    if (!(v >= 0)) Missing(name);
    return static_cast<int>(std::lround(v));
  }
  bool Has(const std::string& name) const { return r_.scene.params.count(name) > 0; }
  Vec2 Frac(Vec2 f) const { return {f.x * o_.canvas.width, f.y * o_.canvas.height}; }
  Vec2 At(const std::string& name) const { return Frac(Get<Vec2>(name)); }

  const SceneEntity& Slot(const std::string& slot) const {
    const SceneEntity* e = r_.scene.FindSlot(slot);
    if (!e)
      throw Error(ErrorKind::kMissingRole,
                  std::string(TemplateName(r_.scene.motion)) + " has no '" + slot + "'");
    return *e;
  }

  Track MakeTrack(const SceneEntity& e) const {
    Track t;
    t.entity = EntityId(e);
    t.z = e.z;
    t.sprite = r_.sprites.at(t.entity);
    const AnimatedSprite& img = r_.Image(t.sprite);
    t.native_size = {img.frames.front().width(), img.frames.front().height()};
    t.anchor = r_.Record(t.sprite).anchor;
    if (img.frames.size() > 1) t.frame_delays_ms = img.delays_ms;
    return t;
  }

  std::string Variant(const std::string& entity, const std::string& tag) const {
    auto it = r_.variants.find(entity);
    if (it == r_.variants.end()) return r_.sprites.at(entity);
    auto v = it->second.find(tag);
    return v == it->second.end() ? r_.sprites.at(entity) : v->second;
  }

  Track* Add(Track t) {
    ir_.tracks.push_back(std::move(t));
    return &ir_.tracks.back();
  }

  void HoldAll(Track& t, Vec2 at) { t.segments = {{0, ir_.duration, HoldMotion{at}}}; }

  void Collide() {
    const double speed = Num("speed");
    if (!(speed > 0)) Missing("speed");
    Track target = MakeTrack(Slot("target"));
    Track vehicle = MakeTrack(Slot("vehicle"));
    const Vec2 target_at = At("target_at");
    const Vec2 vehicle_at = At("vehicle_at");
    const double dir = target_at.x < vehicle_at.x ? -1.0 : 1.0;
    const Vec2 v{dir * speed, 0.0};

    // Probe both boxes at tick 0 for the horizontal gap.
    ir_.duration = 1;
    target.segments = {{0, 1, HoldMotion{target_at}}};
    vehicle.segments = {{0, 1, LinearMotion{vehicle_at, v}}};
    const Box tb = SampleTrack(ir_, target, 0).box;
    const Box vb = SampleTrack(ir_, vehicle, 0).box;
    const double gap = std::max(0.0, dir < 0 ? vb.left - tb.right : tb.left - vb.right);
    const int contact = static_cast<int>(std::ceil(gap / speed));
    ir_.duration = Has("duration") ? Ticks("duration") : contact + Ticks("tail_ticks") + 1;
    if (ir_.duration < 1) Missing("duration");

    target.segments = {{0, ir_.duration, HoldMotion{target_at}}};
    vehicle.segments = {{0, ir_.duration, LinearMotion{vehicle_at, v}}};
    vehicle.collision_velocity = Vec2{0.0, 0.0};
    vehicle.swaps.push_back({0, true, Variant(vehicle.entity, "wrecked")});
    ir_.collision = CollisionTrigger{vehicle.entity, target.entity, std::nullopt};

    if (const SceneEntity* occ = r_.scene.FindSlot("occupant")) {
      Track o = MakeTrack(*occ);
      o.segments = {{0, ir_.duration,
                     LinearMotion{vehicle_at + Get<Vec2>("occupant_offset"), v}}};
      o.collision_velocity = Get<Vec2>("eject_velocity");
      Add(std::move(o));
    }
    Add(std::move(target));
    Add(std::move(vehicle));
  }

  void Orbit() {
    ir_.duration = Ticks("duration");
    if (ir_.duration < 1) Missing("duration");
    const Vec2 c = At("center_at");
    const double r = Num("radius_frac") * o_.canvas.width;
    if (!(r > 0)) Missing("radius_frac");
    Track center = MakeTrack(Slot("center"));
    HoldAll(center, c);
    Track body = MakeTrack(Slot("body"));
    body.segments = {{0, ir_.duration, OrbitMotion{c, r, Num("theta0"), Num("dtheta")}}};
    Add(std::move(center));
    Add(std::move(body));
  }

  void StagedAccelerate() {
    Track craft = MakeTrack(Slot("craft"));
    const Vec2 p0 = At("start_at");
    Vec2 d = Get<Vec2>("direction");
    if (d.length() == 0) Missing("direction");
    d = d * (1.0 / d.length());
    const int s1 = Ticks("stage1_tick");
    const int s2 = Ticks("stage2_tick");
    if (s1 < 1 || s2 <= s1) Missing("stage2_tick");
    const double v0 = Num("stage0_speed"), v1 = Num("stage1_speed"), v2 = Num("stage2_speed");
    if (!(v2 > 0)) Missing("stage2_speed");

    auto stage = [&](int start, int end, Vec2 from, double speed) -> MotionSegment {
      if (speed == 0) return {start, end, HoldMotion{from}};
      return {start, end, LinearMotion{from, d * speed}};
    };
    const Vec2 p1 = p0 + d * (v0 * s1);
    const Vec2 p2 = p1 + d * (v1 * (s2 - s1));
    craft.segments = {stage(0, s1, p0, v0), stage(s1, s2, p1, v1),
                      stage(s2, s2 + kScanLimit, p2, v2)};

    // Run until the sprite has fully left the canvas.
    ir_.duration = s2 + kScanLimit;
    int exit = s2;
    while (exit < s2 + kScanLimit - 1 && SampleTrack(ir_, craft, exit).visible) ++exit;
    ir_.duration = exit + 1;
    craft.segments.back().end = ir_.duration;

    if (Get<std::string>("path") == "arc") {
      const int len = ir_.duration - s2;
      const Vec2 p3 = p2 + d * (v2 * len);
      Vec2 c1 = p2 + (p3 - p2) * (1.0 / 3.0);
      Vec2 c2 = p2 + (p3 - p2) * (2.0 / 3.0);
      if (Has("arc_c1_at")) c1 = At("arc_c1_at");
      if (Has("arc_c2_at")) c2 = At("arc_c2_at");
      craft.segments.back().motion = BezierMotion{{p2, c1, c2, p3}};
    } else if (Get<std::string>("path") != "line") {
      Missing("path");
    }
    craft.swaps = {{s1, false, Variant(craft.entity, "partial-thrust")},
                   {s2, false, Variant(craft.entity, "full-thrust")}};
    Add(std::move(craft));
  }

  void GravityFall() {
    Track body = MakeTrack(Slot("body"));
    const Vec2 p0 = At("body_at");
    const double g = Num("gravity");
    if (!(g > 0)) Missing("gravity");
    const int hang = Ticks("hang_ticks");
    const int rest = Ticks("rest_ticks");
    const double ground = Num("ground_frac") * o_.canvas.height;

    ir_.duration = 1;
    body.segments = {{0, 1, HoldMotion{p0}}};
    const double drop = std::max(0.0, ground - SampleTrack(ir_, body, 0).box.bottom);
    const int n = static_cast<int>(std::floor(std::sqrt(2.0 * drop / g)));
    const Vec2 a{0.0, g};
    const MotionSegment fall{hang, hang + n + 1, AcceleratedMotion{p0, {0.0, 0.0}, a}};
    const Vec2 landed = PositionAt(fall, n);
    body.segments.clear();
    if (hang > 0) body.segments.push_back({0, hang, HoldMotion{p0}});
    body.segments.push_back(fall);
    ir_.duration = fall.end + rest;
    if (rest > 0) body.segments.push_back({fall.end, ir_.duration, HoldMotion{landed}});
    ir_.markers["landed"] = fall.end - 1;
    Add(std::move(body));
  }

  void CircuitSequence() {
    const std::vector<Vec2>& frac = Get<std::vector<Vec2>>("path");
    if (frac.size() < 2) Missing("path");
    const double speed = Num("speed");
    if (!(speed > 0)) Missing("speed");
    const size_t sw = static_cast<size_t>(Ticks("switch_waypoint"));
    const size_t ld = static_cast<size_t>(Ticks("load_waypoint"));
    if (sw >= frac.size()) Missing("switch_waypoint");
    if (ld >= frac.size()) Missing("load_waypoint");

    Track spark = MakeTrack(Slot("spark"));
    std::vector<int> reach{0};
    for (size_t i = 0; i + 1 < frac.size(); ++i) {
      const Vec2 a = Frac(frac[i]), b = Frac(frac[i + 1]);
      const int k = std::max(1, static_cast<int>(std::lround((b - a).length() / speed)));
      spark.segments.push_back({reach.back(), reach.back() + k,
                                LinearMotion{a, (b - a) * (1.0 / k)}});
      reach.push_back(reach.back() + k);
    }
    ir_.duration = reach.back() + std::max(1, Ticks("tail_ticks"));
    spark.segments.push_back({reach.back(), ir_.duration, HoldMotion{Frac(frac.back())}});

    Track load = MakeTrack(Slot("load"));
    HoldAll(load, Frac(frac[ld]));
    load.swaps.push_back({reach[ld], false, Variant(load.entity, "lit")});

    const std::vector<int> stage_ticks{0, reach[sw], reach[ld]};
    for (size_t i = 0; i < r_.backgrounds.size() && i < stage_ticks.size(); ++i)
      if (ir_.backgrounds.empty() || stage_ticks[i] > ir_.backgrounds.back().tick)
        ir_.backgrounds.push_back({stage_ticks[i], r_.backgrounds[i]});
      else
        ir_.backgrounds.back().asset = r_.backgrounds[i];
    ir_.markers["closed"] = reach[sw];
    ir_.markers["lit"] = reach[ld];
    Add(std::move(load));
    Add(std::move(spark));
  }

  void GrowRotateTravel() {
    Track storm = MakeTrack(Slot("storm"));
    const Vec2 p0 = At("start_at");
    const Vec2 v = Get<Vec2>("velocity");
    const double s0 = Num("start_size"), g = Num("growth"), smin = Num("min_size");
    const int after = Ticks("post_landfall_ticks");
    const int k = Ticks("rotation_interval");
    if (!(s0 >= 1)) Missing("start_size");
    if (!(smin >= 1)) Missing("min_size");
    if (k < 1) Missing("rotation_interval");
    const double aspect = static_cast<double>(storm.native_size.height) / storm.native_size.width;
    auto key = [&](int tick, double w) { return ScaleKey{tick, w, w * aspect}; };

    storm.segments = {{0, kScanLimit, LinearMotion{p0, v}}};
    storm.scale_keys = {key(0, s0), key(kScanLimit, std::max(1.0, s0 + g * kScanLimit))};
    storm.rotation_interval = k;
    ir_.duration = kScanLimit;

    // Landfall: first overlap with the backdrop's land region, else the
    // crossing of landfall_frac of the canvas width.
    std::optional<int> landfall;
    const AssetRecord& bg = r_.Record(r_.backgrounds.at(0));
    if (auto it = bg.regions.find("land"); it != bg.regions.end()) {
      const Sprite& img = r_.Image(r_.backgrounds.at(0)).frames.front();
      const double sx = static_cast<double>(o_.canvas.width) / img.width();
      const double sy = static_cast<double>(o_.canvas.height) / img.height();
      const Box land{it->second.left * sx, it->second.top * sy, it->second.right * sx,
                     it->second.bottom * sy};
      for (int t = 0; t < kScanLimit && !landfall; ++t)
        if (SampleTrack(ir_, storm, t).box.Overlaps(land)) landfall = t;
    }
    if (!landfall) {
      const double x = Num("landfall_frac") * o_.canvas.width;
      for (int t = 0; t < kScanLimit && !landfall; ++t) {
        const double px = p0.x + v.x * t;
        if (v.x < 0 ? px <= x : px >= x) landfall = t;
      }
    }
    if (!landfall) Missing("landfall_frac");

    const int l = *landfall;
    const double peak = std::max(1.0, s0 + g * l);
    ir_.duration = l + std::max(1, after);
    storm.segments = {{0, ir_.duration, LinearMotion{p0, v}}};
    storm.scale_keys = {key(0, s0)};
    if (l > 0) storm.scale_keys.push_back(key(l, peak));
    storm.scale_keys.push_back(key(ir_.duration - 1 > l ? ir_.duration - 1 : l + 1,
                                   std::max(smin, peak - g * after)));
    ir_.markers["landfall"] = l;
    Add(std::move(storm));
  }

  void PhasedInflate() {
    const int p = Ticks("phase_ticks");
    if (p < 1) Missing("phase_ticks");
    const int pause = o_.tick_rate;
    const Vec2 s0 = Get<Vec2>("start_size"), s3 = Get<Vec2>("end_size");
    if (s0.x < 1 || s0.y < 1) Missing("start_size");
    if (s3.x < 1 || s3.y < 1) Missing("end_size");
    ir_.duration = 3 * p + 2 * pause;

    Track inflater = MakeTrack(Slot("inflater"));
    HoldAll(inflater, At("inflater_at"));

    Track balloon = MakeTrack(Slot("inflatable"));
    const Vec2 at = At("inflatable_at");
    auto size = [&](int third) { return s0 + (s3 - s0) * (third / 3.0); };
    int t = 0;
    for (int phase = 0; phase < 3; ++phase) {
      const Vec2 from = size(phase), to = size(phase + 1);
      balloon.segments.push_back({t, t + p, LinearMotion{at, {0.0, 0.0}}});
      if (balloon.scale_keys.empty() || balloon.scale_keys.back().tick != t)
        balloon.scale_keys.push_back({t, from.x, from.y});
      const int grown = phase == 2 ? t + p - 1 : t + p;
      balloon.scale_keys.push_back({grown, to.x, to.y});
      t += p;
      if (phase < 2) {
        balloon.segments.push_back({t, t + pause, HoldMotion{at}});
        t += pause;
        balloon.scale_keys.push_back({t, to.x, to.y});
      }
    }
    // The last phase ends at duration - 1; collapse a duplicate tick.
    auto& keys = balloon.scale_keys;
    keys.erase(std::unique(keys.begin(), keys.end(),
                           [](const ScaleKey& a, const ScaleKey& b) { return a.tick == b.tick; }),
               keys.end());
    Add(std::move(inflater));
    Add(std::move(balloon));
  }

  void LinearTravel() {
    ir_.duration = Ticks("duration");
    if (ir_.duration < 1) Missing("duration");
    Track mover = MakeTrack(Slot("mover"));
    mover.segments = {{0, ir_.duration, LinearMotion{At("start_at"), Get<Vec2>("velocity")}}};
    Add(std::move(mover));
  }

  // Unbound mentions stand still along the bottom of the canvas.
  void Props() {
    int i = 0;
    for (const SceneEntity& e : r_.scene.entities) {
      if (e.slot != "prop") continue;
      Track t = MakeTrack(e);
      HoldAll(t, Frac({0.15 + 0.2 * (i++ % 4), 0.9}));
      Add(std::move(t));
    }
  }

  const ResolvedScene& r_;
  const TimelineOptions& o_;
  TimelineIR ir_;
};

}  // namespace

const AnimatedSprite& ResolvedScene::Image(const std::string& path) const {
  auto it = images.find(path);
  if (it == images.end() || !it->second)
    throw Error(ErrorKind::kMissingFile, "sprite not resolved: " + path);
  return *it->second;
}

const AssetRecord& ResolvedScene::Record(const std::string& path) const {
  auto it = records.find(path);
  if (it == records.end()) throw Error(ErrorKind::kMissingFile, "record not resolved: " + path);
  return it->second;
}

std::string EntityId(const SceneEntity& entity) {
  if (entity.slot == "prop") return "prop_" + std::to_string(entity.z);
  return entity.slot;
}

ResolvedScene ResolveScene(const SceneSpec& scene, const AssetBase& assets) {
  ResolvedScene r;
  r.scene = scene;
  auto use = [&](const AssetRecord& rec) {
    if (!r.records.count(rec.path)) {
      r.records.emplace(rec.path, rec);
      r.images.emplace(rec.path, std::make_shared<const AnimatedSprite>(assets.LoadSprite(rec)));
    }
    return rec.path;
  };
  auto with = [](std::vector<std::string> mods, const std::vector<std::string>& extra) {
    for (const std::string& t : extra)
      if (std::find(mods.begin(), mods.end(), t) == mods.end()) mods.push_back(t);
    return mods;
  };
  auto has_all = [](const AssetRecord& rec, const std::vector<std::string>& tags) {
    return std::all_of(tags.begin(), tags.end(), [&](const std::string& t) {
      return std::find(rec.tags.begin(), rec.tags.end(), t) != rec.tags.end();
    });
  };

  const AssetRecord& base_bg = assets.Query(scene.background.lemma, scene.background.modifiers);
  for (const auto& stage : BackdropStages(scene.motion)) {
    const AssetRecord& rec =
        assets.Query(scene.background.lemma, with(scene.background.modifiers, stage));
    r.backgrounds.push_back(use(has_all(rec, stage) ? rec : base_bg));
  }

  const auto variant_tags = VariantTags(scene.motion);
  for (const SceneEntity& e : scene.entities) {
    const std::string id = EntityId(e);
    const AssetRecord& base = assets.Query(e.mention.lemma, e.mention.modifiers);
    r.sprites[id] = use(base);
    for (const auto& [slot, tags] : variant_tags) {
      if (slot != e.slot) continue;
      const AssetRecord& rec = assets.Query(e.mention.lemma, with(e.mention.modifiers, tags));
      r.variants[id][Join(tags)] = use(has_all(rec, tags) ? rec : base);
    }
  }
  return r;
}

TimelineIR Instantiate(const ResolvedScene& resolved, const TimelineOptions& options) {
  if (options.tick_rate < 1 || options.canvas.width < 1 || options.canvas.height < 1)
    throw Error(ErrorKind::kUsage, "canvas and tick rate must be positive");
  return Builder(resolved, options).Build();
}

}  // namespace text2anim
