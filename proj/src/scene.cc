#include "text2anim/scene.h"

#include <algorithm>
#include <set>

#include "text2anim/error.h"

namespace text2anim {

namespace {

constexpr std::pair<Role, std::string_view> kRoleNames[] = {
    {Role::kAgent, "Agent"},
    {Role::kPatient, "Patient"},
    {Role::kLocation, "Location"},
    {Role::kSource, "Source"},
};

constexpr std::pair<MotionTemplate, std::string_view> kTemplateNames[] = {
    {MotionTemplate::kCollide, "Collide"},
    {MotionTemplate::kOrbit, "Orbit"},
    {MotionTemplate::kStagedAccelerate, "StagedAccelerate"},
    {MotionTemplate::kGravityFall, "GravityFall"},
    {MotionTemplate::kCircuitSequence, "CircuitSequence"},
    {MotionTemplate::kGrowRotateTravel, "GrowRotateTravel"},
    {MotionTemplate::kPhasedInflate, "PhasedInflate"},
    {MotionTemplate::kLinearTravel, "LinearTravel"},
};

// Verb + particle pairs read as one predicate.
bool IsPhrasal(std::string_view verb, std::string_view particle) {
  return verb == "turn" && particle == "on";
}

// Preposition -> role of its object.
Role PrepositionRole(std::string_view prep) {
  if (prep == "from") return Role::kSource;
  if (prep == "into" || prep == "onto" || prep == "against") return Role::kPatient;
  return Role::kLocation;
}

struct SlotRule {
  std::string_view slot;
  Role role;
  bool conjoined;  // taken from a conjoined clause rather than the main one
};

// Slot bindings in draw order (first drawn lowest). Unbound mentions become
// props drawn beneath everything.
std::vector<SlotRule> SlotRules(MotionTemplate t) {
  switch (t) {
    case MotionTemplate::kCollide:
      // The occupant is drawn before the vehicle so it shows through it.
      return {{"target", Role::kPatient, false},
              {"occupant", Role::kPatient, true},
              {"vehicle", Role::kAgent, false}};
    case MotionTemplate::kOrbit:
      return {{"center", Role::kPatient, false}, {"body", Role::kAgent, false}};
    case MotionTemplate::kStagedAccelerate:
      return {{"craft", Role::kAgent, false}};
    case MotionTemplate::kGravityFall:
      return {{"body", Role::kAgent, false}};
    case MotionTemplate::kCircuitSequence:
      return {{"load", Role::kPatient, false}, {"spark", Role::kAgent, false}};
    case MotionTemplate::kGrowRotateTravel:
      return {{"storm", Role::kAgent, false}};
    case MotionTemplate::kPhasedInflate:
      return {{"inflater", Role::kAgent, false},
              {"inflatable", Role::kPatient, false}};
    case MotionTemplate::kLinearTravel:
      return {{"mover", Role::kAgent, false}};
  }
  return {};
}

AssetQuery DefaultBackdrop(MotionTemplate t) {
  switch (t) {
    case MotionTemplate::kCollide: return {"street", {}};
    case MotionTemplate::kOrbit: return {"sky", {"black"}};
    case MotionTemplate::kStagedAccelerate: return {"space", {}};
    case MotionTemplate::kGravityFall: return {"sky", {"blue"}};
    case MotionTemplate::kCircuitSequence: return {"circuit", {}};
    case MotionTemplate::kGrowRotateTravel: return {"ocean", {}};
    case MotionTemplate::kPhasedInflate: return {"room", {}};
    case MotionTemplate::kLinearTravel: return {"street", {}};
  }
  return {"sky", {}};
}

const LexiconEntry& Entry(const Lexicon& lexicon, const Token& t) {
  const LexiconEntry* e = lexicon.Find(t.lemma);
  if (!e)
    throw Error(ErrorKind::kUnknownLexeme,
                "token " + std::to_string(t.index) + ": lemma '" + t.lemma +
                    "' is not in the lexicon",
                t.index);
  return *e;
}

// Main verb first, then each conjoined verb in sentence order.
std::vector<int> ClauseVerbs(const DepTree& tree) {
  std::vector<int> verbs{tree.root};
  for (const DepEdge* e : tree.Dependents(tree.root))
    if (e->label == DepLabel::kConj && tree.tokens[e->dependent].pos == Pos::kVerb)
      verbs.push_back(e->dependent);
  return verbs;
}

std::vector<std::string> Particles(const DepTree& tree, int verb) {
  std::vector<std::string> out;
  for (const DepEdge* e : tree.Dependents(verb)) {
    const std::string& lemma = tree.tokens[e->dependent].lemma;
    if (e->label == DepLabel::kPrep && IsPhrasal(tree.tokens[verb].lemma, lemma))
      out.push_back(lemma);
  }
  return out;
}

bool IsPredicateTree(const DepTree& tree) {
  return !tree.tokens.empty() && tree.root >= 0 &&
         tree.root < static_cast<int>(tree.tokens.size()) &&
         tree.tokens[tree.root].pos == Pos::kVerb;
}

}  // namespace

std::string_view RoleName(Role role) {
  for (const auto& [r, name] : kRoleNames)
    if (r == role) return name;
  return "?";
}

std::optional<Role> RoleFromName(std::string_view name) {
  for (const auto& [r, n] : kRoleNames)
    if (n == name) return r;
  return std::nullopt;
}

std::string_view TemplateName(MotionTemplate t) {
  for (const auto& [id, name] : kTemplateNames)
    if (id == t) return name;
  return "?";
}

std::optional<MotionTemplate> TemplateFromName(std::string_view name) {
  for (const auto& [id, n] : kTemplateNames)
    if (n == name) return id;
  return std::nullopt;
}

const SceneEntity* SceneSpec::FindSlot(std::string_view slot) const {
  for (const SceneEntity& e : entities)
    if (e.slot == slot) return &e;
  return nullptr;
}

std::vector<EntityMention> ExtractMentions(const DepTree& tree,
                                           const Lexicon& lexicon) {
  std::vector<EntityMention> mentions;
  if (!IsPredicateTree(tree)) return mentions;

  const std::vector<int> verbs = ClauseVerbs(tree);
  for (size_t clause = 0; clause < verbs.size(); ++clause) {
    const int verb = verbs[clause];
    auto add = [&](int head, Role role) {
      const Token& t = tree.tokens[head];
      const LexiconEntry& entry = Entry(lexicon, t);
      if (entry.category != Category::kPhysicalEntity &&
          entry.category != Category::kLocation)
        throw Error(ErrorKind::kUnsupportedConstruction,
                    "token " + std::to_string(head) + ": '" + t.lemma +
                        "' cannot name an entity",
                    head);
      EntityMention m;
      m.token = head;
      m.lemma = t.lemma;
      m.role = role;
      m.clause = static_cast<int>(clause);
      for (const DepEdge* d : tree.Dependents(head)) {
        if (d->label != DepLabel::kAmod && d->label != DepLabel::kCompound) continue;
        const Token& mod = tree.tokens[d->dependent];
        const LexiconEntry& mod_entry = Entry(lexicon, mod);
        if (mod_entry.category != Category::kProperty &&
            mod_entry.category != Category::kPhysicalEntity)
          throw Error(ErrorKind::kUnsupportedConstruction,
                      "token " + std::to_string(mod.index) + ": '" + mod.lemma +
                          "' cannot modify an entity",
                      mod.index);
        m.modifiers.push_back(mod.lemma);
      }
      mentions.push_back(std::move(m));
    };

    for (const DepEdge* e : tree.Dependents(verb)) {
      switch (e->label) {
        case DepLabel::kNsubj:
          add(e->dependent, Role::kAgent);
          break;
        case DepLabel::kNsubjpass:
        case DepLabel::kDobj:
          add(e->dependent, Role::kPatient);
          break;
        case DepLabel::kPrep: {
          const std::string& prep = tree.tokens[e->dependent].lemma;
          const bool particle = IsPhrasal(tree.tokens[verb].lemma, prep);
          for (const DepEdge* p : tree.Dependents(e->dependent))
            if (p->label == DepLabel::kPobj)
              add(p->dependent, particle ? Role::kPatient : PrepositionRole(prep));
          break;
        }
        default:
          break;
      }
    }
  }
  std::sort(mentions.begin(), mentions.end(),
            [](const EntityMention& a, const EntityMention& b) {
              return a.token < b.token;
            });
  return mentions;
}

MotionTemplate MapAction(const Lexicon& lexicon, std::string_view verb,
                         std::span<const std::string> particles) {
  const LexiconEntry* entry = lexicon.Find(verb);
  if (!entry || entry->category != Category::kAction)
    throw Error(ErrorKind::kNotAnAction,
                "'" + std::string(verb) + "' is not an action verb");
  auto has = [&](std::string_view p) {
    return std::find(particles.begin(), particles.end(), p) != particles.end();
  };
  if (verb == "crash") return MotionTemplate::kCollide;
  if (verb == "orbit") return MotionTemplate::kOrbit;
  if (verb == "accelerate") return MotionTemplate::kStagedAccelerate;
  if (verb == "fall") return MotionTemplate::kGravityFall;
  if (verb == "turn" && has("on")) return MotionTemplate::kCircuitSequence;
  if (verb == "form") return MotionTemplate::kGrowRotateTravel;
  if (verb == "inflate") return MotionTemplate::kPhasedInflate;
  return MotionTemplate::kLinearTravel;
}

std::vector<Role> RequiredRoles(MotionTemplate t) {
  switch (t) {
    case MotionTemplate::kCollide:
    case MotionTemplate::kOrbit:
    case MotionTemplate::kCircuitSequence:
    case MotionTemplate::kPhasedInflate:
      return {Role::kAgent, Role::kPatient};
    default:
      return {Role::kAgent};
  }
}

ParamMap DefaultParams(MotionTemplate t) {
  switch (t) {
    case MotionTemplate::kCollide:
      return {{"speed", 3.0},
              {"vehicle_at", Vec2{0.62, 0.86}},
              {"target_at", Vec2{0.02, 0.86}},
              {"occupant_offset", Vec2{-12.0, -30.0}},
              {"eject_velocity", Vec2{-4.0, -3.0}},
              {"tail_ticks", 50.0}};
    case MotionTemplate::kOrbit:
      return {{"center_at", Vec2{0.5, 0.5}},
              {"radius_frac", 0.45},
              {"theta0", 0.0},
              {"dtheta", 1.0},
              {"duration", 180.0}};
    case MotionTemplate::kStagedAccelerate:
      return {{"start_at", Vec2{0.5, 0.78}},
              {"direction", Vec2{0.0, -1.0}},
              {"stage1_tick", 30.0},
              {"stage2_tick", 90.0},
              {"stage0_speed", 0.0},
              {"stage1_speed", 1.5},
              {"stage2_speed", 6.0},
              {"path", std::string("line")}};
    case MotionTemplate::kGravityFall:
      return {{"body_at", Vec2{0.5, 0.3}},
              {"gravity", 0.6},
              {"hang_ticks", 30.0},
              {"ground_frac", 0.92},
              {"rest_ticks", 45.0}};
    case MotionTemplate::kCircuitSequence:
      return {{"path", std::vector<Vec2>{{0.14, 0.78}, {0.14, 0.22}, {0.5, 0.22},
                                         {0.86, 0.22}, {0.86, 0.78}, {0.14, 0.78}}},
              {"speed", 5.0},
              {"switch_waypoint", 2.0},
              {"load_waypoint", 3.0},
              {"tail_ticks", 15.0}};
    case MotionTemplate::kGrowRotateTravel:
      return {{"start_at", Vec2{0.95, 0.4}},
              {"velocity", Vec2{-3.0, 0.4}},
              {"start_size", 24.0},
              {"growth", 0.8},
              {"min_size", 16.0},
              {"rotation_interval", 15.0},
              {"post_landfall_ticks", 50.0},
              {"landfall_frac", 0.3}};
    case MotionTemplate::kPhasedInflate:
      return {{"inflater_at", Vec2{0.38, 0.92}},
              {"inflatable_at", Vec2{0.42, 0.6}},
              {"phase_ticks", 30.0},
              {"start_size", Vec2{10.0, 12.0}},
              {"end_size", Vec2{110.0, 132.0}}};
    case MotionTemplate::kLinearTravel:
      return {{"start_at", Vec2{0.1, 0.75}},
              {"velocity", Vec2{3.0, 0.0}},
              {"duration", 150.0}};
  }
  return {};
}

SceneSpec CompileScene(const DepTree& tree, const Lexicon& lexicon) {
  if (!IsPredicateTree(tree))
    throw Error(ErrorKind::kNoPredicate, "tree root is not a verb");

  const Token& verb = tree.tokens[tree.root];
  const std::vector<std::string> particles = Particles(tree, tree.root);
  SceneSpec scene;
  scene.motion = MapAction(lexicon, verb.lemma, particles);
  scene.params = DefaultParams(scene.motion);

  std::vector<EntityMention> mentions = ExtractMentions(tree, lexicon);
  for (Role role : RequiredRoles(scene.motion)) {
    bool found = std::any_of(mentions.begin(), mentions.end(),
                             [&](const EntityMention& m) {
                               return m.clause == 0 && m.role == role;
                             });
    if (!found)
      throw Error(ErrorKind::kMissingRole,
                  std::string(TemplateName(scene.motion)) + " requires " +
                      std::string(RoleName(role)));
  }

  // Backdrop: a main-clause Location wins, then a Source, then the template
  // default.
  std::optional<size_t> backdrop;
  for (Role role : {Role::kLocation, Role::kSource}) {
    for (size_t i = 0; i < mentions.size() && !backdrop; ++i)
      if (mentions[i].clause == 0 && mentions[i].role == role) backdrop = i;
  }
  if (backdrop) {
    scene.background = {mentions[*backdrop].lemma, mentions[*backdrop].modifiers};
    mentions.erase(mentions.begin() + static_cast<long>(*backdrop));
  } else {
    scene.background = DefaultBackdrop(scene.motion);
  }

  std::vector<bool> used(mentions.size(), false);
  std::vector<SceneEntity> bound;
  for (const SlotRule& rule : SlotRules(scene.motion)) {
    for (size_t i = 0; i < mentions.size(); ++i) {
      const EntityMention& m = mentions[i];
      if (used[i] || m.role != rule.role) continue;
      if (rule.conjoined ? m.clause == 0 : m.clause != 0) continue;
      used[i] = true;
      bound.push_back({m, std::string(rule.slot), 0});
      break;
    }
  }
  // A conjoined clause may make its entity an Agent ("... and the driver
  // jumps"); the Collide occupant takes either.
  if (scene.motion == MotionTemplate::kCollide && !scene.FindSlot("occupant")) {
    for (size_t i = 0; i < mentions.size(); ++i) {
      if (used[i] || mentions[i].clause == 0) continue;
      used[i] = true;
      bound.insert(bound.begin() + 1, SceneEntity{mentions[i], "occupant", 0});
      break;
    }
  }

  for (size_t i = 0; i < mentions.size(); ++i)
    if (!used[i]) scene.entities.push_back({mentions[i], "prop", 0});
  for (SceneEntity& e : bound) scene.entities.push_back(std::move(e));
  for (size_t i = 0; i < scene.entities.size(); ++i)
    scene.entities[i].z = static_cast<int>(i);
  return scene;
}

std::vector<std::string> ValidateScene(const SceneSpec& scene) {
  std::vector<std::string> problems;
  std::set<int> zs;
  std::set<int> tokens;
  for (const SceneEntity& e : scene.entities) {
    if (!zs.insert(e.z).second) problems.push_back("duplicate z " + std::to_string(e.z));
    if (!tokens.insert(e.mention.token).second)
      problems.push_back("token " + std::to_string(e.mention.token) + " bound twice");
  }
  for (const SlotRule& rule : SlotRules(scene.motion)) {
    if (rule.conjoined) continue;
    const auto required = RequiredRoles(scene.motion);
    if (std::find(required.begin(), required.end(), rule.role) == required.end())
      continue;
    if (!scene.FindSlot(rule.slot))
      problems.push_back(std::string(TemplateName(scene.motion)) + " slot '" +
                         std::string(rule.slot) + "' unbound");
  }
  return problems;
}

nlohmann::json ParamToJson(const ParamValue& value) {
  struct Visitor {
    nlohmann::json operator()(double d) const { return d; }
    nlohmann::json operator()(const Vec2& v) const { return {v.x, v.y}; }
    nlohmann::json operator()(const std::string& s) const { return s; }
    nlohmann::json operator()(const std::vector<Vec2>& pts) const {
      nlohmann::json arr = nlohmann::json::array();
      for (const Vec2& p : pts) arr.push_back({p.x, p.y});
      return arr;
    }
  };
  return std::visit(Visitor{}, value);
}

namespace {

ParamValue ParamFromJson(const nlohmann::json& j) {
  auto point = [](const nlohmann::json& p) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw Error(ErrorKind::kMissingParam, "malformed point parameter");
    return Vec2{p[0].get<double>(), p[1].get<double>()};
  };
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array() && !j.empty() && j[0].is_array()) {
    std::vector<Vec2> pts;
    for (const auto& p : j) pts.push_back(point(p));
    return pts;
  }
  return point(j);
}

}  // namespace

nlohmann::json SceneToJson(const SceneSpec& scene) {
  nlohmann::json entities = nlohmann::json::array();
  for (const SceneEntity& e : scene.entities) {
    entities.push_back({{"lemma", e.mention.lemma},
                        {"modifiers", e.mention.modifiers},
                        {"role", std::string(RoleName(e.mention.role))},
                        {"clause", e.mention.clause},
                        {"token", e.mention.token},
                        {"slot", e.slot},
                        {"z", e.z}});
  }
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, value] : scene.params) params[name] = ParamToJson(value);
  return {{"background",
           {{"lemma", scene.background.lemma},
            {"modifiers", scene.background.modifiers}}},
          {"entities", entities},
          {"template", std::string(TemplateName(scene.motion))},
          {"params", params}};
}

SceneSpec SceneFromJson(const nlohmann::json& doc) {
  SceneSpec scene;
  try {
    const auto& bg = doc.at("background");
    scene.background.lemma = bg.at("lemma").get<std::string>();
    scene.background.modifiers = bg.value("modifiers", std::vector<std::string>{});
    auto motion = TemplateFromName(doc.at("template").get<std::string>());
    if (!motion)
      throw Error(ErrorKind::kNotAnAction, "unknown template in scene JSON");
    scene.motion = *motion;
    for (const auto& e : doc.at("entities")) {
      SceneEntity ent;
      ent.mention.lemma = e.at("lemma").get<std::string>();
      ent.mention.modifiers = e.value("modifiers", std::vector<std::string>{});
      auto role = RoleFromName(e.at("role").get<std::string>());
      if (!role) throw Error(ErrorKind::kMissingRole, "unknown role in scene JSON");
      ent.mention.role = *role;
      ent.mention.clause = e.value("clause", 0);
      ent.mention.token = e.value("token", 0);
      ent.slot = e.at("slot").get<std::string>();
      ent.z = e.at("z").get<int>();
      scene.entities.push_back(std::move(ent));
    }
    if (doc.contains("params"))
      for (const auto& [name, value] : doc["params"].items())
        scene.params[name] = ParamFromJson(value);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::kMissingParam, std::string("bad scene JSON: ") + ex.what());
  }
  std::sort(scene.entities.begin(), scene.entities.end(),
            [](const SceneEntity& a, const SceneEntity& b) { return a.z < b.z; });
  return scene;
}

}  // namespace text2anim
