#ifndef TEXT2ANIM_SCENE_H_
#define TEXT2ANIM_SCENE_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "text2anim/dependency.h"
#include "text2anim/geometry.h"
#include "text2anim/lexicon.h"

namespace text2anim {

enum class Role { kAgent, kPatient, kLocation, kSource };

std::string_view RoleName(Role role);
std::optional<Role> RoleFromName(std::string_view name);

struct EntityMention {
  int token = 0;                        // head noun index in the tree
  std::string lemma;
  std::vector<std::string> modifiers;   // amod/compound dependents, in order
  Role role = Role::kAgent;
  int clause = 0;                       // 0 = main clause, 1.. = conjoined
};

enum class MotionTemplate {
  kCollide,
  kOrbit,
  kStagedAccelerate,
  kGravityFall,
  kCircuitSequence,
  kGrowRotateTravel,
  kPhasedInflate,
  kLinearTravel,
};

std::string_view TemplateName(MotionTemplate t);
std::optional<MotionTemplate> TemplateFromName(std::string_view name);

// Lookup key into the asset base: a lemma constrained by modifiers.
struct AssetQuery {
  std::string lemma;
  std::vector<std::string> modifiers;
};

// A mention placed in the scene. `slot` is the part the entity plays in its
// motion template ("vehicle", "occupant", "body", ...); `z` is draw order,
// lowest first.
struct SceneEntity {
  EntityMention mention;
  std::string slot;
  int z = 0;
};

// Scalar, point, word or polyline. Point parameters whose names end in
// "_at" and polylines are in canvas fractions; everything else is in pixels
// and ticks.
using ParamValue = std::variant<double, Vec2, std::string, std::vector<Vec2>>;
using ParamMap = std::map<std::string, ParamValue>;

struct SceneSpec {
  AssetQuery background;
  std::vector<SceneEntity> entities;  // ascending z
  MotionTemplate motion = MotionTemplate::kLinearTravel;
  ParamMap params;

  const SceneEntity* FindSlot(std::string_view slot) const;
};

std::vector<EntityMention> ExtractMentions(const DepTree& tree,
                                           const Lexicon& lexicon);

// Verb (plus particles such as the "on" of "turns on") to template. Action
// verbs without an entry fall back to LinearTravel. Throws kNotAnAction.
MotionTemplate MapAction(const Lexicon& lexicon, std::string_view verb,
                         std::span<const std::string> particles = {});

// Roles the template needs in the main clause.
std::vector<Role> RequiredRoles(MotionTemplate t);

// Template parameter defaults.
ParamMap DefaultParams(MotionTemplate t);

// Full tree -> scene compilation. Throws kMissingRole, kNotAnAction,
// kNoPredicate (for noun-phrase trees).
SceneSpec CompileScene(const DepTree& tree, const Lexicon& lexicon);

// Structural re-check: unique z, required slots bound. Empty when valid.
std::vector<std::string> ValidateScene(const SceneSpec& scene);

nlohmann::json SceneToJson(const SceneSpec& scene);
SceneSpec SceneFromJson(const nlohmann::json& doc);

nlohmann::json ParamToJson(const ParamValue& value);

}  // namespace text2anim

#endif  // TEXT2ANIM_SCENE_H_
