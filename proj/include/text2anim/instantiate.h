#ifndef TEXT2ANIM_INSTANTIATE_H_
#define TEXT2ANIM_INSTANTIATE_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "text2anim/assets.h"
#include "text2anim/scene.h"
#include "text2anim/timeline.h"

namespace text2anim {

struct TimelineOptions {
  Size canvas{640, 480};
  int tick_rate = 30;
};

// A scene with every asset query answered and every image decoded.
struct ResolvedScene {
  SceneSpec scene;
  // Backdrop stages; one entry except for staged templates.
  std::vector<std::string> backgrounds;
  // Entity id -> base sprite path, and entity id -> variant tag -> path.
  std::map<std::string, std::string> sprites;
  std::map<std::string, std::map<std::string, std::string>> variants;
  std::map<std::string, AssetRecord> records;  // by path
  std::map<std::string, std::shared_ptr<const AnimatedSprite>> images;  // by path

  const AnimatedSprite& Image(const std::string& path) const;
  const AssetRecord& Record(const std::string& path) const;
};

// "vehicle", "body", ... for template slots; "prop_<z>" for extras.
std::string EntityId(const SceneEntity& entity);

// Answers every asset query of the scene and decodes the images.
// Throws kNoAsset, kMissingFile, kDecodeError.
ResolvedScene ResolveScene(const SceneSpec& scene, const AssetBase& assets);

// Builds the timeline for the scene's motion template. Collision-conditioned
// events stay pending; see ResolveCollisions. Throws kMissingParam.
TimelineIR Instantiate(const ResolvedScene& resolved, const TimelineOptions& options = {});

}  // namespace text2anim

#endif  // TEXT2ANIM_INSTANTIATE_H_
