#ifndef TEXT2ANIM_PIPELINE_H_
#define TEXT2ANIM_PIPELINE_H_

#include <filesystem>
#include <string_view>

#include "text2anim/assets.h"
#include "text2anim/dependency.h"
#include "text2anim/instantiate.h"
#include "text2anim/lexicon.h"
#include "text2anim/scene.h"
#include "text2anim/timeline.h"

namespace text2anim {

// Sentence -> SceneSpec.
SceneSpec PlanSentence(std::string_view sentence, const Lexicon& lexicon);

struct Animation {
  ResolvedScene resolved;
  TimelineIR ir;  // collisions resolved
};

// Sentence -> resolved assets and a ready-to-sample timeline.
Animation BuildAnimation(std::string_view sentence, const Lexicon& lexicon,
                         const AssetBase& assets, const TimelineOptions& options = {});

// The bundled placeholder pack.
std::filesystem::path DefaultManifestPath();

}  // namespace text2anim

#endif  // TEXT2ANIM_PIPELINE_H_
