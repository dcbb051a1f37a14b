#include "text2anim/pipeline.h"

namespace text2anim {

SceneSpec PlanSentence(std::string_view sentence, const Lexicon& lexicon) {
  return CompileScene(ParseSentence(sentence, lexicon), lexicon);
}

Animation BuildAnimation(std::string_view sentence, const Lexicon& lexicon,
                         const AssetBase& assets, const TimelineOptions& options) {
  Animation a;
  a.resolved = ResolveScene(PlanSentence(sentence, lexicon), assets);
  a.ir = ResolveCollisions(Instantiate(a.resolved, options));
  return a;
}

std::filesystem::path DefaultManifestPath() {
  return std::filesystem::path(TEXT2ANIM_DATA_DIR) / "assets" / "manifest.json";
}

}  // namespace text2anim
