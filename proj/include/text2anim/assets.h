#ifndef TEXT2ANIM_ASSETS_H_
#define TEXT2ANIM_ASSETS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "text2anim/geometry.h"
#include "text2anim/image.h"

namespace text2anim {

enum class AssetKind { kStatic, kAnimated };

struct ColorKeySpec {
  std::array<std::uint8_t, 3> color{255, 255, 255};
  int tolerance = 8;
};

struct AssetRecord {
  std::string lemma;
  std::vector<std::string> tags;
  std::string path;  // relative to the manifest directory
  AssetKind kind = AssetKind::kStatic;
  Vec2 anchor;       // native pixels
  std::optional<ColorKeySpec> key;
  // Named rectangles in native pixels, e.g. "land" on a backdrop.
  std::map<std::string, Box> regions;
};

// Immutable collection of asset records rooted at the manifest directory.
class AssetBase {
 public:
  AssetBase() = default;

  // Parses the manifest and checks that every referenced file exists.
  // Throws kManifestSyntax or kMissingFile (or kMissingFile when the
  // manifest itself cannot be read).
  static AssetBase Load(const std::filesystem::path& manifest);

  // Same, from manifest text with an explicit root directory.
  static AssetBase FromJson(std::string_view text, const std::filesystem::path& root);

  // Best record for `lemma`: most tags shared with `modifiers`, then fewest
  // extra tags, then lexicographically smallest path. Throws kNoAsset.
  const AssetRecord& Query(std::string_view lemma,
                           std::span<const std::string> modifiers) const;

  // Decodes a record's image (PNG or GIF) and applies its colour key.
  // Static records yield a single frame.
  AnimatedSprite LoadSprite(const AssetRecord& record) const;

  const AssetRecord* FindByPath(std::string_view path) const;

  const std::vector<AssetRecord>& records() const { return records_; }
  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
  std::vector<AssetRecord> records_;
};

// Reads a sprite file; the format is sniffed from its first bytes.
AnimatedSprite DecodeSpriteFile(const std::filesystem::path& file);

struct ManifestReport {
  std::vector<std::string> errors;          // syntax problems
  std::vector<std::string> missing_files;
  std::vector<std::string> bad_anchors;
  std::vector<std::string> duplicates;      // repeated (lemma, tags)
  std::vector<std::string> decode_errors;

  bool clean() const {
    return errors.empty() && missing_files.empty() && bad_anchors.empty() &&
           duplicates.empty() && decode_errors.empty();
  }
  std::string ToText() const;
};

// Collects every problem instead of stopping at the first one.
ManifestReport ValidateManifest(const std::filesystem::path& manifest);

}  // namespace text2anim

#endif  // TEXT2ANIM_ASSETS_H_
