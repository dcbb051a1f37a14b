#include "text2anim/assets.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "text2anim/error.h"
#include "text2anim/gif.h"
#include "text2anim/png.h"

namespace text2anim {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void Syntax(const std::string& msg) {
  throw Error(ErrorKind::kManifestSyntax, msg);
}

std::vector<std::uint8_t> ReadFile(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::kMissingFile, "cannot read " + file.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string ReadText(const fs::path& file) {
  std::vector<std::uint8_t> bytes = ReadFile(file);
  return {bytes.begin(), bytes.end()};
}

AssetRecord ParseRecord(const nlohmann::json& item, size_t i) {
  const std::string where = "asset " + std::to_string(i);
  if (!item.is_object()) Syntax(where + " is not an object");
  AssetRecord r;
  try {
    r.lemma = item.at("lemma").get<std::string>();
    r.tags = item.value("tags", std::vector<std::string>{});
    r.path = item.at("path").get<std::string>();
    const std::string kind = item.value("kind", std::string("static"));
    if (kind == "static") {
      r.kind = AssetKind::kStatic;
    } else if (kind == "animated") {
      r.kind = AssetKind::kAnimated;
    } else {
      Syntax(where + " has unknown kind '" + kind + "'");
    }
    const auto anchor = item.value("anchor", std::vector<double>{0.0, 0.0});
    if (anchor.size() != 2) Syntax(where + " anchor must be [x, y]");
    r.anchor = {anchor[0], anchor[1]};
    if (auto it = item.find("key"); it != item.end() && !it->is_null()) {
      ColorKeySpec key;
      if (it->contains("color")) {
        const auto c = (*it)["color"].get<std::vector<int>>();
        if (c.size() != 3) Syntax(where + " key colour must be [r, g, b]");
        for (int ch = 0; ch < 3; ++ch) {
          if (c[ch] < 0 || c[ch] > 255) Syntax(where + " key colour out of range");
          key.color[ch] = static_cast<std::uint8_t>(c[ch]);
        }
      }
      key.tolerance = it->value("tolerance", 8);
      if (key.tolerance < 0 || key.tolerance > 255)
        Syntax(where + " key tolerance outside [0, 255]");
      r.key = key;
    }
    if (auto it = item.find("regions"); it != item.end() && !it->is_null()) {
      for (const auto& [name, rect] : it->items()) {
        const auto v = rect.get<std::vector<double>>();
        if (v.size() != 4) Syntax(where + " region '" + name + "' must be [x, y, w, h]");
        r.regions[name] = {v[0], v[1], v[0] + v[2], v[1] + v[3]};
      }
    }
  } catch (const nlohmann::json::exception& ex) {
    Syntax(where + ": " + ex.what());
  }
  if (r.lemma.empty()) Syntax(where + " has an empty lemma");
  if (r.path.empty()) Syntax(where + " has an empty path");
  if (r.anchor.x < 0 || r.anchor.y < 0) Syntax(where + " has a negative anchor");
  return r;
}

std::vector<AssetRecord> ParseManifest(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    Syntax(e.what());
  }
  if (!doc.is_object() || !doc.contains("assets") || !doc["assets"].is_array())
    Syntax("manifest must be an object with an \"assets\" array");
  std::vector<AssetRecord> records;
  for (size_t i = 0; i < doc["assets"].size(); ++i)
    records.push_back(ParseRecord(doc["assets"][i], i));
  return records;
}

std::string Describe(const AssetRecord& r) {
  std::string s = r.lemma + "{";
  for (size_t i = 0; i < r.tags.size(); ++i) s += (i ? "," : "") + r.tags[i];
  return s + "} " + r.path;
}

}  // namespace

AssetBase AssetBase::Load(const fs::path& manifest) {
  if (!fs::is_regular_file(manifest))
    throw Error(ErrorKind::kMissingFile, "manifest not found: " + manifest.string());
  fs::path root = manifest.parent_path();
  if (root.empty()) root = ".";
  return FromJson(ReadText(manifest), root);
}

AssetBase AssetBase::FromJson(std::string_view text, const fs::path& root) {
  AssetBase base;
  base.root_ = root;
  base.records_ = ParseManifest(text);
  for (const AssetRecord& r : base.records_)
    if (!fs::is_regular_file(root / r.path))
      throw Error(ErrorKind::kMissingFile, "asset file missing: " + r.path);
  return base;
}

const AssetRecord& AssetBase::Query(std::string_view lemma,
                                    std::span<const std::string> modifiers) const {
  const AssetRecord* best = nullptr;
  size_t best_shared = 0, best_extra = 0;
  for (const AssetRecord& r : records_) {
    if (r.lemma != lemma) continue;
    size_t shared = 0;
    for (const std::string& t : r.tags)
      if (std::find(modifiers.begin(), modifiers.end(), t) != modifiers.end()) ++shared;
    const size_t extra = r.tags.size() - shared;
    const bool better =
        !best || shared > best_shared ||
        (shared == best_shared &&
         (extra < best_extra || (extra == best_extra && r.path < best->path)));
    if (better) {
      best = &r;
      best_shared = shared;
      best_extra = extra;
    }
  }
  if (!best)
    throw Error(ErrorKind::kNoAsset, "no asset for '" + std::string(lemma) + "'");
  return *best;
}

const AssetRecord* AssetBase::FindByPath(std::string_view path) const {
  for (const AssetRecord& r : records_)
    if (r.path == path) return &r;
  return nullptr;
}

AnimatedSprite DecodeSpriteFile(const fs::path& file) {
  const std::vector<std::uint8_t> bytes = ReadFile(file);
  if (LooksLikeGif(bytes)) return DecodeGif(bytes);
  if (LooksLikePng(bytes)) {
    AnimatedSprite anim;
    anim.frames.push_back(DecodePng(bytes));
    anim.delays_ms.push_back(100);
    return anim;
  }
  throw Error(ErrorKind::kDecodeError, "unsupported image format: " + file.string(), 0);
}

AnimatedSprite AssetBase::LoadSprite(const AssetRecord& record) const {
  AnimatedSprite anim = DecodeSpriteFile(root_ / record.path);
  if (record.kind == AssetKind::kStatic && anim.frames.size() > 1) {
    anim.frames.resize(1);
    anim.delays_ms.resize(1);
  }
  const Sprite& first = anim.frames.front();
  if (record.anchor.x > first.width() || record.anchor.y > first.height())
    throw Error(ErrorKind::kManifestSyntax,
                "anchor outside image bounds for " + record.path);
  if (record.key) {
    for (Sprite& f : anim.frames) f = AlphaKey(f, record.key->color, record.key->tolerance);
  }
  return anim;
}

std::string ManifestReport::ToText() const {
  std::ostringstream out;
  auto section = [&](const char* title, const std::vector<std::string>& items) {
    for (const std::string& s : items) out << title << ": " << s << "\n";
  };
  section("error", errors);
  section("missing file", missing_files);
  section("bad anchor", bad_anchors);
  section("duplicate", duplicates);
  section("decode error", decode_errors);
  if (clean()) out << "ok\n";
  return out.str();
}

ManifestReport ValidateManifest(const fs::path& manifest) {
  ManifestReport report;
  std::vector<AssetRecord> records;
  try {
    if (!fs::is_regular_file(manifest)) {
      report.missing_files.push_back(manifest.string());
      return report;
    }
    records = ParseManifest(ReadText(manifest));
  } catch (const Error& e) {
    report.errors.push_back(e.what());
    return report;
  }
  fs::path root = manifest.parent_path();
  if (root.empty()) root = ".";

  std::set<std::pair<std::string, std::vector<std::string>>> seen;
  for (const AssetRecord& r : records) {
    std::vector<std::string> tags = r.tags;
    std::sort(tags.begin(), tags.end());
    if (!seen.emplace(r.lemma, tags).second) report.duplicates.push_back(Describe(r));

    if (!fs::is_regular_file(root / r.path)) {
      report.missing_files.push_back(r.path);
      continue;
    }
    try {
      AnimatedSprite anim = DecodeSpriteFile(root / r.path);
      const Sprite& f = anim.frames.front();
      if (r.anchor.x > f.width() || r.anchor.y > f.height())
        report.bad_anchors.push_back(Describe(r));
    } catch (const Error& e) {
      report.decode_errors.push_back(r.path + ": " + e.what());
    }
  }
  return report;
}

}  // namespace text2anim
