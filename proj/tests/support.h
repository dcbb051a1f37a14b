#ifndef TEXT2ANIM_TESTS_SUPPORT_H_
#define TEXT2ANIM_TESTS_SUPPORT_H_

#include <array>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "text2anim/dependency.h"
#include "text2anim/error.h"

namespace support {

inline std::filesystem::path DataDir() { return TEXT2ANIM_TEST_DATA_DIR; }
inline std::filesystem::path FixtureDir() { return TEXT2ANIM_TEST_FIXTURE_DIR; }
inline std::filesystem::path Manifest() { return DataDir() / "assets" / "manifest.json"; }

struct Caption {
  const char* fixture;
  const char* sentence;
};

inline constexpr std::array<Caption, 7> kCaptions{{
    {"collide.json", "A car crashes into a wall and the driver is ejected."},
    {"orbit.json", "The moon orbits the earth."},
    {"rocket.json", "A rocket ship accelerates in space."},
    {"apple.json", "An apple falls from a tree."},
    {"bulb.json", "Electricity turns on a light bulb."},
    {"hurricane.json", "A hurricane forms in the ocean."},
    {"balloon.json", "A girl inflates a balloon."},
}};

inline std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline bool HasRule(const std::vector<text2anim::TreeViolation>& v, std::string_view rule) {
  for (const auto& x : v)
    if (x.rule == rule) return true;
  return false;
}

// Runs `f` and returns the kind of the text2anim::Error it throws.
template <typename F>
std::optional<text2anim::ErrorKind> KindOf(F&& f) {
  try {
    f();
  } catch (const text2anim::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace support

#endif  // TEXT2ANIM_TESTS_SUPPORT_H_
