#ifndef TEXT2ANIM_TESTS_ORACLES_H_
#define TEXT2ANIM_TESTS_ORACLES_H_

// Independent reference implementations used only by the tests.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "text2anim/image.h"
#include "text2anim/timeline.h"

namespace oracle {

// Keys cubic (a = -0.5) evaluated as a direct 2-D kernel sum over a wide
// neighbourhood, edge-clamped. No separability, no precomputed taps.
text2anim::Image BicubicDirect(const text2anim::Image& src, int width, int height);

// First tick in [0, duration) at which the two tracks' boxes touch, by
// sampling every tick.
std::optional<int> CollisionScan(const text2anim::TimelineIR& ir, const std::string& mover,
                                 const std::string& target);

struct ApngFrame {
  int width = 0, height = 0, x = 0, y = 0;
  int delay_num = 0, delay_den = 0;
  int dispose = 0, blend = 0;
  text2anim::Image image;
};

struct Apng {
  int width = 0, height = 0;
  int num_frames = 0, num_plays = 0;
  std::vector<ApngFrame> frames;
  bool crc_ok = true;
};

// Minimal APNG reader: chunk walk with CRC checks, zlib inflate, all five
// scanline filters, 8-bit RGBA only.
Apng ReadApng(std::span<const std::uint8_t> bytes);

text2anim::Image RandomImage(std::mt19937& rng, int width, int height, bool random_alpha = true);

// Random image drawn from a fixed palette of `colors` entries.
text2anim::Image RandomPaletteImage(std::mt19937& rng, int width, int height,
                                    const std::vector<text2anim::Rgba>& palette);

}  // namespace oracle

#endif  // TEXT2ANIM_TESTS_ORACLES_H_
