#ifndef TEXT2ANIM_PNG_H_
#define TEXT2ANIM_PNG_H_

#include <cstdint>
#include <span>
#include <vector>

#include "text2anim/image.h"

namespace text2anim {

// 8-bit RGBA, non-interlaced PNG.
std::vector<std::uint8_t> EncodePng(const Image& image);

// Animated PNG: every frame is a full-canvas fcTL/fdAT pair with
// APNG_DISPOSE_OP_NONE and APNG_BLEND_OP_SOURCE, so frames are stored
// losslessly. Throws kEncodeError for an empty or ragged frame list.
std::vector<std::uint8_t> EncodeApng(std::span<const Frame> frames, int delay_ms,
                                     int loop_count = 0);

// Any PNG libpng understands, converted to RGBA. Throws kDecodeError.
Image DecodePng(std::span<const std::uint8_t> bytes);

bool LooksLikePng(std::span<const std::uint8_t> bytes);
bool LooksLikeGif(std::span<const std::uint8_t> bytes);

}  // namespace text2anim

#endif  // TEXT2ANIM_PNG_H_
