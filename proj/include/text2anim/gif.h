#ifndef TEXT2ANIM_GIF_H_
#define TEXT2ANIM_GIF_H_

#include <cstdint>
#include <span>
#include <vector>

#include "text2anim/image.h"

namespace text2anim {

struct GifOptions {
  int delay_ms = 100;     // >= 10; stored in hundredths of a second
  int palette_size = 256; // [2, 256], including the transparent slot
  int loop_count = 0;     // 0 = forever
  bool dither = false;    // ordered 4x4 Bayer dithering when quantizing
};

// GIF89a with one global palette built by median cut. Pixels with alpha
// below 128 are written as transparent. Frame sets with at most
// `palette_size` distinct colours round-trip exactly. Throws kEncodeError.
std::vector<std::uint8_t> EncodeGif(std::span<const Frame> frames,
                                    const GifOptions& options);

// Decodes a GIF87a/GIF89a stream into fully composited frames, honouring
// disposal methods, transparency, local palettes and interlacing. A zero
// delay is reported as 100 ms. Throws kDecodeError carrying the byte offset.
AnimatedSprite DecodeGif(std::span<const std::uint8_t> bytes);

}  // namespace text2anim

#endif  // TEXT2ANIM_GIF_H_
