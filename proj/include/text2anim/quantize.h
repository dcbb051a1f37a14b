#ifndef TEXT2ANIM_QUANTIZE_H_
#define TEXT2ANIM_QUANTIZE_H_

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "text2anim/image.h"

namespace text2anim {

// 0xRRGGBB
using ColorKey = std::uint32_t;

inline ColorKey KeyOf(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return (ColorKey{r} << 16) | (ColorKey{g} << 8) | b;
}

struct ColorCount {
  ColorKey color;
  std::uint64_t count;
};

// Median-cut palette of at most `max_colors` entries. When the histogram
// already fits, the palette is exactly its colors in ascending key order.
std::vector<Rgba> MedianCut(std::vector<ColorCount> histogram, int max_colors);

// Nearest-colour lookup (squared RGB distance, lowest index on ties) with a
// cache of previously seen colours.
class PaletteMapper {
 public:
  explicit PaletteMapper(std::vector<Rgba> palette);

  std::uint8_t Map(ColorKey color);
  const std::vector<Rgba>& palette() const { return palette_; }

 private:
  std::vector<Rgba> palette_;
  std::unordered_map<ColorKey, std::uint8_t> cache_;
};

}  // namespace text2anim

#endif  // TEXT2ANIM_QUANTIZE_H_
