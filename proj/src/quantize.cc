#include "text2anim/quantize.h"

#include <algorithm>
#include <stdexcept>

namespace text2anim {

namespace {

int Channel(ColorKey c, int ch) { return (c >> (16 - 8 * ch)) & 0xFF; }

struct Bucket {
  size_t begin;
  size_t end;
};

}  // namespace

std::vector<Rgba> MedianCut(std::vector<ColorCount> histogram, int max_colors) {
  if (max_colors < 1) throw std::invalid_argument("palette needs at least one colour");
  std::sort(histogram.begin(), histogram.end(),
            [](const ColorCount& a, const ColorCount& b) { return a.color < b.color; });

  std::vector<Rgba> palette;
  if (histogram.size() <= static_cast<size_t>(max_colors)) {
    for (const ColorCount& c : histogram)
      palette.push_back({static_cast<std::uint8_t>(Channel(c.color, 0)),
                         static_cast<std::uint8_t>(Channel(c.color, 1)),
                         static_cast<std::uint8_t>(Channel(c.color, 2)), 255});
    return palette;
  }

  std::vector<Bucket> buckets{{0, histogram.size()}};
  while (buckets.size() < static_cast<size_t>(max_colors)) {
    // Split the bucket with the widest channel range.
    int best = -1, best_range = 0, best_channel = 0;
    for (size_t b = 0; b < buckets.size(); ++b) {
      if (buckets[b].end - buckets[b].begin < 2) continue;
      for (int ch = 0; ch < 3; ++ch) {
        int lo = 255, hi = 0;
        for (size_t i = buckets[b].begin; i < buckets[b].end; ++i) {
          lo = std::min(lo, Channel(histogram[i].color, ch));
          hi = std::max(hi, Channel(histogram[i].color, ch));
        }
        if (hi - lo > best_range) {
          best = static_cast<int>(b);
          best_range = hi - lo;
          best_channel = ch;
        }
      }
    }
    if (best < 0) break;

    Bucket& bucket = buckets[best];
    auto first = histogram.begin() + static_cast<long>(bucket.begin);
    auto last = histogram.begin() + static_cast<long>(bucket.end);
    std::sort(first, last, [&](const ColorCount& a, const ColorCount& b) {
      int ca = Channel(a.color, best_channel), cb = Channel(b.color, best_channel);
      return ca != cb ? ca < cb : a.color < b.color;
    });
    std::uint64_t total = 0;
    for (auto it = first; it != last; ++it) total += it->count;
    std::uint64_t acc = 0;
    size_t split = bucket.begin + 1;
    for (size_t i = bucket.begin; i + 1 < bucket.end; ++i) {
      acc += histogram[i].count;
      split = i + 1;
      if (acc * 2 >= total) break;
    }
    Bucket upper{split, bucket.end};
    bucket.end = split;
    buckets.push_back(upper);
  }

  for (const Bucket& b : buckets) {
    std::uint64_t n = 0, sum[3] = {0, 0, 0};
    for (size_t i = b.begin; i < b.end; ++i) {
      n += histogram[i].count;
      for (int ch = 0; ch < 3; ++ch) sum[ch] += histogram[i].count * Channel(histogram[i].color, ch);
    }
    Rgba c{0, 0, 0, 255};
    if (n > 0) {
      c.r = static_cast<std::uint8_t>((sum[0] + n / 2) / n);
      c.g = static_cast<std::uint8_t>((sum[1] + n / 2) / n);
      c.b = static_cast<std::uint8_t>((sum[2] + n / 2) / n);
    }
    palette.push_back(c);
  }
  return palette;
}

PaletteMapper::PaletteMapper(std::vector<Rgba> palette) : palette_(std::move(palette)) {
  if (palette_.empty() || palette_.size() > 256)
    throw std::invalid_argument("palette size must be within [1, 256]");
}

std::uint8_t PaletteMapper::Map(ColorKey color) {
  if (auto it = cache_.find(color); it != cache_.end()) return it->second;
  const int r = Channel(color, 0), g = Channel(color, 1), b = Channel(color, 2);
  int best = 0;
  long best_d = -1;
  for (size_t i = 0; i < palette_.size(); ++i) {
    const long dr = r - palette_[i].r, dg = g - palette_[i].g, db = b - palette_[i].b;
    const long d = dr * dr + dg * dg + db * db;
    if (best_d < 0 || d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  cache_.emplace(color, static_cast<std::uint8_t>(best));
  return static_cast<std::uint8_t>(best);
}

}  // namespace text2anim
