#ifndef TEXT2ANIM_IMAGE_H_
#define TEXT2ANIM_IMAGE_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace text2anim {

struct Rgba {
  std::uint8_t r = 0, g = 0, b = 0, a = 0;
  friend bool operator==(Rgba, Rgba) = default;
};

// Row-major, non-premultiplied RGBA raster. Used for sprites and frames.
class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgba fill = {});
  Image(int width, int height, std::vector<std::uint8_t> rgba);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return width_ == 0 || height_ == 0; }

  Rgba at(int x, int y) const {
    const std::uint8_t* p = &pixels_[Offset(x, y)];
    return {p[0], p[1], p[2], p[3]};
  }
  void set(int x, int y, Rgba c) {
    std::uint8_t* p = &pixels_[Offset(x, y)];
    p[0] = c.r; p[1] = c.g; p[2] = c.b; p[3] = c.a;
  }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> mutable_pixels() { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  size_t Offset(int x, int y) const {
    return (static_cast<size_t>(y) * width_ + x) * 4;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

using Sprite = Image;
using Frame = Image;

// Fully composited animation frames with per-frame delays.
struct AnimatedSprite {
  std::vector<Sprite> frames;
  std::vector<int> delays_ms;
  int loop_count = 0;  // 0 = forever

  int total_ms() const;
  // Frame shown `elapsed_ms` after the start, wrapping around.
  size_t FrameAt(double elapsed_ms) const;
};

// Pixels whose RGB channels all lie within `tolerance` of `key` become
// fully transparent; RGB values are left untouched.
Sprite AlphaKey(const Sprite& sprite, std::array<std::uint8_t, 3> key,
                int tolerance);

// Catmull-Rom (a = -0.5) separable resampling with clamped edges. All four
// channels are filtered; results are rounded and clamped to [0, 255].
Sprite ScaleBicubic(const Sprite& sprite, int width, int height);

// Exact rotation by quarter turns, clockwise for k = 1.
Sprite Rotate90(const Sprite& sprite, int quarter_turns);

struct Placement {
  const Sprite* sprite = nullptr;
  int x = 0;  // top-left corner on the destination
  int y = 0;
  int z = 0;
};

// Source-over blending of each placement in ascending z onto a copy of
// `background`. Pixels falling off the canvas are clipped.
Frame Composite(const Frame& background, std::vector<Placement> placements);

// Blends one sprite in place.
void BlendOnto(Frame& dst, const Sprite& src, int x, int y);

}  // namespace text2anim

#endif  // TEXT2ANIM_IMAGE_H_
