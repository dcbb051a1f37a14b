#include "text2anim/image.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace text2anim {

Image::Image(int width, int height, Rgba fill)
    : width_(width), height_(height),
      pixels_(static_cast<size_t>(width) * height * 4) {
  if (width < 0 || height < 0) throw std::invalid_argument("negative image size");
  for (size_t i = 0; i < pixels_.size(); i += 4) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
    pixels_[i + 3] = fill.a;
  }
}

Image::Image(int width, int height, std::vector<std::uint8_t> rgba)
    : width_(width), height_(height), pixels_(std::move(rgba)) {
  if (width < 0 || height < 0 ||
      pixels_.size() != static_cast<size_t>(width) * height * 4)
    throw std::invalid_argument("pixel buffer does not match dimensions");
}

int AnimatedSprite::total_ms() const {
  int total = 0;
  for (int d : delays_ms) total += d;
  return total;
}

size_t AnimatedSprite::FrameAt(double elapsed_ms) const {
  if (frames.size() <= 1) return 0;
  const int total = total_ms();
  if (total <= 0) return 0;
  double t = std::fmod(elapsed_ms, static_cast<double>(total));
  if (t < 0) t += total;
  double acc = 0;
  for (size_t i = 0; i < delays_ms.size(); ++i) {
    acc += delays_ms[i];
    if (t < acc) return i;
  }
  return frames.size() - 1;
}

Sprite AlphaKey(const Sprite& sprite, std::array<std::uint8_t, 3> key,
                int tolerance) {
  tolerance = std::clamp(tolerance, 0, 255);
  Sprite out = sprite;
  auto px = out.mutable_pixels();
  for (size_t i = 0; i < px.size(); i += 4) {
    if (std::abs(px[i] - key[0]) <= tolerance &&
        std::abs(px[i + 1] - key[1]) <= tolerance &&
        std::abs(px[i + 2] - key[2]) <= tolerance)
      px[i + 3] = 0;
  }
  return out;
}

namespace {

double CatmullRom(double x) {
  constexpr double a = -0.5;
  x = std::abs(x);
  if (x <= 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
  if (x < 2.0) return ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a;
  return 0.0;
}

struct Taps {
  int index[4];
  double weight[4];
};

// Source taps for each destination column (or row); pixel centres aligned.
std::vector<Taps> ComputeTaps(int src, int dst) {
  std::vector<Taps> taps(dst);
  const double ratio = static_cast<double>(src) / dst;
  for (int i = 0; i < dst; ++i) {
    const double s = (i + 0.5) * ratio - 0.5;
    const int base = static_cast<int>(std::floor(s));
    const double t = s - base;
    for (int k = 0; k < 4; ++k) {
      taps[i].index[k] = std::clamp(base - 1 + k, 0, src - 1);
      taps[i].weight[k] = CatmullRom(t - (k - 1));
    }
  }
  return taps;
}

}  // namespace

Sprite ScaleBicubic(const Sprite& sprite, int width, int height) {
  if (width < 1 || height < 1) throw std::invalid_argument("target size below 1x1");
  if (sprite.empty()) throw std::invalid_argument("cannot scale an empty sprite");
  if (width == sprite.width() && height == sprite.height()) return sprite;

  const int sw = sprite.width();
  const int sh = sprite.height();
  const auto src = sprite.pixels();

  // Horizontal pass, kept in double so the result matches a direct 4x4
  // convolution.
  const std::vector<Taps> xt = ComputeTaps(sw, width);
  std::vector<double> tmp(static_cast<size_t>(width) * sh * 4);
  for (int y = 0; y < sh; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < 4; ++c) {
        double acc = 0.0;
        for (int k = 0; k < 4; ++k)
          acc += xt[x].weight[k] *
                 src[(static_cast<size_t>(y) * sw + xt[x].index[k]) * 4 + c];
        tmp[(static_cast<size_t>(y) * width + x) * 4 + c] = acc;
      }
    }
  }

  const std::vector<Taps> yt = ComputeTaps(sh, height);
  Sprite out(width, height);
  auto dst = out.mutable_pixels();
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < 4; ++c) {
        double acc = 0.0;
        for (int k = 0; k < 4; ++k)
          acc += yt[y].weight[k] *
                 tmp[(static_cast<size_t>(yt[y].index[k]) * width + x) * 4 + c];
        dst[(static_cast<size_t>(y) * width + x) * 4 + c] =
            static_cast<std::uint8_t>(std::clamp(std::lround(acc), 0L, 255L));
      }
    }
  }
  return out;
}

Sprite Rotate90(const Sprite& sprite, int quarter_turns) {
  const int k = ((quarter_turns % 4) + 4) % 4;
  if (k == 0) return sprite;
  const int w = sprite.width();
  const int h = sprite.height();
  const bool odd = k % 2 == 1;
  Sprite out(odd ? h : w, odd ? w : h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int nx, ny;
      switch (k) {
        case 1: nx = h - 1 - y; ny = x; break;
        case 2: nx = w - 1 - x; ny = h - 1 - y; break;
        default: nx = y; ny = w - 1 - x; break;
      }
      out.set(nx, ny, sprite.at(x, y));
    }
  }
  return out;
}

void BlendOnto(Frame& dst, const Sprite& src, int x, int y) {
  const int x0 = std::max(0, x);
  const int y0 = std::max(0, y);
  const int x1 = std::min(dst.width(), x + src.width());
  const int y1 = std::min(dst.height(), y + src.height());
  if (x0 >= x1 || y0 >= y1) return;

  auto d = dst.mutable_pixels();
  const auto s = src.pixels();
  for (int py = y0; py < y1; ++py) {
    for (int px = x0; px < x1; ++px) {
      const std::uint8_t* sp =
          &s[(static_cast<size_t>(py - y) * src.width() + (px - x)) * 4];
      std::uint8_t* dp = &d[(static_cast<size_t>(py) * dst.width() + px) * 4];
      const int sa = sp[3];
      if (sa == 0) continue;
      if (sa == 255) {
        dp[0] = sp[0]; dp[1] = sp[1]; dp[2] = sp[2]; dp[3] = 255;
        continue;
      }
      // Non-premultiplied source-over, exact integer arithmetic scaled by 255.
      const int da = dp[3];
      const int wd = da * (255 - sa);
      const int out_a = sa * 255 + wd;
      for (int c = 0; c < 3; ++c)
        dp[c] = static_cast<std::uint8_t>((sp[c] * sa * 255 + dp[c] * wd + out_a / 2) / out_a);
      dp[3] = static_cast<std::uint8_t>((out_a + 127) / 255);
    }
  }
}

Frame Composite(const Frame& background, std::vector<Placement> placements) {
  std::stable_sort(placements.begin(), placements.end(),
                   [](const Placement& a, const Placement& b) { return a.z < b.z; });
  Frame out = background;
  for (const Placement& p : placements)
    if (p.sprite) BlendOnto(out, *p.sprite, p.x, p.y);
  return out;
}

}  // namespace text2anim
