// Writes the bundled placeholder sprite pack: flat-shaded shapes at fixed
// sizes plus manifest.json. Output is byte-identical on every run.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "text2anim/canonical_json.h"
#include "text2anim/gif.h"
#include "text2anim/image.h"
#include "text2anim/png.h"

namespace fs = std::filesystem;
using text2anim::Image;
using text2anim::Rgba;

namespace {

constexpr Rgba kClear{0, 0, 0, 0};
constexpr Rgba kBlack{0, 0, 0, 255};
constexpr Rgba kWhite{255, 255, 255, 255};

Rgba Mix(Rgba a, Rgba b, double t) {
  auto m = [t](int x, int y) { return static_cast<std::uint8_t>(std::lround(x + (y - x) * t)); };
  return {m(a.r, b.r), m(a.g, b.g), m(a.b, b.b), m(a.a, b.a)};
}

void Rect(Image& img, int x0, int y0, int x1, int y1, Rgba c) {
  for (int y = std::max(0, y0); y < std::min(img.height(), y1); ++y)
    for (int x = std::max(0, x0); x < std::min(img.width(), x1); ++x) img.set(x, y, c);
}

void Ellipse(Image& img, double cx, double cy, double rx, double ry, Rgba c) {
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const double dx = (x + 0.5 - cx) / rx, dy = (y + 0.5 - cy) / ry;
      if (dx * dx + dy * dy <= 1.0) img.set(x, y, c);
    }
}

void Line(Image& img, double x0, double y0, double x1, double y1, double width, Rgba c) {
  const double vx = x1 - x0, vy = y1 - y0, len2 = vx * vx + vy * vy;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const double px = x + 0.5 - x0, py = y + 0.5 - y0;
      const double t = len2 > 0 ? std::clamp((px * vx + py * vy) / len2, 0.0, 1.0) : 0.0;
      if (std::hypot(px - vx * t, py - vy * t) <= width / 2) img.set(x, y, c);
    }
}

void Gradient(Image& img, int y0, int y1, Rgba top, Rgba bottom) {
  for (int y = y0; y < y1; ++y) Rect(img, 0, y, img.width(), y + 1, Mix(top, bottom, double(y - y0) / std::max(1, y1 - y0 - 1)));
}

void Stars(Image& img, int count, unsigned seed) {
  std::mt19937 rng(seed);
  for (int i = 0; i < count; ++i) {
    const int x = static_cast<int>(rng() % img.width());
    const int y = static_cast<int>(rng() % img.height());
    const auto v = static_cast<std::uint8_t>(150 + rng() % 106);
    img.set(x, y, {v, v, v, 255});
  }
}

Image Sky(Rgba top, Rgba bottom) {
  Image img(640, 480);
  Gradient(img, 0, 480, top, bottom);
  return img;
}

Image Street() {
  Image img = Sky({90, 150, 230, 255}, {180, 215, 245, 255});
  Rect(img, 0, 300, 640, 330, {120, 120, 115, 255});  // sidewalk
  Rect(img, 0, 330, 640, 480, {60, 60, 64, 255});
  for (int x = 10; x < 640; x += 80) Rect(img, x, 420, x + 40, 426, {230, 210, 80, 255});
  return img;
}

Image Space() {
  Image img(640, 480, Rgba{5, 5, 20, 255});
  Stars(img, 400, 7);
  Ellipse(img, 320, 640, 420, 240, {60, 110, 180, 255});
  Ellipse(img, 300, 660, 380, 230, {70, 140, 90, 255});
  Ellipse(img, 520, 90, 40, 40, {200, 120, 80, 255});
  return img;
}

Image TreeScene() {
  Image img = Sky({110, 170, 240, 255}, {200, 230, 250, 255});
  Rect(img, 0, 440, 640, 480, {70, 140, 60, 255});
  Rect(img, 300, 200, 340, 442, {110, 75, 40, 255});
  Ellipse(img, 320, 150, 170, 110, {40, 120, 45, 255});
  Ellipse(img, 260, 170, 80, 60, {50, 135, 50, 255});
  Ellipse(img, 390, 160, 80, 60, {50, 135, 50, 255});
  return img;
}

// Wire loop through the same waypoints the circuit template uses.
Image Circuit(bool closed, bool lit) {
  Image img(640, 480, Rgba{245, 245, 240, 255});
  const double pts[][2] = {{89.6, 374.4}, {89.6, 105.6}, {320, 105.6}, {550.4, 105.6},
                           {550.4, 374.4}, {89.6, 374.4}};
  if (lit) Ellipse(img, 550.4, 105.6, 80, 80, {255, 240, 150, 255});
  for (int i = 0; i < 5; ++i) {
    if (i == 1) {
      Line(img, pts[1][0], pts[1][1], 290, 105.6, 5, kBlack);
      continue;
    }
    Line(img, pts[i][0], pts[i][1], pts[i + 1][0], pts[i + 1][1], 5, kBlack);
  }
  // Knife switch between x 290 and 320.
  Ellipse(img, 290, 105.6, 6, 6, {180, 30, 30, 255});
  if (closed)
    Line(img, 290, 105.6, 322, 105.6, 6, {180, 30, 30, 255});
  else
    Line(img, 290, 105.6, 312, 78, 6, {180, 30, 30, 255});
  // Battery on the left leg.
  Rect(img, 70, 220, 110, 280, {60, 60, 60, 255});
  Rect(img, 80, 212, 100, 220, {200, 170, 60, 255});
  return img;
}

Image Ocean() {
  Image img = Sky({20, 70, 150, 255}, {40, 110, 180, 255});
  Rect(img, 0, 0, 160, 480, {170, 150, 100, 255});
  Ellipse(img, 160, 240, 40, 200, {170, 150, 100, 255});
  Rect(img, 0, 0, 140, 480, {90, 150, 70, 255});
  return img;
}

Image Room() {
  Image img(640, 480, Rgba{230, 220, 200, 255});
  Rect(img, 0, 380, 640, 480, {150, 110, 80, 255});
  Rect(img, 440, 80, 580, 220, {160, 200, 240, 255});
  Line(img, 510, 80, 510, 220, 4, kWhite);
  Line(img, 440, 150, 580, 150, 4, kWhite);
  return img;
}

Image Wall() {
  Image img(60, 200, Rgba{190, 190, 185, 255});
  for (int row = 0; row < 20; ++row)
    for (int col = -1; col < 3; ++col) {
      const int x = col * 24 + (row % 2) * 12 + 1;
      Rect(img, x, row * 10 + 1, x + 22, row * 10 + 9, {165, 60, 45, 255});
    }
  return img;
}

Image Car(bool wrecked) {
  Image img(120, 60, kClear);
  const Rgba body = wrecked ? Rgba{120, 40, 35, 255} : Rgba{200, 30, 30, 255};
  Rect(img, 4, 24, 116, 50, body);
  Rect(img, 28, 2, 92, 26, body);
  Rect(img, 36, 6, 84, 24, kClear);  // window shows the driver
  Ellipse(img, 28, 50, 10, 10, kBlack);
  Ellipse(img, 92, 50, 10, 10, kBlack);
  if (wrecked) {
    Rect(img, 0, 18, 14, 50, kClear);
    Line(img, 14, 24, 30, 48, 3, kBlack);
    Line(img, 20, 26, 10, 44, 3, kBlack);
  }
  return img;
}

Image Driver() {
  Image img(24, 36, kClear);
  Ellipse(img, 12, 8, 7, 7, {240, 200, 160, 255});
  Rect(img, 4, 15, 20, 36, {40, 80, 160, 255});
  return img;
}

std::vector<Image> MoonFrames() {
  std::vector<Image> frames;
  for (int i = 0; i < 8; ++i) {
    Image img(48, 48, kClear);
    Ellipse(img, 24, 24, 22, 22, {200, 200, 195, 255});
    Ellipse(img, 16 + i * 2, 18, 5, 5, {150, 150, 145, 255});
    Ellipse(img, 30, 30 - i, 4, 4, {160, 160, 155, 255});
    frames.push_back(std::move(img));
  }
  return frames;
}

Image Earth() {
  Image img(160, 160, kClear);
  Ellipse(img, 80, 80, 78, 78, {40, 90, 200, 255});
  Ellipse(img, 55, 60, 30, 22, {60, 150, 70, 255});
  Ellipse(img, 105, 110, 28, 18, {60, 150, 70, 255});
  Ellipse(img, 80, 20, 40, 10, kWhite);
  return img;
}

Image Ship(int thrust) {
  Image img(40, 100, kClear);
  Rect(img, 12, 15, 28, 75, {220, 220, 225, 255});
  Ellipse(img, 20, 16, 8, 15, {220, 220, 225, 255});
  Ellipse(img, 20, 35, 4, 4, {80, 160, 230, 255});
  Line(img, 12, 60, 2, 78, 4, {200, 40, 40, 255});
  Line(img, 28, 60, 38, 78, 4, {200, 40, 40, 255});
  if (thrust >= 1) Ellipse(img, 20, 80, 6, thrust == 1 ? 6 : 10, {255, 160, 30, 255});
  if (thrust >= 2) Ellipse(img, 20, 88, 5, 11, {255, 230, 80, 255});
  return img;
}

// Drawn on white: the manifest keys the white away.
Image Apple() {
  Image img(50, 50, kWhite);
  Ellipse(img, 25, 28, 19, 18, {210, 20, 30, 255});
  Line(img, 25, 12, 28, 3, 3, {100, 60, 30, 255});
  Ellipse(img, 33, 8, 6, 3, {60, 150, 50, 255});
  return img;
}

Image Spark() {
  Image img(16, 16, kClear);
  Ellipse(img, 8, 8, 8, 8, {255, 220, 60, 255});
  Ellipse(img, 8, 8, 4, 4, kWhite);
  return img;
}

Image Bulb(bool lit) {
  Image img(40, 60, kClear);
  Ellipse(img, 20, 22, 18, 20, lit ? Rgba{255, 240, 120, 255} : Rgba{200, 200, 200, 220});
  Rect(img, 12, 40, 28, 58, {120, 120, 120, 255});
  Line(img, 14, 20, 26, 20, 2, lit ? Rgba{255, 150, 0, 255} : Rgba{90, 90, 90, 255});
  return img;
}

Image Hurricane() {
  Image img(64, 64, kClear);
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x) {
      const double dx = x + 0.5 - 32, dy = y + 0.5 - 32, r = std::hypot(dx, dy);
      if (r > 31) continue;
      const double arm = std::fmod(std::atan2(dy, dx) + r / 6.0 + 8 * M_PI, M_PI);
      const auto v = static_cast<std::uint8_t>(arm < M_PI / 2 ? 245 : 175);
      img.set(x, y, {v, v, v, static_cast<std::uint8_t>(r < 4 ? 0 : 230)});
    }
  Rect(img, 48, 4, 60, 12, {250, 250, 250, 255});  // breaks symmetry
  return img;
}

Image Girl() {
  Image img(80, 160, kClear);
  Ellipse(img, 40, 22, 16, 18, {240, 200, 160, 255});
  Ellipse(img, 40, 12, 18, 10, {120, 70, 30, 255});
  Line(img, 40, 40, 12, 120, 6, {220, 90, 150, 255});
  Line(img, 40, 40, 68, 120, 6, {220, 90, 150, 255});
  Rect(img, 22, 40, 58, 120, {220, 90, 150, 255});
  Rect(img, 28, 120, 36, 160, {240, 200, 160, 255});
  Rect(img, 44, 120, 52, 160, {240, 200, 160, 255});
  Line(img, 50, 50, 66, 36, 5, {240, 200, 160, 255});
  return img;
}

Image Balloon() {
  Image img(40, 48, kClear);
  Ellipse(img, 20, 20, 18, 20, {230, 40, 90, 255});
  Ellipse(img, 13, 12, 4, 6, {255, 230, 240, 255});  // camera flash highlight
  Line(img, 20, 40, 20, 48, 2, {100, 20, 40, 255});
  return img;
}

Image Ball() {
  Image img(32, 32, kClear);
  Ellipse(img, 16, 16, 15, 15, {240, 140, 30, 255});
  Line(img, 2, 16, 30, 16, 2, kBlack);
  return img;
}

struct Entry {
  std::string lemma;
  std::vector<std::string> tags;
  std::string path;
  std::array<double, 2> anchor;
  bool keyed = false;
  nlohmann::json regions = nullptr;
};

void WriteBytes(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_placeholder_pack <output-dir>\n";
    return 1;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir);

  nlohmann::json assets = nlohmann::json::array();
  auto add = [&](const Entry& e, const Image& img) {
    WriteBytes(dir / e.path, text2anim::EncodePng(img));
    nlohmann::json j{{"lemma", e.lemma}, {"tags", e.tags}, {"path", e.path}, {"kind", "static"},
                     {"anchor", e.anchor}};
    j["key"] = e.keyed ? nlohmann::json{{"color", {255, 255, 255}}, {"tolerance", 8}}
                       : nlohmann::json(nullptr);
    if (!e.regions.is_null()) j["regions"] = e.regions;
    assets.push_back(j);
  };

  add({"sky", {"blue"}, "sky_blue.png", {0, 0}}, Sky({80, 140, 230, 255}, {190, 220, 250, 255}));
  add({"sky", {"gray"}, "sky_gray.png", {0, 0}}, Sky({110, 110, 120, 255}, {180, 180, 185, 255}));
  {
    Image black(640, 480, kBlack);
    Stars(black, 300, 3);
    add({"sky", {"black"}, "sky_black.png", {0, 0}}, black);
  }
  add({"street", {}, "street.png", {0, 0}}, Street());
  add({"space", {}, "space.png", {0, 0}}, Space());
  add({"tree", {}, "tree.png", {0, 0}}, TreeScene());
  add({"circuit", {"open"}, "circuit_open.png", {0, 0}}, Circuit(false, false));
  add({"circuit", {"closed"}, "circuit_closed.png", {0, 0}}, Circuit(true, false));
  add({"circuit", {"closed", "lit"}, "circuit_lit.png", {0, 0}}, Circuit(true, true));
  add({"ocean", {}, "ocean.png", {0, 0}, false, {{"land", {0, 0, 160, 480}}}}, Ocean());
  add({"room", {}, "room.png", {0, 0}}, Room());

  add({"wall", {}, "wall.png", {0, 200}}, Wall());
  add({"car", {}, "car.png", {60, 60}}, Car(false));
  add({"car", {"wrecked"}, "car_wrecked.png", {60, 60}}, Car(true));
  add({"driver", {}, "driver.png", {12, 18}}, Driver());
  add({"man", {}, "man.png", {12, 18}}, Driver());
  add({"earth", {}, "earth.png", {80, 80}}, Earth());
  add({"ship", {"rocket"}, "ship.png", {20, 50}}, Ship(0));
  add({"ship", {"rocket", "partial-thrust"}, "ship_partial.png", {20, 50}}, Ship(1));
  add({"ship", {"rocket", "full-thrust"}, "ship_full.png", {20, 50}}, Ship(2));
  add({"apple", {}, "apple.png", {25, 25}, true}, Apple());
  add({"electricity", {}, "spark.png", {8, 8}}, Spark());
  add({"bulb", {"light"}, "bulb.png", {20, 30}}, Bulb(false));
  add({"bulb", {"light", "lit"}, "bulb_lit.png", {20, 30}}, Bulb(true));
  add({"hurricane", {}, "hurricane.png", {32, 32}}, Hurricane());
  add({"girl", {}, "girl.png", {40, 160}}, Girl());
  add({"balloon", {}, "balloon.png", {20, 48}}, Balloon());
  add({"ball", {}, "ball.png", {16, 16}}, Ball());

  {
    const std::vector<Image> frames = MoonFrames();
    text2anim::GifOptions opt;
    opt.delay_ms = 100;
    WriteBytes(dir / "moon.gif", text2anim::EncodeGif(frames, opt));
    assets.push_back({{"lemma", "moon"}, {"tags", nlohmann::json::array()}, {"path", "moon.gif"},
                      {"kind", "animated"}, {"anchor", {24, 24}}, {"key", nullptr}});
  }

  std::ofstream manifest(dir / "manifest.json", std::ios::trunc);
  manifest << text2anim::CanonicalDump({{"assets", assets}}) << "\n";
  if (!manifest) {
    std::cerr << "cannot write manifest\n";
    return 1;
  }
  std::cout << assets.size() << " assets written to " << dir.string() << "\n";
  return 0;
}
