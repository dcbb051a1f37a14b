#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.h"
#include "support.h"
#include "text2anim/gif.h"
#include "text2anim/pipeline.h"
#include "text2anim/png.h"
#include "text2anim/quantize.h"
#include "text2anim/render.h"

using namespace text2anim;
using support::KindOf;
namespace fs = std::filesystem;

namespace {

const AssetBase& Pack() {
  static const AssetBase base = AssetBase::Load(support::Manifest());
  return base;
}

std::vector<std::uint32_t> Multiset(const Image& img) {
  std::vector<std::uint32_t> v;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const Rgba c = img.at(x, y);
      v.push_back((std::uint32_t(c.r) << 24) | (c.g << 16) | (c.b << 8) | c.a);
    }
  std::sort(v.begin(), v.end());
  return v;
}

int MaxDiff(const Image& a, const Image& b) {
  int m = 0;
  for (size_t i = 0; i < a.pixels().size(); ++i)
    m = std::max(m, std::abs(int(a.pixels()[i]) - int(b.pixels()[i])));
  return m;
}

}  // namespace

TEST_CASE("scale_bicubic examples") {
  const Image c(10, 10, Rgba{12, 200, 77, 255});
  CHECK(ScaleBicubic(c, 25, 25) == Image(25, 25, Rgba{12, 200, 77, 255}));
  CHECK(ScaleBicubic(c, 3, 7) == Image(3, 7, Rgba{12, 200, 77, 255}));
  std::mt19937 rng(5);
  const Image r = oracle::RandomImage(rng, 9, 6);
  CHECK(ScaleBicubic(r, 9, 6) == r);
}

TEST_CASE("scale_bicubic matches the direct convolution oracle") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> d(1, 20);
  for (int i = 0; i < 60; ++i) {
    const Image src = oracle::RandomImage(rng, 8, 8);
    CHECK(MaxDiff(ScaleBicubic(src, 16, 16), oracle::BicubicDirect(src, 16, 16)) <= 1);
    const Image any = oracle::RandomImage(rng, d(rng), d(rng));
    const int w = d(rng), h = d(rng);
    CHECK(MaxDiff(ScaleBicubic(any, w, h), oracle::BicubicDirect(any, w, h)) <= 1);
  }
}

TEST_CASE("rotate90") {
  Image ab(2, 1);
  const Rgba a{255, 0, 0, 255}, b{0, 0, 255, 255};
  ab.set(0, 0, a);
  ab.set(1, 0, b);
  const Image r = Rotate90(ab, 1);
  REQUIRE(r.width() == 1);
  REQUIRE(r.height() == 2);
  CHECK(r.at(0, 0) == a);
  CHECK(r.at(0, 1) == b);

  std::mt19937 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Image s = oracle::RandomImage(rng, 1 + rng() % 9, 1 + rng() % 9);
    CHECK(Rotate90(s, 0) == s);
    CHECK(Rotate90(Rotate90(Rotate90(Rotate90(s, 1), 1), 1), 1) == s);
    CHECK(Rotate90(Rotate90(s, 1), 1) == Rotate90(s, 2));
    CHECK(Rotate90(Rotate90(s, 3), 1) == s);
    for (int k = 1; k < 4; ++k) CHECK(Multiset(Rotate90(s, k)) == Multiset(s));
  }
}

TEST_CASE("composite examples") {
  const Frame bg(6, 6, Rgba{10, 20, 30, 255});
  const Sprite red(2, 2, Rgba{255, 0, 0, 255});
  const Sprite blue(2, 2, Rgba{0, 0, 255, 255});
  const Sprite clear(3, 3, Rgba{99, 99, 99, 0});

  Frame f = Composite(bg, {{&red, 0, 0, 1}});
  CHECK(f.at(0, 0) == Rgba{255, 0, 0, 255});
  CHECK(f.at(1, 1) == Rgba{255, 0, 0, 255});
  CHECK(f.at(2, 2) == bg.at(2, 2));
  CHECK(Composite(bg, {{&clear, 1, 1, 0}}) == bg);

  f = Composite(bg, {{&blue, 1, 1, 2}, {&red, 0, 0, 1}});
  CHECK(f.at(1, 1) == Rgba{0, 0, 255, 255});
  f = Composite(bg, {{&blue, 1, 1, 1}, {&red, 0, 0, 2}});
  CHECK(f.at(1, 1) == Rgba{255, 0, 0, 255});

  // Off-canvas placements clip.
  f = Composite(bg, {{&red, -1, -1, 0}, {&red, 5, 5, 1}, {&red, 50, 50, 2}});
  CHECK(f.at(0, 0) == Rgba{255, 0, 0, 255});
  CHECK(f.at(1, 1) == bg.at(1, 1));
  CHECK(f.at(5, 5) == Rgba{255, 0, 0, 255});
}

TEST_CASE("composite blends translucent pixels and associates over z") {
  std::mt19937 rng(9);
  for (int i = 0; i < 40; ++i) {
    const Frame bg = oracle::RandomImage(rng, 12, 10, false);
    const Sprite s1 = oracle::RandomImage(rng, 7, 6);
    const Sprite s2 = oracle::RandomImage(rng, 5, 8);
    const Frame both = Composite(bg, {{&s2, 4, 3, 2}, {&s1, 1, 2, 1}});
    const Frame stepwise = Composite(Composite(bg, {{&s1, 1, 2, 1}}), {{&s2, 4, 3, 2}});
    CHECK(both == stepwise);
  }
  const Frame bg(1, 1, Rgba{0, 0, 0, 255});
  const Sprite half(1, 1, Rgba{255, 255, 255, 128});
  const Rgba got = Composite(bg, {{&half, 0, 0, 0}}).at(0, 0);
  CHECK(got.a == 255);
  CHECK(std::abs(int(got.r) - 128) <= 1);
}

TEST_CASE("render_frames on a background-only timeline") {
  TimelineIR ir;
  ir.canvas = {16, 16};
  ir.duration = 1;
  ir.backgrounds = {{0, "bg"}};
  ResolvedScene r;
  r.images["bg"] = std::make_shared<const AnimatedSprite>(
      AnimatedSprite{{Image(16, 16, Rgba{1, 2, 3, 255})}, {100}, 0});
  const auto frames = RenderFrames(ir, r);
  REQUIRE(frames.size() == 1);
  CHECK(frames[0] == Image(16, 16, Rgba{1, 2, 3, 255}));
}

TEST_CASE("rendered apple falls with constant second difference") {
  const Animation a = BuildAnimation(support::kCaptions[3].sentence, Lexicon::Default(), Pack());
  std::vector<SceneState> trace;
  const auto frames = RenderFrames(a.ir, a.resolved, 3, &trace);
  REQUIRE(frames.size() == static_cast<size_t>(a.ir.duration));
  REQUIRE(trace.size() == frames.size());
  const Track* body = a.ir.FindTrack("body");
  for (const auto& s : body->segments) {
    if (!std::holds_alternative<AcceleratedMotion>(s.motion)) continue;
    for (int t = s.start + 1; t < s.end - 1; ++t) {
      const double d2 = trace[t + 1].entities[0].position.y - 2 * trace[t].entities[0].position.y +
                        trace[t - 1].entities[0].position.y;
      CHECK(std::abs(d2 - 0.6) <= 1e-9);
    }
  }
  // The drawn sprite moves down too.
  auto top_row = [](const Frame& f) {
    for (int y = 0; y < f.height(); ++y)
      for (int x = 300; x < 340; ++x)
        if (f.at(x, y).r > 180 && f.at(x, y).g < 60) return y;
    return -1;
  };
  CHECK(top_row(frames[60]) > top_row(frames[0]));
}

TEST_CASE("rendering is deterministic across worker counts") {
  const Animation a = BuildAnimation(support::kCaptions[5].sentence, Lexicon::Default(), Pack());
  const auto one = RenderFrames(a.ir, a.resolved, 1);
  CHECK(one == RenderFrames(a.ir, a.resolved, 1));
  CHECK(one == RenderFrames(a.ir, a.resolved, 7));
}

TEST_CASE("gif encode round trip and errors") {
  const Frame two[] = {Image(5, 4, Rgba{200, 0, 0, 255}), Image(5, 4, Rgba{0, 200, 0, 255})};
  const AnimatedSprite back = DecodeGif(Encode(two, {}).at(0));
  REQUIRE(back.frames.size() == 2);
  CHECK(back.frames[0] == two[0]);
  CHECK(back.frames[1] == two[1]);
  CHECK(KindOf([] { Encode(std::span<const Frame>(), {}); }) == ErrorKind::kEncodeError);
  const Frame ragged[] = {Image(2, 2), Image(3, 2)};
  CHECK(KindOf([&] { Encode(ragged, {}); }) == ErrorKind::kEncodeError);
}

TEST_CASE("gif round trip on random palettes") {
  std::mt19937 rng(123);
  for (int i = 0; i < 40; ++i) {
    const int ncolors = 2 + rng() % 255;
    std::vector<Rgba> palette;
    for (int c = 0; c < ncolors; ++c)
      palette.push_back({std::uint8_t(rng()), std::uint8_t(rng()), std::uint8_t(rng()), 255});
    std::vector<Frame> frames;
    const int w = 1 + rng() % 40, h = 1 + rng() % 40;
    for (int f = 0, n = 1 + rng() % 5; f < n; ++f)
      frames.push_back(oracle::RandomPaletteImage(rng, w, h, palette));
    const AnimatedSprite back = DecodeGif(EncodeGif(frames, {}));
    REQUIRE(back.frames.size() == frames.size());
    for (size_t f = 0; f < frames.size(); ++f) CHECK(back.frames[f] == frames[f]);
  }
}

TEST_CASE("gif transparency round trip") {
  Frame a(6, 6, Rgba{0, 0, 0, 0}), b(6, 6, Rgba{0, 0, 0, 0});
  a.set(1, 1, {255, 0, 0, 255});
  b.set(4, 4, {0, 255, 0, 255});
  const Frame frames[] = {a, b};
  const AnimatedSprite back = DecodeGif(EncodeGif(frames, {}));
  CHECK(back.frames[0] == a);
  CHECK(back.frames[1] == b);
}

TEST_CASE("gif with more colours than the palette stays decodable") {
  std::mt19937 rng(8);
  const Frame f[] = {oracle::RandomImage(rng, 40, 40, false)};
  for (bool dither : {false, true}) {
    GifOptions o;
    o.palette_size = 16;
    o.dither = dither;
    const auto bytes = EncodeGif(f, o);
    CHECK(bytes == EncodeGif(f, o));
    const AnimatedSprite back = DecodeGif(bytes);
    std::set<std::uint32_t> colours;
    for (auto v : Multiset(back.frames[0])) colours.insert(v);
    CHECK(colours.size() <= 16);
  }
}

TEST_CASE("median cut keeps exact palettes") {
  std::vector<ColorCount> hist;
  for (int i = 0; i < 7; ++i) hist.push_back({KeyOf(i * 30, 5, 9), std::uint64_t(i + 1)});
  const auto pal = MedianCut(hist, 8);
  CHECK(pal.size() == 7);
  CHECK(MedianCut(hist, 3).size() <= 3);
}

TEST_CASE("apng frames decode through an independent reader") {
  std::mt19937 rng(4);
  std::vector<Frame> frames;
  for (int i = 0; i < 4; ++i) frames.push_back(oracle::RandomImage(rng, 13, 9));
  EncoderConfig cfg;
  cfg.format = OutputFormat::kApng;
  cfg.delay_ms = 40;
  const auto out = Encode(frames, cfg);
  REQUIRE(out.size() == 1);
  const oracle::Apng png = oracle::ReadApng(out[0]);
  CHECK(png.crc_ok);
  CHECK(png.width == 13);
  CHECK(png.num_frames == 4);
  REQUIRE(png.frames.size() == 4);
  for (size_t i = 0; i < 4; ++i) {
    CHECK(png.frames[i].image == frames[i]);
    CHECK(png.frames[i].delay_num * 1000 == 40 * png.frames[i].delay_den);
  }
  CHECK(DecodePng(out[0]) == frames[0]);
}

TEST_CASE("png sequence") {
  std::mt19937 rng(6);
  std::vector<Frame> frames;
  for (int i = 0; i < 3; ++i) frames.push_back(oracle::RandomImage(rng, 7, 5));
  EncoderConfig cfg;
  cfg.format = OutputFormat::kPngSequence;
  const auto files = Encode(frames, cfg);
  REQUIRE(files.size() == 3);
  const fs::path dir = fs::temp_directory_path() / "text2anim_seq";
  fs::remove_all(dir);
  WriteOutput(dir, cfg.format, files);
  for (int i = 0; i < 3; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%05d.png", i);
    const std::string bytes = support::ReadFile(dir / name);
    const std::vector<std::uint8_t> v(bytes.begin(), bytes.end());
    CHECK(DecodePng(v) == frames[i]);
  }
  fs::remove_all(dir);
}

TEST_CASE("frame delays") {
  CHECK(DelayForFps(30, OutputFormat::kGif) == 30);
  CHECK(DelayForFps(60, OutputFormat::kGif) == 20);
  CHECK(DelayForFps(1, OutputFormat::kGif) == 1000);
  CHECK(DelayForFps(30, OutputFormat::kApng) == 33);
  CHECK(ContentHash({}) == "cbf29ce484222325");
  CHECK(FormatFromName("png-seq") == OutputFormat::kPngSequence);
  CHECK_FALSE(FormatFromName("mp4"));
}
