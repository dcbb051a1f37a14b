#include "text2anim/render.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <thread>

#include "text2anim/error.h"
#include "text2anim/gif.h"
#include "text2anim/png.h"

namespace text2anim {

namespace {

using BackdropCache = std::map<std::string, Frame>;

BackdropCache ScaleBackdrops(const TimelineIR& ir, const ResolvedScene& resolved) {
  BackdropCache cache;
  for (const BackgroundSwap& b : ir.backgrounds) {
    if (cache.count(b.asset)) continue;
    const Sprite& src = resolved.Image(b.asset).frames.front();
    Frame bg = ScaleBicubic(src, ir.canvas.width, ir.canvas.height);
    // Backdrops are opaque; keyed or transparent pixels show black.
    for (size_t i = 3; i < bg.mutable_pixels().size(); i += 4) {
      std::uint8_t* p = &bg.mutable_pixels()[i - 3];
      const int a = p[3];
      for (int c = 0; c < 3; ++c) p[c] = static_cast<std::uint8_t>((p[c] * a + 127) / 255);
      p[3] = 255;
    }
    cache.emplace(b.asset, std::move(bg));
  }
  return cache;
}

Frame Draw(const ResolvedScene& resolved, const SceneState& state, const Frame& background) {
  std::vector<Sprite> drawn;
  drawn.reserve(state.entities.size());
  std::vector<Placement> placements;
  for (const EntityState& e : state.entities) {
    if (!e.visible) continue;
    const AnimatedSprite& anim = resolved.Image(e.sprite);
    const Sprite& src = anim.frames[e.frame % anim.frames.size()];
    drawn.push_back(Rotate90(ScaleBicubic(src, e.size.width, e.size.height), e.quarter_turns));
    placements.push_back({nullptr, static_cast<int>(std::lround(e.box.left)),
                          static_cast<int>(std::lround(e.box.top)), e.z});
  }
  for (size_t i = 0; i < placements.size(); ++i) placements[i].sprite = &drawn[i];
  return Composite(background, std::move(placements));
}

}  // namespace

Frame RenderState(const TimelineIR& ir, const ResolvedScene& resolved, const SceneState& state) {
  const BackdropCache cache = ScaleBackdrops(ir, resolved);
  return Draw(resolved, state, cache.at(state.background));
}

std::vector<Frame> RenderFrames(const TimelineIR& ir, const ResolvedScene& resolved,
                                int workers, std::vector<SceneState>* trace) {
  const BackdropCache cache = ScaleBackdrops(ir, resolved);
  const int n = ir.duration;
  std::vector<Frame> frames(n);
  std::vector<SceneState> states(trace ? n : 0);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<int> next{0};

  auto work = [&] {
    for (int t = next++; t < n; t = next++) {
      try {
        SceneState s = Sample(ir, t);
        frames[t] = Draw(resolved, s, cache.at(s.background));
        if (trace) states[t] = std::move(s);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  if (trace) *trace = std::move(states);
  return frames;
}

std::string_view FormatName(OutputFormat format) {
  switch (format) {
    case OutputFormat::kGif: return "gif";
    case OutputFormat::kApng: return "apng";
    case OutputFormat::kPngSequence: return "png-seq";
  }
  return "?";
}

std::optional<OutputFormat> FormatFromName(std::string_view name) {
  for (OutputFormat f : {OutputFormat::kGif, OutputFormat::kApng, OutputFormat::kPngSequence})
    if (FormatName(f) == name) return f;
  return std::nullopt;
}

int DelayForFps(int fps, OutputFormat format) {
  if (fps < 1) throw Error(ErrorKind::kUsage, "fps must be positive");
  if (format == OutputFormat::kGif) {
    const int cs = static_cast<int>(std::lround(100.0 / fps));
    return std::max(10, cs * 10);
  }
  return static_cast<int>(std::lround(1000.0 / fps));
}

std::vector<std::vector<std::uint8_t>> Encode(std::span<const Frame> frames,
                                              const EncoderConfig& config) {
  if (frames.empty()) throw Error(ErrorKind::kEncodeError, "no frames to encode");
  for (const Frame& f : frames)
    if (f.width() != frames[0].width() || f.height() != frames[0].height())
      throw Error(ErrorKind::kEncodeError, "frames differ in size");
  switch (config.format) {
    case OutputFormat::kGif: {
      GifOptions o;
      o.delay_ms = config.delay_ms;
      o.palette_size = config.palette_size;
      o.loop_count = config.loop_count;
      o.dither = config.dither;
      return {EncodeGif(frames, o)};
    }
    case OutputFormat::kApng:
      return {EncodeApng(frames, config.delay_ms, config.loop_count)};
    case OutputFormat::kPngSequence: {
      std::vector<std::vector<std::uint8_t>> out;
      out.reserve(frames.size());
      for (const Frame& f : frames) out.push_back(EncodePng(f));
      return out;
    }
  }
  throw Error(ErrorKind::kEncodeError, "unknown format");
}

void WriteOutput(const std::filesystem::path& path, OutputFormat format,
                 const std::vector<std::vector<std::uint8_t>>& files) {
  namespace fs = std::filesystem;
  auto write = [](const fs::path& p, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorKind::kIoError, "cannot write " + p.string());
  };
  if (format != OutputFormat::kPngSequence) {
    if (files.size() != 1) throw Error(ErrorKind::kIoError, "expected a single output file");
    write(path, files[0]);
    return;
  }
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec || !fs::is_directory(path))
    throw Error(ErrorKind::kIoError, "cannot create directory " + path.string());
  char name[32];
  for (size_t i = 0; i < files.size(); ++i) {
    std::snprintf(name, sizeof name, "frame_%05zu.png", i);
    write(path / name, files[i]);
  }
}

std::string ContentHash(const std::vector<std::vector<std::uint8_t>>& files) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const auto& f : files)
    for (std::uint8_t b : f) {
      h ^= b;
      h *= 0x100000001b3ull;
    }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace text2anim
