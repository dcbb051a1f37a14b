#ifndef TEXT2ANIM_RENDER_H_
#define TEXT2ANIM_RENDER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "text2anim/image.h"
#include "text2anim/instantiate.h"
#include "text2anim/timeline.h"

namespace text2anim {

// One composited frame per tick, in tick order. Ticks are spread over
// `workers` threads; the result does not depend on the worker count.
// When `trace` is given it receives the sampled state of every tick.
std::vector<Frame> RenderFrames(const TimelineIR& ir, const ResolvedScene& resolved,
                                int workers = 1, std::vector<SceneState>* trace = nullptr);

// Composites one sampled state.
Frame RenderState(const TimelineIR& ir, const ResolvedScene& resolved, const SceneState& state);

enum class OutputFormat { kGif, kApng, kPngSequence };

std::string_view FormatName(OutputFormat format);
std::optional<OutputFormat> FormatFromName(std::string_view name);

struct EncoderConfig {
  OutputFormat format = OutputFormat::kGif;
  int delay_ms = 33;
  int palette_size = 256;
  int loop_count = 0;
  bool dither = false;
};

// Frame delay for a frame rate, in milliseconds. GIF delays are rounded to
// whole hundredths of a second with a 10 ms floor.
int DelayForFps(int fps, OutputFormat format);

// Encoded files: a single blob for GIF and APNG, one PNG per frame for a
// sequence. Throws kEncodeError.
std::vector<std::vector<std::uint8_t>> Encode(std::span<const Frame> frames,
                                              const EncoderConfig& config);

// GIF and APNG go to `path`; a sequence goes into the directory `path` as
// frame_00000.png, frame_00001.png, ... Throws kIoError.
void WriteOutput(const std::filesystem::path& path, OutputFormat format,
                 const std::vector<std::vector<std::uint8_t>>& files);

// FNV-1a 64 over the files concatenated in order, as 16 hex digits.
std::string ContentHash(const std::vector<std::vector<std::uint8_t>>& files);

}  // namespace text2anim

#endif  // TEXT2ANIM_RENDER_H_
