#include "text2anim/gif.h"

#include <algorithm>
#include <array>
#include <cstring>
#include <optional>
#include <string>
#include <unordered_map>

#include "text2anim/error.h"
#include "text2anim/quantize.h"

namespace text2anim {

namespace {

constexpr int kMaxCodeBits = 12;
constexpr int kMaxCodes = 1 << kMaxCodeBits;

// ---------------------------------------------------------------------------
// Writing

class ByteWriter {
 public:
  void U8(int v) { out_.push_back(static_cast<std::uint8_t>(v)); }
  void U16(int v) {
    U8(v & 0xFF);
    U8((v >> 8) & 0xFF);
  }
  void Bytes(std::string_view s) { out_.insert(out_.end(), s.begin(), s.end()); }
  std::vector<std::uint8_t>& data() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

// Packs variable-width codes LSB first and emits 255-byte sub-blocks.
class CodeWriter {
 public:
  explicit CodeWriter(ByteWriter& out) : out_(out) {}

  void Put(int code, int bits) {
    acc_ |= static_cast<std::uint32_t>(code) << nbits_;
    nbits_ += bits;
    while (nbits_ >= 8) {
      Byte(acc_ & 0xFF);
      acc_ >>= 8;
      nbits_ -= 8;
    }
  }

  void Finish() {
    if (nbits_ > 0) Byte(acc_ & 0xFF);
    acc_ = 0;
    nbits_ = 0;
    FlushBlock();
    out_.U8(0);
  }

 private:
  void Byte(std::uint8_t b) {
    block_[len_++] = b;
    if (len_ == 255) FlushBlock();
  }
  void FlushBlock() {
    if (len_ == 0) return;
    out_.U8(len_);
    out_.data().insert(out_.data().end(), block_.begin(), block_.begin() + len_);
    len_ = 0;
  }

  ByteWriter& out_;
  std::uint32_t acc_ = 0;
  int nbits_ = 0;
  std::array<std::uint8_t, 255> block_{};
  int len_ = 0;
};

// Open-addressed (prefix, byte) -> code dictionary.
class LzwTable {
 public:
  LzwTable() : keys_(kSize), codes_(kSize) { Clear(); }

  void Clear() { std::fill(keys_.begin(), keys_.end(), -1); }

  int Find(int prefix, int byte) const {
    const std::int32_t key = (prefix << 8) | byte;
    for (size_t h = Hash(key);; h = (h + 1) % kSize) {
      if (keys_[h] == key) return codes_[h];
      if (keys_[h] < 0) return -1;
    }
  }

  void Insert(int prefix, int byte, int code) {
    const std::int32_t key = (prefix << 8) | byte;
    size_t h = Hash(key);
    while (keys_[h] >= 0) h = (h + 1) % kSize;
    keys_[h] = key;
    codes_[h] = static_cast<std::int16_t>(code);
  }

 private:
  static constexpr size_t kSize = 9973;  // prime, > 2 * 4096
  static size_t Hash(std::int32_t key) {
    return (static_cast<std::uint32_t>(key) * 2654435761u) % kSize;
  }
  std::vector<std::int32_t> keys_;
  std::vector<std::int16_t> codes_;
};

void LzwEncode(std::span<const std::uint8_t> indices, int min_code_size,
               ByteWriter& out) {
  out.U8(min_code_size);
  CodeWriter writer(out);
  const int clear = 1 << min_code_size;
  const int eoi = clear + 1;
  int next = eoi + 1;
  int bits = min_code_size + 1;
  bool fresh = true;  // no code emitted since the last clear
  LzwTable table;

  // Widen before writing once the decoder's table will have outgrown the
  // current width (the decoder adds entries one code behind the encoder).
  auto emit = [&](int code) {
    if (next > (1 << bits) && bits < kMaxCodeBits) ++bits;
    writer.Put(code, bits);
  };

  emit(clear);
  int prefix = indices[0];
  for (size_t i = 1; i < indices.size(); ++i) {
    const int c = indices[i];
    const int found = table.Find(prefix, c);
    if (found >= 0) {
      prefix = found;
      continue;
    }
    emit(prefix);
    fresh = false;
    table.Insert(prefix, c, next++);
    if (next == kMaxCodes) {
      emit(clear);
      table.Clear();
      next = eoi + 1;
      bits = min_code_size + 1;
      fresh = true;
    }
    prefix = c;
  }
  emit(prefix);
  // The decoder adds one more entry on reading the final code unless it was
  // the first code after a clear.
  if (!fresh) ++next;
  emit(eoi);
  writer.Finish();
}

// ---------------------------------------------------------------------------
// Reading

[[noreturn]] void DecodeFail(const std::string& what, size_t offset) {
  throw Error(ErrorKind::kDecodeError,
              what + " at byte " + std::to_string(offset),
              static_cast<std::int64_t>(offset));
}

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  size_t pos() const { return pos_; }
  int U8() {
    Need(1);
    return data_[pos_++];
  }
  int U16() {
    Need(2);
    int v = data_[pos_] | (data_[pos_ + 1] << 8);
    pos_ += 2;
    return v;
  }
  std::span<const std::uint8_t> Take(size_t n) {
    Need(n);
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  void SkipSubBlocks() {
    for (int len = U8(); len != 0; len = U8()) Take(len);
  }

 private:
  void Need(size_t n) const {
    if (pos_ + n > data_.size()) DecodeFail("unexpected end of stream", pos_);
  }
  std::span<const std::uint8_t> data_;
  size_t pos_ = 0;
};

std::vector<Rgba> ReadColorTable(ByteReader& in, int entries) {
  std::vector<Rgba> table(entries);
  auto raw = in.Take(static_cast<size_t>(entries) * 3);
  for (int i = 0; i < entries; ++i)
    table[i] = {raw[i * 3], raw[i * 3 + 1], raw[i * 3 + 2], 255};
  return table;
}

std::vector<std::uint8_t> LzwDecode(ByteReader& in, size_t pixel_count) {
  const size_t start = in.pos();
  const int min_code_size = in.U8();
  if (min_code_size < 1 || min_code_size > 11)
    DecodeFail("invalid LZW minimum code size", start);

  // Gather the sub-block payload.
  std::vector<std::uint8_t> data;
  for (int len = in.U8(); len != 0; len = in.U8()) {
    auto block = in.Take(len);
    data.insert(data.end(), block.begin(), block.end());
  }

  const int clear = 1 << min_code_size;
  const int eoi = clear + 1;
  std::vector<std::uint16_t> prefix(kMaxCodes);
  std::vector<std::uint8_t> suffix(kMaxCodes);
  std::vector<std::uint8_t> first(kMaxCodes);
  std::vector<std::uint16_t> length(kMaxCodes);
  for (int i = 0; i < clear; ++i) {
    suffix[i] = static_cast<std::uint8_t>(i);
    first[i] = static_cast<std::uint8_t>(i);
    length[i] = 1;
  }

  std::vector<std::uint8_t> out;
  out.reserve(pixel_count);
  int bits = min_code_size + 1;
  int next = eoi + 1;
  int prev = -1;
  size_t bitpos = 0;
  const size_t total_bits = data.size() * 8;
  bool ended = false;

  auto emit_string = [&](int code) {
    const size_t n = length[code];
    const size_t base = out.size();
    out.resize(base + n);
    for (size_t i = n; i-- > 0;) {
      out[base + i] = suffix[code];
      code = prefix[code];
    }
  };

  while (bitpos + bits <= total_bits) {
    int code = 0;
    for (int b = 0; b < bits; ++b, ++bitpos)
      code |= ((data[bitpos >> 3] >> (bitpos & 7)) & 1) << b;

    if (code == clear) {
      bits = min_code_size + 1;
      next = eoi + 1;
      prev = -1;
      continue;
    }
    if (code == eoi) {
      ended = true;
      break;
    }
    if (prev < 0) {
      if (code >= clear) DecodeFail("first code after clear is not a literal", start);
      emit_string(code);
      prev = code;
      continue;
    }
    std::uint8_t lead;
    if (code < next) {
      lead = first[code];
    } else if (code == next) {
      lead = first[prev];
    } else {
      DecodeFail("LZW code out of range", start);
    }
    if (next < kMaxCodes) {
      prefix[next] = static_cast<std::uint16_t>(prev);
      suffix[next] = lead;
      first[next] = first[prev];
      length[next] = static_cast<std::uint16_t>(length[prev] + 1);
      ++next;
      if (next == (1 << bits) && bits < kMaxCodeBits) ++bits;
    }
    emit_string(code);
    prev = code;
  }
  if (!ended && out.size() < pixel_count) DecodeFail("truncated image data", start);
  if (out.size() < pixel_count) DecodeFail("image data shorter than frame", start);
  out.resize(pixel_count);
  return out;
}

struct GraphicControl {
  int disposal = 0;
  int delay_cs = 0;
  int transparent = -1;
};

}  // namespace

std::vector<std::uint8_t> EncodeGif(std::span<const Frame> frames,
                                    const GifOptions& options) {
  if (frames.empty()) throw Error(ErrorKind::kEncodeError, "no frames to encode");
  if (options.palette_size < 2 || options.palette_size > 256)
    throw Error(ErrorKind::kEncodeError, "palette size must be within [2, 256]");
  if (options.delay_ms < 10)
    throw Error(ErrorKind::kEncodeError, "GIF frame delay must be at least 10 ms");
  const int width = frames[0].width();
  const int height = frames[0].height();
  if (width < 1 || height < 1 || width > 0xFFFF || height > 0xFFFF)
    throw Error(ErrorKind::kEncodeError, "frame size outside GIF limits");
  for (const Frame& f : frames)
    if (f.width() != width || f.height() != height)
      throw Error(ErrorKind::kEncodeError, "frames differ in size");

  // Histogram of opaque colours; runs of equal pixels are counted at once.
  bool transparency = false;
  std::unordered_map<ColorKey, std::uint64_t> counts;
  for (const Frame& f : frames) {
    auto px = f.pixels();
    ColorKey run_color = 0;
    std::uint64_t run = 0;
    for (size_t i = 0; i < px.size(); i += 4) {
      if (px[i + 3] < 128) {
        transparency = true;
        continue;
      }
      const ColorKey k = KeyOf(px[i], px[i + 1], px[i + 2]);
      if (run > 0 && k == run_color) {
        ++run;
        continue;
      }
      if (run > 0) counts[run_color] += run;
      run_color = k;
      run = 1;
    }
    if (run > 0) counts[run_color] += run;
  }
  std::vector<ColorCount> histogram;
  histogram.reserve(counts.size());
  for (const auto& [k, n] : counts) histogram.push_back({k, n});

  const int capacity = options.palette_size - (transparency ? 1 : 0);
  std::vector<Rgba> palette =
      histogram.empty() ? std::vector<Rgba>{{0, 0, 0, 255}} : MedianCut(histogram, capacity);
  const bool exact = histogram.size() <= static_cast<size_t>(capacity);
  const int transparent_index = transparency ? static_cast<int>(palette.size()) : -1;
  const int used = static_cast<int>(palette.size()) + (transparency ? 1 : 0);
  int table_bits = 1;
  while ((1 << table_bits) < used) ++table_bits;
  PaletteMapper mapper(palette);

  static constexpr int kBayer[4][4] = {
      {0, 8, 2, 10}, {12, 4, 14, 6}, {3, 11, 1, 9}, {15, 7, 13, 5}};
  const bool dither = options.dither && !exact;

  auto index_frame = [&](const Frame& f) {
    std::vector<std::uint8_t> idx(static_cast<size_t>(width) * height);
    auto px = f.pixels();
    ColorKey last_key = 0;
    int last_index = -1;
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const size_t p = static_cast<size_t>(y) * width + x;
        const std::uint8_t* c = &px[p * 4];
        if (c[3] < 128) {
          idx[p] = static_cast<std::uint8_t>(transparent_index);
          continue;
        }
        int r = c[0], g = c[1], b = c[2];
        if (dither) {
          const int offset = (kBayer[y & 3][x & 3] - 8) * 2;
          r = std::clamp(r + offset, 0, 255);
          g = std::clamp(g + offset, 0, 255);
          b = std::clamp(b + offset, 0, 255);
        }
        const ColorKey k = KeyOf(static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                                 static_cast<std::uint8_t>(b));
        if (last_index < 0 || k != last_key) {
          last_key = k;
          last_index = mapper.Map(k);
        }
        idx[p] = static_cast<std::uint8_t>(last_index);
      }
    }
    return idx;
  };

  ByteWriter out;
  out.Bytes("GIF89a");
  out.U16(width);
  out.U16(height);
  out.U8(0x80 | (7 << 4) | (table_bits - 1));
  out.U8(0);  // background colour index
  out.U8(0);  // pixel aspect ratio
  for (int i = 0; i < (1 << table_bits); ++i) {
    Rgba c = i < static_cast<int>(palette.size()) ? palette[i] : Rgba{0, 0, 0, 0};
    out.U8(c.r);
    out.U8(c.g);
    out.U8(c.b);
  }
  if (frames.size() > 1) {
    out.U8(0x21);
    out.U8(0xFF);
    out.U8(11);
    out.Bytes("NETSCAPE2.0");
    out.U8(3);
    out.U8(1);
    out.U16(std::clamp(options.loop_count, 0, 0xFFFF));
    out.U8(0);
  }

  const int delay_cs = std::clamp((options.delay_ms + 5) / 10, 1, 0xFFFF);
  const int min_code_size = std::max(2, table_bits);
  std::vector<std::uint8_t> previous;
  for (const Frame& f : frames) {
    std::vector<std::uint8_t> idx = index_frame(f);

    // Opaque animations only store the rectangle that changed; frames with
    // transparency are written whole and cleared afterwards.
    int left = 0, top = 0, right = width - 1, bottom = height - 1;
    if (!transparency && !previous.empty()) {
      left = width;
      top = height;
      right = -1;
      bottom = -1;
      for (int y = 0; y < height; ++y) {
        const size_t row = static_cast<size_t>(y) * width;
        for (int x = 0; x < width; ++x) {
          if (idx[row + x] == previous[row + x]) continue;
          left = std::min(left, x);
          right = std::max(right, x);
          top = std::min(top, y);
          bottom = std::max(bottom, y);
        }
      }
      if (right < 0) left = top = right = bottom = 0;
    }
    const int rw = right - left + 1;
    const int rh = bottom - top + 1;
    std::vector<std::uint8_t> rect(static_cast<size_t>(rw) * rh);
    for (int y = 0; y < rh; ++y)
      std::memcpy(&rect[static_cast<size_t>(y) * rw],
                  &idx[static_cast<size_t>(top + y) * width + left], rw);

    out.U8(0x21);
    out.U8(0xF9);
    out.U8(4);
    const int disposal = transparency ? 2 : 1;
    out.U8((disposal << 2) | (transparency ? 1 : 0));
    out.U16(delay_cs);
    out.U8(transparency ? transparent_index : 0);
    out.U8(0);

    out.U8(0x2C);
    out.U16(left);
    out.U16(top);
    out.U16(rw);
    out.U16(rh);
    out.U8(0);
    LzwEncode(rect, min_code_size, out);
    previous = std::move(idx);
  }
  out.U8(0x3B);
  return std::move(out.data());
}

AnimatedSprite DecodeGif(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  auto sig = in.Take(6);
  const std::string signature(sig.begin(), sig.end());
  if (signature != "GIF89a" && signature != "GIF87a") DecodeFail("not a GIF stream", 0);

  const int width = in.U16();
  const int height = in.U16();
  if (width == 0 || height == 0) DecodeFail("zero-sized logical screen", 6);
  const int packed = in.U8();
  in.U8();  // background index: the canvas starts transparent
  in.U8();  // aspect
  std::vector<Rgba> global;
  if (packed & 0x80) global = ReadColorTable(in, 1 << ((packed & 7) + 1));

  AnimatedSprite anim;
  Image canvas(width, height);
  GraphicControl gce;
  bool saw_trailer = false;
  while (!saw_trailer) {
    const size_t block_start = in.pos();
    const int introducer = in.U8();
    if (introducer == 0x3B) {
      saw_trailer = true;
    } else if (introducer == 0x21) {
      const int label = in.U8();
      if (label == 0xF9) {
        const int size = in.U8();
        if (size < 4) DecodeFail("short graphic control extension", block_start);
        auto body = in.Take(size);
        gce.disposal = (body[0] >> 2) & 7;
        gce.delay_cs = body[1] | (body[2] << 8);
        gce.transparent = (body[0] & 1) ? body[3] : -1;
        in.SkipSubBlocks();
      } else if (label == 0xFF) {
        const int size = in.U8();
        auto ident = in.Take(size);
        const bool netscape =
            size == 11 && std::string(ident.begin(), ident.end()) == "NETSCAPE2.0";
        for (int len = in.U8(); len != 0; len = in.U8()) {
          auto sub = in.Take(len);
          if (netscape && len >= 3 && sub[0] == 1) anim.loop_count = sub[1] | (sub[2] << 8);
        }
      } else {
        in.SkipSubBlocks();
      }
    } else if (introducer == 0x2C) {
      const int left = in.U16();
      const int top = in.U16();
      const int fw = in.U16();
      const int fh = in.U16();
      const int fpacked = in.U8();
      std::vector<Rgba> local;
      if (fpacked & 0x80) local = ReadColorTable(in, 1 << ((fpacked & 7) + 1));
      const std::vector<Rgba>& table = local.empty() ? global : local;
      if (table.empty()) DecodeFail("image without a colour table", block_start);
      const bool interlaced = fpacked & 0x40;

      std::vector<std::uint8_t> idx = LzwDecode(in, static_cast<size_t>(fw) * fh);

      // Row order for interlaced images: passes starting at 0, 4, 2, 1.
      std::vector<int> rows;
      rows.reserve(fh);
      if (interlaced) {
        for (int y = 0; y < fh; y += 8) rows.push_back(y);
        for (int y = 4; y < fh; y += 8) rows.push_back(y);
        for (int y = 2; y < fh; y += 4) rows.push_back(y);
        for (int y = 1; y < fh; y += 2) rows.push_back(y);
      } else {
        for (int y = 0; y < fh; ++y) rows.push_back(y);
      }

      std::optional<Image> saved;
      if (gce.disposal == 3) saved = canvas;
      for (int r = 0; r < fh; ++r) {
        const int cy = top + rows[r];
        if (cy >= height) continue;
        for (int x = 0; x < fw; ++x) {
          const int cx = left + x;
          if (cx >= width) continue;
          const int ci = idx[static_cast<size_t>(r) * fw + x];
          if (ci == gce.transparent) continue;
          if (ci >= static_cast<int>(table.size()))
            DecodeFail("colour index outside palette", block_start);
          canvas.set(cx, cy, table[ci]);
        }
      }
      anim.frames.push_back(canvas);
      anim.delays_ms.push_back(gce.delay_cs == 0 ? 100 : gce.delay_cs * 10);

      if (gce.disposal == 2) {
        for (int y = top; y < std::min(height, top + fh); ++y)
          for (int x = left; x < std::min(width, left + fw); ++x) canvas.set(x, y, {});
      } else if (gce.disposal == 3 && saved) {
        canvas = std::move(*saved);
      }
      gce = {};
    } else {
      DecodeFail("unknown block introducer", block_start);
    }
  }
  if (anim.frames.empty()) DecodeFail("stream contains no images", in.pos());
  return anim;
}

}  // namespace text2anim
