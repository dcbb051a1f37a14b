#include "text2anim/png.h"

#include <png.h>
#include <zlib.h>

#include <cstring>
#include <string>

#include "text2anim/error.h"

namespace text2anim {

namespace {

constexpr std::uint8_t kSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void PutU16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void Chunk(std::vector<std::uint8_t>& out, const char type[5],
           std::span<const std::uint8_t> body) {
  PutU32(out, static_cast<std::uint32_t>(body.size()));
  const size_t type_at = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), body.begin(), body.end());
  const uLong crc = crc32(0L, out.data() + type_at, static_cast<uInt>(4 + body.size()));
  PutU32(out, static_cast<std::uint32_t>(crc));
}

std::vector<std::uint8_t> Header(int width, int height) {
  std::vector<std::uint8_t> ihdr;
  PutU32(ihdr, width);
  PutU32(ihdr, height);
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(6);  // RGBA
  ihdr.push_back(0);
  ihdr.push_back(0);
  ihdr.push_back(0);
  return ihdr;
}

// zlib stream of filter-type-0 scanlines.
std::vector<std::uint8_t> Deflate(const Image& image) {
  const size_t stride = static_cast<size_t>(image.width()) * 4;
  std::vector<std::uint8_t> raw;
  raw.reserve((stride + 1) * image.height());
  const auto px = image.pixels();
  for (int y = 0; y < image.height(); ++y) {
    raw.push_back(0);
    raw.insert(raw.end(), px.begin() + static_cast<long>(y * stride),
               px.begin() + static_cast<long>((y + 1) * stride));
  }
  uLongf size = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> z(size);
  if (compress2(z.data(), &size, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
    throw Error(ErrorKind::kEncodeError, "zlib compression failed");
  z.resize(size);
  return z;
}

void CheckFrame(const Image& image) {
  if (image.width() < 1 || image.height() < 1)
    throw Error(ErrorKind::kEncodeError, "cannot encode an empty image");
}

}  // namespace

std::vector<std::uint8_t> EncodePng(const Image& image) {
  CheckFrame(image);
  std::vector<std::uint8_t> out(kSignature, kSignature + 8);
  Chunk(out, "IHDR", Header(image.width(), image.height()));
  Chunk(out, "IDAT", Deflate(image));
  Chunk(out, "IEND", {});
  return out;
}

std::vector<std::uint8_t> EncodeApng(std::span<const Frame> frames, int delay_ms,
                                     int loop_count) {
  if (frames.empty()) throw Error(ErrorKind::kEncodeError, "no frames to encode");
  const int width = frames[0].width();
  const int height = frames[0].height();
  for (const Frame& f : frames) {
    CheckFrame(f);
    if (f.width() != width || f.height() != height)
      throw Error(ErrorKind::kEncodeError, "frames differ in size");
  }
  if (delay_ms < 1 || delay_ms > 0xFFFF)
    throw Error(ErrorKind::kEncodeError, "APNG delay outside [1, 65535] ms");

  std::vector<std::uint8_t> out(kSignature, kSignature + 8);
  Chunk(out, "IHDR", Header(width, height));
  std::vector<std::uint8_t> actl;
  PutU32(actl, static_cast<std::uint32_t>(frames.size()));
  PutU32(actl, static_cast<std::uint32_t>(std::max(loop_count, 0)));
  Chunk(out, "acTL", actl);

  std::uint32_t sequence = 0;
  for (size_t i = 0; i < frames.size(); ++i) {
    std::vector<std::uint8_t> fctl;
    PutU32(fctl, sequence++);
    PutU32(fctl, width);
    PutU32(fctl, height);
    PutU32(fctl, 0);
    PutU32(fctl, 0);
    PutU16(fctl, static_cast<std::uint16_t>(delay_ms));
    PutU16(fctl, 1000);
    fctl.push_back(0);  // dispose: none
    fctl.push_back(0);  // blend: source
    Chunk(out, "fcTL", fctl);

    std::vector<std::uint8_t> z = Deflate(frames[i]);
    if (i == 0) {
      Chunk(out, "IDAT", z);
    } else {
      std::vector<std::uint8_t> fdat;
      PutU32(fdat, sequence++);
      fdat.insert(fdat.end(), z.begin(), z.end());
      Chunk(out, "fdAT", fdat);
    }
  }
  Chunk(out, "IEND", {});
  return out;
}

Image DecodePng(std::span<const std::uint8_t> bytes) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&img, bytes.data(), bytes.size()))
    throw Error(ErrorKind::kDecodeError, std::string("PNG header: ") + img.message, 0);
  img.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, rgba.data(), 0, nullptr)) {
    std::string msg = img.message;
    png_image_free(&img);
    throw Error(ErrorKind::kDecodeError, "PNG data: " + msg, 0);
  }
  return Image(static_cast<int>(img.width), static_cast<int>(img.height), std::move(rgba));
}

bool LooksLikePng(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 8 && std::memcmp(bytes.data(), kSignature, 8) == 0;
}

bool LooksLikeGif(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 6 && std::memcmp(bytes.data(), "GIF8", 4) == 0;
}

}  // namespace text2anim
