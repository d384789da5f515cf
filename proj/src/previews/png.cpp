#include "rdm/previews/png.hpp"

#include <cstdlib>
#include <cstring>

#include <zlib.h>

#include "rdm/error.hpp"

namespace rdm {

namespace {

constexpr std::uint8_t kSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

void put_u32be(Bytes& out, std::uint32_t v) {
  out.push_back(std::uint8_t(v >> 24));
  out.push_back(std::uint8_t(v >> 16));
  out.push_back(std::uint8_t(v >> 8));
  out.push_back(std::uint8_t(v));
}

std::uint32_t get_u32be(const std::uint8_t* p) {
  return std::uint32_t(p[0]) << 24 | std::uint32_t(p[1]) << 16 | std::uint32_t(p[2]) << 8 |
         std::uint32_t(p[3]);
}

void put_chunk(Bytes& out, const char type[4], ByteView data) {
  put_u32be(out, static_cast<std::uint32_t>(data.size()));
  const std::size_t start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  const auto crc = crc32(0L, out.data() + start, static_cast<uInt>(out.size() - start));
  put_u32be(out, static_cast<std::uint32_t>(crc));
}

struct Chunk {
  std::string type;
  ByteView data;
};

std::vector<Chunk> chunks(ByteView png) {
  if (!is_png(png)) fail(ErrorCode::Parse, "not a PNG stream");
  std::vector<Chunk> out;
  std::size_t pos = 8;
  while (pos + 12 <= png.size()) {
    const std::uint32_t len = get_u32be(png.data() + pos);
    if (len > png.size() - pos - 12) fail(ErrorCode::Parse, "PNG chunk overruns stream");
    Chunk c{std::string(reinterpret_cast<const char*>(png.data() + pos + 4), 4),
            png.subspan(pos + 8, len)};
    const auto crc = crc32(0L, png.data() + pos + 4, len + 4);
    if (get_u32be(png.data() + pos + 8 + len) != static_cast<std::uint32_t>(crc))
      fail(ErrorCode::Parse, "PNG chunk " + c.type + " has a bad CRC");
    pos += 12 + len;
    out.push_back(c);
    if (out.back().type == "IEND") return out;
  }
  fail(ErrorCode::Parse, "PNG stream ends without IEND");
}

std::uint8_t paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return std::uint8_t(a);
  if (pb <= pc) return std::uint8_t(b);
  return std::uint8_t(c);
}

}  // namespace

bool is_png(ByteView bytes) noexcept {
  return bytes.size() >= 8 && std::memcmp(bytes.data(), kSignature, 8) == 0;
}

Bytes encode_png(const RgbImage& image, const PngText& text) {
  if (image.width == 0 || image.height == 0)
    fail(ErrorCode::Domain, "cannot encode an empty image");
  Bytes out(kSignature, kSignature + 8);

  Bytes ihdr;
  put_u32be(ihdr, static_cast<std::uint32_t>(image.width));
  put_u32be(ihdr, static_cast<std::uint32_t>(image.height));
  ihdr.insert(ihdr.end(), {8, 2, 0, 0, 0});  // depth 8, RGB, deflate, no filter, no interlace
  put_chunk(out, "IHDR", ihdr);

  for (const auto& [key, value] : text) {
    Bytes t(key.begin(), key.end());
    t.push_back(0);
    t.insert(t.end(), value.begin(), value.end());
    put_chunk(out, "tEXt", t);
  }

  const std::size_t stride = 3 * image.width;
  Bytes raw;
  raw.reserve((stride + 1) * image.height);
  for (std::size_t y = 0; y < image.height; ++y) {
    raw.push_back(0);
    raw.insert(raw.end(), image.pixels.begin() + std::ptrdiff_t(y * stride),
               image.pixels.begin() + std::ptrdiff_t((y + 1) * stride));
  }
  uLongf packed_size = compressBound(static_cast<uLong>(raw.size()));
  Bytes packed(packed_size);
  if (compress2(packed.data(), &packed_size, raw.data(), static_cast<uLong>(raw.size()), 6) !=
      Z_OK)
    fail(ErrorCode::Io, "deflate failed");
  packed.resize(packed_size);
  put_chunk(out, "IDAT", packed);
  put_chunk(out, "IEND", {});
  return out;
}

RgbImage decode_png(ByteView png) {
  const auto all = chunks(png);
  if (all.empty() || all.front().type != "IHDR" || all.front().data.size() != 13)
    fail(ErrorCode::Parse, "PNG does not start with IHDR");
  const auto h = all.front().data;
  const std::size_t width = get_u32be(h.data()), height = get_u32be(h.data() + 4);
  const std::uint8_t depth = h[8], color = h[9], interlace = h[12];
  if (depth != 8 || interlace != 0)
    fail(ErrorCode::Parse, "only 8-bit non-interlaced PNG is supported");
  std::size_t channels = 0;
  switch (color) {
    case 0: channels = 1; break;
    case 2: channels = 3; break;
    case 4: channels = 2; break;
    case 6: channels = 4; break;
    default: fail(ErrorCode::Parse, "unsupported PNG color type");
  }
  if (width == 0 || height == 0 || width > (1u << 15) || height > (1u << 15))
    fail(ErrorCode::Parse, "PNG dimensions out of range");

  Bytes packed;
  for (const auto& c : all)
    if (c.type == "IDAT") packed.insert(packed.end(), c.data.begin(), c.data.end());
  const std::size_t stride = channels * width;
  uLongf raw_size = static_cast<uLongf>((stride + 1) * height);
  Bytes raw(raw_size);
  if (uncompress(raw.data(), &raw_size, packed.data(), static_cast<uLong>(packed.size())) != Z_OK ||
      raw_size != raw.size())
    fail(ErrorCode::Parse, "PNG image data is damaged");

  Bytes cur(stride), prev(stride, 0);
  RgbImage img(width, height);
  for (std::size_t y = 0; y < height; ++y) {
    const std::uint8_t filter = raw[y * (stride + 1)];
    const std::uint8_t* line = raw.data() + y * (stride + 1) + 1;
    for (std::size_t x = 0; x < stride; ++x) {
      const int a = x >= channels ? cur[x - channels] : 0;
      const int b = prev[x];
      const int c = x >= channels ? prev[x - channels] : 0;
      int v = line[x];
      switch (filter) {
        case 0: break;
        case 1: v += a; break;
        case 2: v += b; break;
        case 3: v += (a + b) / 2; break;
        case 4: v += paeth(a, b, c); break;
        default: fail(ErrorCode::Parse, "bad PNG filter type");
      }
      cur[x] = std::uint8_t(v);
    }
    for (std::size_t x = 0; x < width; ++x) {
      const std::uint8_t* px = cur.data() + x * channels;
      if (channels <= 2)
        img.put(y, x, {px[0], px[0], px[0]});
      else
        img.put(y, x, {px[0], px[1], px[2]});
    }
    std::swap(cur, prev);
  }
  return img;
}

PngText read_png_text(ByteView png) {
  PngText out;
  for (const auto& c : chunks(png)) {
    if (c.type != "tEXt") continue;
    const auto s = to_string(c.data);
    const auto nul = s.find('\0');
    if (nul == std::string::npos) continue;
    out.emplace_back(s.substr(0, nul), s.substr(nul + 1));
  }
  return out;
}

}  // namespace rdm
