#include "rdm/previews/thumbnail.hpp"

#include <algorithm>

#include "rdm/error.hpp"
#include "rdm/extract/parsers.hpp"
#include "rdm/previews/ebsd.hpp"
#include "rdm/previews/ipf.hpp"
#include "rdm/previews/png.hpp"

namespace rdm {

namespace {

// round(a * b / c) for non-negative integers, halves rounded up.
std::size_t scale_round(std::size_t a, std::size_t b, std::size_t c) {
  return (2 * a * b + c) / (2 * c);
}

}  // namespace

RgbImage thumbnail(const RgbImage& image, std::size_t max_dim) {
  if (max_dim == 0) fail(ErrorCode::Domain, "thumbnail size must be >= 1");
  const std::size_t w = image.width, h = image.height;
  if (std::max(w, h) <= max_dim) return image;
  std::size_t nw, nh;
  if (w >= h) {
    nw = max_dim;
    nh = std::max<std::size_t>(1, scale_round(h, max_dim, w));
  } else {
    nh = max_dim;
    nw = std::max<std::size_t>(1, scale_round(w, max_dim, h));
  }
  RgbImage out(nw, nh);
  for (std::size_t oy = 0; oy < nh; ++oy) {
    const std::size_t y0 = oy * h / nh;
    const std::size_t y1 = std::max(y0 + 1, (oy + 1) * h / nh);
    for (std::size_t ox = 0; ox < nw; ++ox) {
      const std::size_t x0 = ox * w / nw;
      const std::size_t x1 = std::max(x0 + 1, (ox + 1) * w / nw);
      std::size_t sum[3] = {0, 0, 0};
      for (std::size_t y = y0; y < y1; ++y)
        for (std::size_t x = x0; x < x1; ++x) {
          const std::size_t i = 3 * (y * w + x);
          for (int c = 0; c < 3; ++c) sum[c] += image.pixels[i + c];
        }
      const std::size_t n = (y1 - y0) * (x1 - x0);
      out.put(oy, ox,
              {std::uint8_t((sum[0] + n / 2) / n), std::uint8_t((sum[1] + n / 2) / n),
               std::uint8_t((sum[2] + n / 2) / n)});
    }
  }
  return out;
}

std::optional<Bytes> make_preview(ByteView file, std::string_view dataset_type,
                                  VendorFormat vendor) {
  if (dataset_type == "EBSD_MAP") {
    const auto map = parse_ang(to_string(file));
    return encode_png(thumbnail(ipf_z_map(map)));
  }
  if (auto image = embedded_image(file, vendor)) return encode_png(thumbnail(decode_png(*image)));
  if (is_png(file)) return encode_png(thumbnail(decode_png(file)));
  return std::nullopt;
}

}  // namespace rdm
