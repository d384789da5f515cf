#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rdm/bytes.hpp"
#include "rdm/previews/image.hpp"

namespace rdm {

using PngText = std::vector<std::pair<std::string, std::string>>;

// 8-bit RGB, non-interlaced. Output is a pure function of the inputs.
Bytes encode_png(const RgbImage& image, const PngText& text = {});

// Accepts 8-bit gray, gray+alpha, RGB and RGBA non-interlaced images (alpha is
// dropped). Throws Error{Parse} on anything else or on a damaged stream.
RgbImage decode_png(ByteView png);

PngText read_png_text(ByteView png);

bool is_png(ByteView bytes) noexcept;

}  // namespace rdm
