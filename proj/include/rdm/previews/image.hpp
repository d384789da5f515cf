#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace rdm {

using Rgb8 = std::array<std::uint8_t, 3>;

// Row-major RGB8; pixels.size() == 3 * width * height.
struct RgbImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  RgbImage() = default;
  RgbImage(std::size_t w, std::size_t h, Rgb8 fill = {0, 0, 0});

  Rgb8 at(std::size_t row, std::size_t col) const;
  void put(std::size_t row, std::size_t col, Rgb8 color);

  bool operator==(const RgbImage&) const = default;
};

}  // namespace rdm
