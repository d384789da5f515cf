#include "rdm/previews/image.hpp"

#include <stdexcept>

namespace rdm {

RgbImage::RgbImage(std::size_t w, std::size_t h, Rgb8 fill) : width(w), height(h) {
  pixels.resize(3 * w * h);
  for (std::size_t i = 0; i < w * h; ++i) {
    pixels[3 * i] = fill[0];
    pixels[3 * i + 1] = fill[1];
    pixels[3 * i + 2] = fill[2];
  }
}

Rgb8 RgbImage::at(std::size_t row, std::size_t col) const {
  if (row >= height || col >= width) throw std::out_of_range("pixel outside image");
  const std::size_t i = 3 * (row * width + col);
  return {pixels[i], pixels[i + 1], pixels[i + 2]};
}

void RgbImage::put(std::size_t row, std::size_t col, Rgb8 color) {
  if (row >= height || col >= width) return;
  const std::size_t i = 3 * (row * width + col);
  pixels[i] = color[0];
  pixels[i + 1] = color[1];
  pixels[i + 2] = color[2];
}

}  // namespace rdm
