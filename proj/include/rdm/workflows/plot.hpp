#pragma once

#include <string>

#include "rdm/bytes.hpp"
#include "rdm/previews/image.hpp"
#include "rdm/workflows/stress_strain.hpp"

namespace rdm {

inline constexpr std::size_t kPlotWidth = 640;
inline constexpr std::size_t kPlotHeight = 480;

// Line plot of stress over strain with labeled axes. Deterministic.
// Throws Error{Empty} for a curve without points.
RgbImage plot_curve(const StressStrainCurve& curve);
Bytes render_curve(const StressStrainCurve& curve);

// Draws `text` with a 5x7 bitmap font; lowercase prints as uppercase and
// unknown characters as '?'. `scale` multiplies the glyph size.
void draw_text(RgbImage& image, std::size_t x, std::size_t y, std::string_view text, Rgb8 color,
               std::size_t scale = 1);
std::size_t text_width(std::string_view text, std::size_t scale = 1);

}  // namespace rdm
