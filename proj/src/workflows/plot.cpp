#include "rdm/workflows/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "rdm/error.hpp"
#include "rdm/previews/png.hpp"

namespace rdm {
namespace {

struct Glyph {
  char c;
  std::array<std::uint8_t, 7> rows;
};

constexpr Glyph kFont[] = {
    {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}}, {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}}, {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
    {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}}, {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
    {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}}, {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
    {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}}, {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
    {'A', {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}}, {'B', {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E}},
    {'C', {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E}}, {'D', {0x1C, 0x12, 0x11, 0x11, 0x11, 0x12, 0x1C}},
    {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}}, {'F', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10}},
    {'G', {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F}}, {'H', {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
    {'I', {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}}, {'J', {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C}},
    {'K', {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}}, {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F}},
    {'M', {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11}}, {'N', {0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11}},
    {'O', {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}}, {'P', {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10}},
    {'Q', {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D}}, {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}},
    {'S', {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E}}, {'T', {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
    {'U', {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}}, {'V', {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04}},
    {'W', {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A}}, {'X', {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11}},
    {'Y', {0x11, 0x11, 0x11, 0x0A, 0x04, 0x04, 0x04}}, {'Z', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F}},
    {'.', {0x00, 0x00, 0x00, 0x00, 0x00, 0x0C, 0x0C}}, {'-', {0x00, 0x00, 0x00, 0x1F, 0x00, 0x00, 0x00}},
    {'+', {0x00, 0x04, 0x04, 0x1F, 0x04, 0x04, 0x00}}, {'[', {0x0E, 0x08, 0x08, 0x08, 0x08, 0x08, 0x0E}},
    {']', {0x0E, 0x02, 0x02, 0x02, 0x02, 0x02, 0x0E}}, {'(', {0x02, 0x04, 0x08, 0x08, 0x08, 0x04, 0x02}},
    {')', {0x08, 0x04, 0x02, 0x02, 0x02, 0x04, 0x08}}, {':', {0x00, 0x0C, 0x0C, 0x00, 0x0C, 0x0C, 0x00}},
    {'/', {0x00, 0x01, 0x02, 0x04, 0x08, 0x10, 0x00}}, {'_', {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x1F}},
    {' ', {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}}, {'?', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x00, 0x04}},
};

const Glyph& glyph(char c) {
  if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  for (const auto& g : kFont)
    if (g.c == c) return g;
  return glyph('?');
}

constexpr Rgb8 kWhite{255, 255, 255};
constexpr Rgb8 kBlack{0, 0, 0};
constexpr Rgb8 kGrid{225, 225, 225};
constexpr Rgb8 kLine{31, 119, 180};

void draw_line(RgbImage& img, long x0, long y0, long x1, long y1, Rgb8 color) {
  const long dx = std::labs(x1 - x0), dy = -std::labs(y1 - y0);
  const long sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
  long err = dx + dy;
  while (true) {
    if (x0 >= 0 && y0 >= 0) img.put(static_cast<std::size_t>(y0), static_cast<std::size_t>(x0), color);
    if (x0 == x1 && y0 == y1) break;
    const long e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3G", v);
  return buf;
}

// Axis range that always includes zero and is never degenerate.
std::pair<double, double> axis_range(double lo, double hi) {
  lo = std::min(lo, 0.0);
  hi = std::max(hi, 0.0);
  if (hi - lo <= 0) return {lo, lo + 1};
  return {lo, hi};
}

}  // namespace

std::size_t text_width(std::string_view text, std::size_t scale) {
  return text.empty() ? 0 : (text.size() * 6 - 1) * scale;
}

void draw_text(RgbImage& image, std::size_t x, std::size_t y, std::string_view text, Rgb8 color,
               std::size_t scale) {
  for (char c : text) {
    const auto& g = glyph(c);
    for (std::size_t r = 0; r < 7; ++r)
      for (std::size_t col = 0; col < 5; ++col)
        if (g.rows[r] & (0x10 >> col))
          for (std::size_t dy = 0; dy < scale; ++dy)
            for (std::size_t dx = 0; dx < scale; ++dx)
              image.put(y + r * scale + dy, x + col * scale + dx, color);
    x += 6 * scale;
  }
}

RgbImage plot_curve(const StressStrainCurve& curve) {
  if (curve.points.empty()) fail(ErrorCode::Empty, "stress-strain curve has no points");
  RgbImage img(kPlotWidth, kPlotHeight, kWhite);
  const long left = 100, right = static_cast<long>(kPlotWidth) - 30, top = 40,
             bottom = static_cast<long>(kPlotHeight) - 70;

  double xmin = curve.points[0].strain, xmax = xmin, ymin = curve.points[0].stress, ymax = ymin;
  for (const auto& p : curve.points) {
    xmin = std::min(xmin, p.strain);
    xmax = std::max(xmax, p.strain);
    ymin = std::min(ymin, p.stress);
    ymax = std::max(ymax, p.stress);
  }
  std::tie(xmin, xmax) = axis_range(xmin, xmax);
  std::tie(ymin, ymax) = axis_range(ymin, ymax);
  auto px = [&](double x) {
    return left + std::lround((x - xmin) / (xmax - xmin) * static_cast<double>(right - left));
  };
  auto py = [&](double y) {
    return bottom - std::lround((y - ymin) / (ymax - ymin) * static_cast<double>(bottom - top));
  };

  constexpr int kTicks = 4;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = xmin + (xmax - xmin) * i / kTicks;
    const double fy = ymin + (ymax - ymin) * i / kTicks;
    const long gx = px(fx), gy = py(fy);
    draw_line(img, gx, top, gx, bottom, kGrid);
    draw_line(img, left, gy, right, gy, kGrid);
    const auto xl = tick_label(fx), yl = tick_label(fy);
    draw_text(img, static_cast<std::size_t>(gx) - text_width(xl) / 2,
              static_cast<std::size_t>(bottom) + 8, xl, kBlack);
    draw_text(img, static_cast<std::size_t>(left) - 8 - text_width(yl),
              static_cast<std::size_t>(gy) - 3, yl, kBlack);
  }
  draw_line(img, left, bottom, right, bottom, kBlack);
  draw_line(img, left, top, left, bottom, kBlack);

  for (std::size_t i = 1; i < curve.points.size(); ++i)
    draw_line(img, px(curve.points[i - 1].strain), py(curve.points[i - 1].stress),
              px(curve.points[i].strain), py(curve.points[i].stress), kLine);
  if (curve.points.size() == 1) {
    const long x = px(curve.points[0].strain), y = py(curve.points[0].stress);
    for (long d = -2; d <= 2; ++d) {
      draw_line(img, x - 2, y + d, x + 2, y + d, kLine);
    }
  }

  const std::string xlabel = "STRAIN [-]", ylabel = "STRESS [PA]";
  draw_text(img, static_cast<std::size_t>((left + right) / 2) - text_width(xlabel, 2) / 2,
            kPlotHeight - 30, xlabel, kBlack, 2);
  draw_text(img, 10, 12, ylabel, kBlack, 2);
  if (!curve.geometry.pillar_id.empty())
    draw_text(img, static_cast<std::size_t>(right) - text_width(curve.geometry.pillar_id, 2), 12,
              curve.geometry.pillar_id, kLine, 2);
  return img;
}

Bytes render_curve(const StressStrainCurve& curve) {
  return encode_png(plot_curve(curve), {{"Title", "stress-strain " + curve.geometry.pillar_id},
                                        {"x_axis", "strain [-]"},
                                        {"y_axis", "stress [Pa]"}});
}

}  // namespace rdm
