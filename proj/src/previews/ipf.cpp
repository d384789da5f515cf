#include "rdm/previews/ipf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace rdm {

Mat3 orientation_matrix(const EulerOrientation& o) {
  const double c1 = std::cos(o.phi1), s1 = std::sin(o.phi1);
  const double c = std::cos(o.Phi), s = std::sin(o.Phi);
  const double c2 = std::cos(o.phi2), s2 = std::sin(o.phi2);
  return {{{c1 * c2 - s1 * s2 * c, s1 * c2 + c1 * s2 * c, s2 * s},
           {-c1 * s2 - s1 * c2 * c, -s1 * s2 + c1 * c2 * c, c2 * s},
           {s1 * s, -c1 * s, c}}};
}

EulerOrientation euler_from_matrix(const Mat3& g) {
  const double Phi = std::acos(std::clamp(g[2][2], -1.0, 1.0));
  if (std::abs(std::sin(Phi)) > 1e-12)
    return {std::atan2(g[2][0], -g[2][1]), Phi, std::atan2(g[0][2], g[1][2])};
  // Gimbal lock: only phi1 + phi2 (or phi1 - phi2) is defined.
  return {std::atan2(g[0][1], g[0][0]), Phi, 0.0};
}

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

std::span<const Mat3> cubic_rotations() {
  static const std::vector<Mat3> rotations = [] {
    // Signed permutation matrices with determinant +1.
    std::vector<Mat3> out;
    std::array<int, 3> perm = {0, 1, 2};
    do {
      for (int signs = 0; signs < 8; ++signs) {
        Mat3 m{};
        for (int r = 0; r < 3; ++r) m[r][perm[r]] = (signs >> r & 1) ? -1.0 : 1.0;
        const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if (det > 0) out.push_back(m);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }();
  return rotations;
}

Vec3 sample_z_in_crystal(const EulerOrientation& o) {
  const auto g = orientation_matrix(o);
  return {g[0][2], g[1][2], g[2][2]};
}

Vec3 to_standard_triangle(const Vec3& v) {
  Vec3 out = {std::abs(v[0]), std::abs(v[1]), std::abs(v[2])};
  std::sort(out.begin(), out.end());
  return out;
}

Rgb8 ipf_color(const Vec3& crystal_direction) {
  const auto v = to_standard_triangle(crystal_direction);
  const double w[3] = {v[2] - v[1], std::numbers::sqrt2 * (v[1] - v[0]),
                       std::numbers::sqrt3 * v[0]};
  const double peak = std::max({w[0], w[1], w[2]});
  Rgb8 rgb{0, 0, 0};
  if (!(peak > 0)) return rgb;
  for (int i = 0; i < 3; ++i) {
    const double scaled = std::clamp(w[i] / peak, 0.0, 1.0) * 255.0;
    rgb[i] = static_cast<std::uint8_t>(std::floor(scaled + 0.5));
  }
  return rgb;
}

Rgb8 euler_to_ipf_color(const EulerOrientation& o) { return ipf_color(sample_z_in_crystal(o)); }

RgbImage ipf_z_map(const EbsdMap& map) {
  RgbImage img(map.n_cols, map.n_rows);
  for (std::size_t i = 0; i < map.cells.size() && i < map.n_cols * map.n_rows; ++i) {
    const auto& cell = map.cells[i];
    const Rgb8 color = cell.quality == 0 ? Rgb8{0, 0, 0} : euler_to_ipf_color(cell.orientation);
    img.put(i / map.n_cols, i % map.n_cols, color);
  }
  return img;
}

}  // namespace rdm
