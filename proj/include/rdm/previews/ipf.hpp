#pragma once

#include <array>
#include <span>

#include "rdm/previews/ebsd.hpp"
#include "rdm/previews/image.hpp"

namespace rdm {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

// Passive Bunge matrix g (sample frame -> crystal frame), g = Rz(phi2) Rx(Phi) Rz(phi1).
Mat3 orientation_matrix(const EulerOrientation& o);
EulerOrientation euler_from_matrix(const Mat3& g);
Mat3 multiply(const Mat3& a, const Mat3& b);

// The 24 proper rotations of the cubic point group, identity first.
std::span<const Mat3> cubic_rotations();

// Crystal-frame direction parallel to the sample Z axis.
Vec3 sample_z_in_crystal(const EulerOrientation& o);

// Folds a direction into the 001-101-111 standard triangle: 0 <= x <= y <= z.
Vec3 to_standard_triangle(const Vec3& v);

// Barycentric weights against the unit corners 001 (red), 101 (green) and 111
// (blue), scaled so the largest channel is 255, rounded half up.
Rgb8 ipf_color(const Vec3& crystal_direction);

Rgb8 euler_to_ipf_color(const EulerOrientation& o);

// One pixel per cell; quality 0 cells are black.
RgbImage ipf_z_map(const EbsdMap& map);

}  // namespace rdm
