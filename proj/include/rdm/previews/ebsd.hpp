#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rdm/bytes.hpp"

namespace rdm {

// Bunge (Z-X-Z) Euler angles in radians, stored as read and interpreted mod 2π.
struct EulerOrientation {
  double phi1 = 0;
  double Phi = 0;
  double phi2 = 0;

  bool operator==(const EulerOrientation&) const = default;
};

struct EbsdCell {
  EulerOrientation orientation;
  double quality = 0;
  std::uint32_t phase_id = 0;

  bool operator==(const EbsdCell&) const = default;
};

struct EbsdMap {
  std::size_t n_cols = 0;
  std::size_t n_rows = 0;
  double step = 0;              // m
  std::vector<EbsdCell> cells;  // row-major, n_cols * n_rows

  bool operator==(const EbsdMap&) const = default;
};

// Open ".ang-like" text: "# NCOLS", "# NROWS", "# STEP" header lines followed by
// "phi1 Phi phi2 x y quality phase" rows in row-major order.
// Throws Error{Header}, Error{Shape} or Error{Syntax} (with line number).
EbsdMap parse_ang(std::string_view text);

std::string write_ang(const EbsdMap& map);

}  // namespace rdm
