#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rdm {

struct LoadSample {
  double time = 0;          // s
  double displacement = 0;  // m
  double load = 0;          // N

  bool operator==(const LoadSample&) const = default;
};

struct LoadDisplacementSeries {
  std::vector<LoadSample> samples;

  bool operator==(const LoadDisplacementSeries&) const = default;
};

struct PillarGeometry {
  std::string pillar_id;
  double diameter_top = 0;  // m
  double height = 0;        // m

  bool operator==(const PillarGeometry&) const = default;
};

inline constexpr std::string_view kLoadCsvHeader = "time_s,displacement_nm,load_mN";
inline constexpr std::string_view kGeometryCsvHeader = "pillar_id,diameter_top_um,height_um";

// Converts nm -> m and mN -> N while reading. Throws Error{Header},
// Error{Syntax} (naming the line) or Error{Domain} (non-finite value, time not
// strictly increasing).
LoadDisplacementSeries parse_load_csv(std::string_view text);

// Converts um -> m. Throws Error{Header}, Error{Syntax} or Error{Domain}
// (nonpositive size, duplicate pillar id).
std::vector<PillarGeometry> parse_geometry_csv(std::string_view text);

std::string write_load_csv(const LoadDisplacementSeries& series);
std::string write_geometry_csv(const std::vector<PillarGeometry>& pillars);

// Throws Error{Domain} when a series invariant does not hold.
void check_series(const LoadDisplacementSeries& series);

}  // namespace rdm
