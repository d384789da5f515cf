#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rdm/core/perm_id.hpp"
#include "rdm/workflows/load_data.hpp"

namespace rdm {

struct CurvePoint {
  double strain = 0;  // dimensionless
  double stress = 0;  // Pa

  bool operator==(const CurvePoint&) const = default;
};

struct StressStrainCurve {
  std::vector<CurvePoint> points;
  PillarGeometry geometry;
  PermId source_dataset;

  bool operator==(const StressStrainCurve&) const = default;
};

// Engineering values from the top diameter: stress = 4F/(pi d^2),
// strain = u/L, point by point. Throws Error{Empty} or Error{Domain}.
StressStrainCurve stress_strain(const LoadDisplacementSeries& series,
                                const PillarGeometry& geometry, PermId source_dataset = {});

// "strain,stress_Pa" table, one row per point.
std::string curve_csv(const StressStrainCurve& curve);
nlohmann::json to_json(const StressStrainCurve& curve);

}  // namespace rdm
