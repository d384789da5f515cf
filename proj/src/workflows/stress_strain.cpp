#include "rdm/workflows/stress_strain.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "rdm/error.hpp"

namespace rdm {

StressStrainCurve stress_strain(const LoadDisplacementSeries& series,
                                const PillarGeometry& geometry, PermId source_dataset) {
  if (series.samples.empty()) fail(ErrorCode::Empty, "load-displacement series is empty");
  if (!(geometry.diameter_top > 0) || !(geometry.height > 0) ||
      !std::isfinite(geometry.diameter_top) || !std::isfinite(geometry.height))
    fail(ErrorCode::Domain, "pillar " + geometry.pillar_id + " needs positive diameter and height");
  check_series(series);

  const double d = geometry.diameter_top;
  const double area_factor = std::numbers::pi * d * d;
  StressStrainCurve curve{{}, geometry, std::move(source_dataset)};
  curve.points.reserve(series.samples.size());
  for (const auto& s : series.samples)
    curve.points.push_back({s.displacement / geometry.height, 4.0 * s.load / area_factor});
  return curve;
}

std::string curve_csv(const StressStrainCurve& curve) {
  std::string out = "strain,stress_Pa\n";
  char buf[32];
  for (const auto& p : curve.points) {
    auto e = std::to_chars(buf, buf + sizeof buf, p.strain).ptr;
    out.append(buf, e) += ',';
    e = std::to_chars(buf, buf + sizeof buf, p.stress).ptr;
    out.append(buf, e) += '\n';
  }
  return out;
}

nlohmann::json to_json(const StressStrainCurve& curve) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : curve.points) points.push_back({p.strain, p.stress});
  return {{"pillar_id", curve.geometry.pillar_id},
          {"diameter_top_m", curve.geometry.diameter_top},
          {"height_m", curve.geometry.height},
          {"source_dataset", curve.source_dataset.str()},
          {"points", points}};
}

}  // namespace rdm
