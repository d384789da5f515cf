#include "rdm/extract/units.hpp"

#include <array>
#include <numbers>
#include <string>

#include "rdm/error.hpp"

namespace rdm {

namespace {

struct UnitRow {
  std::string_view symbol;
  UnitFactor factor;
};

constexpr double kDegree = std::numbers::pi / 180.0;

// "µ" appears both as MICRO SIGN (U+00B5) and GREEK SMALL LETTER MU (U+03BC).
constexpr std::array<UnitRow, 34> kUnits = {{
    {"V", {1.0, Dimension::Voltage}},
    {"kV", {1e3, Dimension::Voltage}},
    {"mV", {1e-3, Dimension::Voltage}},
    {"s", {1.0, Dimension::Time}},
    {"ms", {1e-3, Dimension::Time}},
    {"µs", {1e-6, Dimension::Time}},
    {"μs", {1e-6, Dimension::Time}},
    {"us", {1e-6, Dimension::Time}},
    {"ns", {1e-9, Dimension::Time}},
    {"m", {1.0, Dimension::Length}},
    {"mm", {1e-3, Dimension::Length}},
    {"µm", {1e-6, Dimension::Length}},
    {"μm", {1e-6, Dimension::Length}},
    {"um", {1e-6, Dimension::Length}},
    {"nm", {1e-9, Dimension::Length}},
    {"pm", {1e-12, Dimension::Length}},
    {"A", {1.0, Dimension::Current}},
    {"mA", {1e-3, Dimension::Current}},
    {"µA", {1e-6, Dimension::Current}},
    {"μA", {1e-6, Dimension::Current}},
    {"uA", {1e-6, Dimension::Current}},
    {"nA", {1e-9, Dimension::Current}},
    {"pA", {1e-12, Dimension::Current}},
    {"Pa", {1.0, Dimension::Pressure}},
    {"hPa", {1e2, Dimension::Pressure}},
    {"mbar", {1e2, Dimension::Pressure}},
    {"bar", {1e5, Dimension::Pressure}},
    {"rad", {1.0, Dimension::Angle}},
    {"deg", {kDegree, Dimension::Angle}},
    {"°", {kDegree, Dimension::Angle}},
    {"x", {1.0, Dimension::Dimensionless}},
    {"X", {1.0, Dimension::Dimensionless}},
    {"", {1.0, Dimension::Dimensionless}},
    {"px", {1.0, Dimension::Count}},
}};

}  // namespace

std::optional<UnitFactor> unit_factor(std::string_view unit) noexcept {
  for (const auto& row : kUnits)
    if (row.symbol == unit) return row.factor;
  return std::nullopt;
}

double normalize(double value, std::string_view unit) {
  auto f = unit_factor(unit);
  if (!f) fail(ErrorCode::Domain, "unrecognized unit '" + std::string(unit) + "'");
  return value * f->factor;
}

Dimension dimension_of_label(std::string_view u) noexcept {
  if (u == "V") return Dimension::Voltage;
  if (u == "s") return Dimension::Time;
  if (u == "m") return Dimension::Length;
  if (u == "A") return Dimension::Current;
  if (u == "Pa") return Dimension::Pressure;
  if (u == "rad") return Dimension::Angle;
  if (u == "px") return Dimension::Count;
  return Dimension::Dimensionless;
}

}  // namespace rdm
