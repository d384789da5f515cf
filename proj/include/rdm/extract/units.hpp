#pragma once

#include <optional>
#include <string_view>

namespace rdm {

enum class Dimension { Voltage, Time, Length, Current, Pressure, Angle, Dimensionless, Count };

struct UnitFactor {
  double factor;  // multiply by this to reach the SI base unit
  Dimension dimension;
};

// Recognized unit suffixes of the text vendor format, e.g. "kV", "µs", "mbar".
std::optional<UnitFactor> unit_factor(std::string_view unit) noexcept;

// value * factor(unit); throws Error{Domain} for an unrecognized unit.
double normalize(double value, std::string_view unit);

// Dimension implied by a canonical unified-field unit label ("V", "s", ...).
Dimension dimension_of_label(std::string_view canonical_unit) noexcept;

}  // namespace rdm
