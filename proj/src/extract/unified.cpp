#include "rdm/extract/unified.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "rdm/error.hpp"

namespace rdm {

namespace {

using U = UnifiedSemMetadata;

constexpr SemFieldInfo real(SemField f, std::string_view name, std::string_view unit,
                            std::optional<double> U::*member, bool negative = false) {
  return {f, name, unit, false, negative, member, nullptr};
}

constexpr SemFieldInfo count(SemField f, std::string_view name,
                             std::optional<std::int64_t> U::*member) {
  return {f, name, "px", true, false, nullptr, member};
}

constexpr std::array<SemFieldInfo, kSemFieldCount> kFields = {{
    real(SemField::AccelerationVoltage, "acceleration_voltage", "V", &U::acceleration_voltage),
    real(SemField::DwellTime, "dwell_time", "s", &U::dwell_time),
    real(SemField::StageX, "stage_x", "m", &U::stage_x, true),
    real(SemField::StageY, "stage_y", "m", &U::stage_y, true),
    real(SemField::StageZ, "stage_z", "m", &U::stage_z, true),
    real(SemField::StageRotation, "stage_rotation", "rad", &U::stage_rotation, true),
    real(SemField::WorkingDistance, "working_distance", "m", &U::working_distance),
    real(SemField::PixelSize, "pixel_size", "m", &U::pixel_size),
    real(SemField::EmissionCurrent, "emission_current", "A", &U::emission_current),
    real(SemField::BeamCurrent, "beam_current", "A", &U::beam_current),
    real(SemField::FrameTime, "frame_time", "s", &U::frame_time),
    real(SemField::LineTime, "line_time", "s", &U::line_time),
    real(SemField::Magnification, "magnification", "", &U::magnification),
    real(SemField::ChamberPressure, "chamber_pressure", "Pa", &U::chamber_pressure),
    real(SemField::SystemVacuum, "system_vacuum", "Pa", &U::system_vacuum),
    real(SemField::GunVacuum, "gun_vacuum", "Pa", &U::gun_vacuum),
    count(SemField::DatabarRows, "databar_rows", &U::databar_rows),
    count(SemField::ImageWidthPx, "image_width_px", &U::image_width_px),
    count(SemField::ImageHeightPx, "image_height_px", &U::image_height_px),
}};

}  // namespace

std::span<const SemFieldInfo> sem_fields() noexcept { return kFields; }

const SemFieldInfo& info(SemField field) noexcept {
  return kFields[static_cast<std::size_t>(field)];
}

const SemFieldInfo* find_sem_field(std::string_view name) noexcept {
  for (const auto& f : kFields)
    if (f.name == name) return &f;
  return nullptr;
}

std::optional<double> get(const UnifiedSemMetadata& m, SemField field) noexcept {
  const auto& fi = info(field);
  if (fi.is_count) {
    const auto& v = m.*(fi.count);
    return v ? std::optional<double>(static_cast<double>(*v)) : std::nullopt;
  }
  return m.*(fi.real);
}

void set(UnifiedSemMetadata& m, SemField field, double value) {
  const auto& fi = info(field);
  if (fi.is_count) {
    if (!(value >= 0) || std::floor(value) != value || value > 9.0e15)
      fail(ErrorCode::Domain, std::string(fi.name) + " must be a non-negative whole number");
    m.*(fi.count) = static_cast<std::int64_t>(value);
  } else {
    m.*(fi.real) = value;
  }
}

void clear(UnifiedSemMetadata& m, SemField field) noexcept {
  const auto& fi = info(field);
  if (fi.is_count)
    m.*(fi.count) = std::nullopt;
  else
    m.*(fi.real) = std::nullopt;
}

nlohmann::json to_json(const UnifiedSemMetadata& m) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& f : kFields) {
    if (f.is_count) {
      if (const auto& v = m.*(f.count)) out[std::string(f.name)] = *v;
    } else if (const auto& v = m.*(f.real)) {
      out[std::string(f.name)] = *v;
    }
  }
  if (!m.ontology_iri.empty()) out["ontology_iri"] = m.ontology_iri;
  return out;
}

UnifiedSemMetadata unified_from_json(const nlohmann::json& j) {
  UnifiedSemMetadata m;
  for (const auto& f : kFields) {
    auto it = j.find(std::string(f.name));
    if (it == j.end() || it->is_null()) continue;
    if (f.is_count)
      m.*(f.count) = it->get<std::int64_t>();
    else
      m.*(f.real) = it->get<double>();
  }
  if (j.contains("ontology_iri"))
    m.ontology_iri = j.at("ontology_iri").get<std::map<std::string, std::string>>();
  return m;
}

std::string format_field(const UnifiedSemMetadata& m, SemField field) {
  auto v = get(m, field);
  if (!v) return {};
  const auto& fi = info(field);
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, *v);
  std::string out(buf, end);
  if (!fi.unit.empty()) out += " " + std::string(fi.unit);
  return out;
}

}  // namespace rdm
