#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace rdm {

// Harmonized superset of SEM acquisition fields, canonical SI units.
struct UnifiedSemMetadata {
  std::optional<double> acceleration_voltage;  // V
  std::optional<double> dwell_time;            // s
  std::optional<double> stage_x;               // m
  std::optional<double> stage_y;               // m
  std::optional<double> stage_z;               // m
  std::optional<double> stage_rotation;        // rad
  std::optional<double> working_distance;      // m
  std::optional<double> pixel_size;            // m
  std::optional<double> emission_current;      // A
  std::optional<double> beam_current;          // A
  std::optional<double> frame_time;            // s
  std::optional<double> line_time;             // s
  std::optional<double> magnification;         // 1
  std::optional<double> chamber_pressure;      // Pa
  std::optional<double> system_vacuum;         // Pa
  std::optional<double> gun_vacuum;            // Pa
  std::optional<std::int64_t> databar_rows;
  std::optional<std::int64_t> image_width_px;
  std::optional<std::int64_t> image_height_px;
  std::map<std::string, std::string> ontology_iri;  // field name -> IRI

  bool operator==(const UnifiedSemMetadata&) const = default;
};

enum class SemField {
  AccelerationVoltage,
  DwellTime,
  StageX,
  StageY,
  StageZ,
  StageRotation,
  WorkingDistance,
  PixelSize,
  EmissionCurrent,
  BeamCurrent,
  FrameTime,
  LineTime,
  Magnification,
  ChamberPressure,
  SystemVacuum,
  GunVacuum,
  DatabarRows,
  ImageWidthPx,
  ImageHeightPx,
};

inline constexpr std::size_t kSemFieldCount = 19;

struct SemFieldInfo {
  SemField field;
  std::string_view name;  // snake_case field name used in JSON
  std::string_view unit;  // canonical unit label; "" for dimensionless, "px" for counts
  bool is_count;
  bool may_be_negative;
  std::optional<double> UnifiedSemMetadata::*real = nullptr;
  std::optional<std::int64_t> UnifiedSemMetadata::*count = nullptr;
};

std::span<const SemFieldInfo> sem_fields() noexcept;
const SemFieldInfo& info(SemField field) noexcept;
const SemFieldInfo* find_sem_field(std::string_view name) noexcept;

// Value of a field as double, or nullopt when absent.
std::optional<double> get(const UnifiedSemMetadata& m, SemField field) noexcept;
void set(UnifiedSemMetadata& m, SemField field, double value);
void clear(UnifiedSemMetadata& m, SemField field) noexcept;

nlohmann::json to_json(const UnifiedSemMetadata& m);
UnifiedSemMetadata unified_from_json(const nlohmann::json& j);

// Human-readable "20000 V" style rendering of a present field.
std::string format_field(const UnifiedSemMetadata& m, SemField field);

}  // namespace rdm
