#include <cmath>
#include <cstring>
#include <string>

#include "rdm/error.hpp"
#include "rdm/extract/parsers.hpp"
#include "rdm/extract/sem_table.hpp"
#include "rdm/extract/units.hpp"

namespace rdm {

namespace detail {
std::size_t vendor_b_payload_offset(ByteView bytes);
}

namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

bool starts_with_png(ByteView b) {
  return b.size() >= 8 && std::memcmp(b.data(), kPngSignature, 8) == 0;
}

bool key_matches(std::string_view cell_key, std::string_view raw_key, VendorFormat vendor) {
  if (cell_key == raw_key) return true;
  // Section-less keys of the INI vendor match under any section.
  if (vendor == VendorFormat::VendorC && cell_key.find('.') == std::string_view::npos) {
    auto dot = raw_key.rfind('.');
    return dot != std::string_view::npos && raw_key.substr(dot + 1) == cell_key;
  }
  return false;
}

enum class Target { None, Field, ScanRows };

struct Match {
  Target target = Target::None;
  SemField field{};
};

Match classify(std::string_view key, VendorFormat vendor) {
  for (const auto& row : sem_table()) {
    const auto& c = cell(row, vendor);
    if (c.kind == VendorCell::Kind::Key && key_matches(c.key, key, vendor))
      return {Target::Field, row.field};
  }
  const auto g = geometry_keys(vendor);
  if (key == g.image_width) return {Target::Field, SemField::ImageWidthPx};
  if (key == g.image_height) return {Target::Field, SemField::ImageHeightPx};
  if (!g.scan_rows.empty() && key == g.scan_rows) return {Target::ScanRows, {}};
  return {};
}

bool is_computed(SemField field, VendorFormat vendor) {
  for (const auto& row : sem_table())
    if (row.field == field && cell(row, vendor).kind == VendorCell::Kind::Computed) return true;
  return false;
}

// Converts a raw value into the canonical unit of `fi`, or explains why not.
std::optional<double> canonical_value(const RawEntry& e, const SemFieldInfo& fi,
                                      VendorFormat vendor, Warnings& warnings) {
  auto number = as_number(e.value);
  if (!number) {
    warnings.push_back("'" + e.key + "' is not numeric, kept in raw only");
    return std::nullopt;
  }
  double value = *number;
  if (vendor == VendorFormat::VendorA && e.declared_unit) {
    auto f = unit_factor(*e.declared_unit);
    const auto want = dimension_of_label(fi.unit);
    if (!f || (f->dimension != want &&
               !(want == Dimension::Count && f->dimension == Dimension::Dimensionless))) {
      warnings.push_back("'" + e.key + "' has unit '" + *e.declared_unit +
                         "' incompatible with " + std::string(fi.name));
      return std::nullopt;
    }
    value = normalize(value, *e.declared_unit);
  } else if (vendor == VendorFormat::VendorA && !fi.is_count && !fi.unit.empty()) {
    warnings.push_back("'" + e.key + "' has no unit, taken as " + std::string(fi.unit));
  }
  if (!std::isfinite(value)) {
    warnings.push_back("'" + e.key + "' is not finite, dropped");
    return std::nullopt;
  }
  if (value < 0 && !fi.may_be_negative) {
    warnings.push_back("'" + e.key + "' is negative, dropped");
    return std::nullopt;
  }
  if (fi.is_count && std::floor(value) != value) {
    warnings.push_back("'" + e.key + "' is not a whole number, dropped");
    return std::nullopt;
  }
  return value;
}

}  // namespace

std::optional<ByteView> embedded_image(ByteView bytes, VendorFormat vendor) {
  std::size_t offset = 0;
  if (vendor == VendorFormat::VendorA) {
    if (bytes.size() < 12) return std::nullopt;
    const std::uint32_t length = std::uint32_t(bytes[8]) | std::uint32_t(bytes[9]) << 8 |
                                 std::uint32_t(bytes[10]) << 16 | std::uint32_t(bytes[11]) << 24;
    if (length > bytes.size() - 12) return std::nullopt;
    offset = 12 + length;
  } else if (vendor == VendorFormat::VendorB) {
    try {
      offset = detail::vendor_b_payload_offset(bytes);
    } catch (const Error&) {
      return std::nullopt;
    }
  } else {
    return std::nullopt;
  }
  auto payload = bytes.subspan(offset);
  if (!starts_with_png(payload)) return std::nullopt;
  return payload;
}

double compute_magnification(double pixel_size, std::int64_t image_width_px) {
  if (!(pixel_size > 0) || !std::isfinite(pixel_size) || image_width_px < 1)
    fail(ErrorCode::Domain, "magnification needs pixel_size > 0 and image width >= 1");
  return kReferenceDisplayWidth / (pixel_size * static_cast<double>(image_width_px));
}

std::int64_t compute_databar_rows(std::int64_t image_height_px, std::int64_t scan_rows) {
  if (scan_rows < 0 || image_height_px < scan_rows)
    fail(ErrorCode::Domain, "scan rows (" + std::to_string(scan_rows) +
                                ") must lie within the image height (" +
                                std::to_string(image_height_px) + ")");
  return image_height_px - scan_rows;
}

UnifiedSemMetadata map_to_unified(const RawKeyValues& raw, VendorFormat vendor,
                                  Warnings& warnings) {
  if (vendor == VendorFormat::Unknown) fail(ErrorCode::Domain, "no mapping for unknown vendor");
  UnifiedSemMetadata out;
  std::optional<std::int64_t> scan_rows;

  for (const auto& e : raw.entries) {
    const auto match = classify(e.key, vendor);
    if (match.target == Target::None) {
      warnings.push_back("unmapped key '" + e.key + "' kept in raw only");
      continue;
    }
    if (match.target == Target::ScanRows) {
      static constexpr SemFieldInfo kRows{SemField::ImageHeightPx, "scan_rows", "px", true, false};
      if (auto v = canonical_value(e, kRows, vendor, warnings))
        scan_rows = static_cast<std::int64_t>(*v);
      continue;
    }
    const auto& fi = info(match.field);
    if (auto v = canonical_value(e, fi, vendor, warnings)) set(out, match.field, *v);
  }

  if (is_computed(SemField::Magnification, vendor) && out.pixel_size && out.image_width_px) {
    try {
      out.magnification = compute_magnification(*out.pixel_size, *out.image_width_px);
    } catch (const Error& err) {
      warnings.push_back(std::string("magnification not computed: ") + err.what());
    }
  }
  if (is_computed(SemField::DatabarRows, vendor) && out.image_height_px && scan_rows) {
    try {
      out.databar_rows = compute_databar_rows(*out.image_height_px, *scan_rows);
    } catch (const Error& err) {
      warnings.push_back(std::string("databar not computed: ") + err.what());
    }
  }
  if (out.databar_rows && out.image_height_px && *out.databar_rows > *out.image_height_px) {
    warnings.push_back("databar taller than the image, dropped");
    out.databar_rows.reset();
  }

  for (const auto& row : sem_table())
    if (!row.ontology_iri.empty() && get(out, row.field))
      out.ontology_iri[std::string(info(row.field).name)] = std::string(row.ontology_iri);
  return out;
}

ParseResult parse_file(ByteView bytes, VendorFormat vendor) {
  if (vendor == VendorFormat::Unknown) fail(ErrorCode::Parse, "no parser for unknown format");
  if (detect_format(bytes) != vendor)
    fail(ErrorCode::Parse, "file does not carry the " + std::string(to_string(vendor)) +
                               " signature");
  ParseResult result;
  result.vendor = vendor;
  switch (vendor) {
    case VendorFormat::VendorA: result.raw = parse_vendor_a(bytes, result.warnings); break;
    case VendorFormat::VendorB: result.raw = parse_vendor_b(bytes, result.warnings); break;
    case VendorFormat::VendorC: result.raw = parse_vendor_c(bytes, result.warnings); break;
    case VendorFormat::Unknown: break;
  }
  result.unified = map_to_unified(result.raw, vendor, result.warnings);
  return result;
}

ParseResult extract_metadata(ByteView bytes) { return parse_file(bytes, detect_format(bytes)); }

}  // namespace rdm
