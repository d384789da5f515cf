#include "rdm/extract/fixtures.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <numbers>

#include "rdm/error.hpp"
#include "rdm/extract/sem_table.hpp"
#include "rdm/previews/png.hpp"

namespace rdm {

namespace {

std::string number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

Bytes demo_image(const UnifiedSemMetadata& m) {
  std::size_t w = 64, h = 48;
  if (m.image_width_px && m.image_height_px && *m.image_width_px >= 1 &&
      *m.image_height_px >= 1 && *m.image_width_px <= 4096 && *m.image_height_px <= 4096) {
    w = static_cast<std::size_t>(*m.image_width_px);
    h = static_cast<std::size_t>(*m.image_height_px);
  }
  RgbImage img(w, h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      const auto g = static_cast<std::uint8_t>((x * 255 / std::max<std::size_t>(1, w - 1) +
                                                y * 64 / std::max<std::size_t>(1, h)) & 0xFF);
      img.put(y, x, {g, g, g});
    }
  return encode_png(img);
}

std::optional<std::int64_t> scan_rows(const UnifiedSemMetadata& m) {
  if (m.databar_rows && m.image_height_px && *m.databar_rows <= *m.image_height_px)
    return *m.image_height_px - *m.databar_rows;
  return std::nullopt;
}

struct HumanUnit {
  SemField field;
  const char* unit;
  double factor;
};

constexpr HumanUnit kHumanUnits[] = {
    {SemField::AccelerationVoltage, "kV", 1e3}, {SemField::DwellTime, "µs", 1e-6},
    {SemField::StageX, "mm", 1e-3},             {SemField::StageY, "mm", 1e-3},
    {SemField::StageZ, "mm", 1e-3},             {SemField::StageRotation, "deg", std::numbers::pi / 180},
    {SemField::WorkingDistance, "mm", 1e-3},    {SemField::PixelSize, "nm", 1e-9},
    {SemField::BeamCurrent, "nA", 1e-9},        {SemField::FrameTime, "s", 1.0},
    {SemField::LineTime, "ms", 1e-3},           {SemField::ChamberPressure, "mbar", 1e2},
    {SemField::SystemVacuum, "mbar", 1e2},      {SemField::GunVacuum, "mbar", 1e2},
};

void put_u16(Bytes& out, std::uint16_t v) {
  out.push_back(std::uint8_t(v));
  out.push_back(std::uint8_t(v >> 8));
}

void put_record(Bytes& out, const std::string& key, double value) {
  put_u16(out, static_cast<std::uint16_t>(key.size()));
  out.insert(out.end(), key.begin(), key.end());
  out.push_back(0x01);
  put_u16(out, 8);
  const auto bits = std::bit_cast<std::uint64_t>(value);
  for (int i = 0; i < 8; ++i) out.push_back(std::uint8_t(bits >> (8 * i)));
}

void put_record(Bytes& out, const std::string& key, std::uint32_t value) {
  put_u16(out, static_cast<std::uint16_t>(key.size()));
  out.insert(out.end(), key.begin(), key.end());
  out.push_back(0x02);
  put_u16(out, 4);
  for (int i = 0; i < 4; ++i) out.push_back(std::uint8_t(value >> (8 * i)));
}

}  // namespace

std::vector<SemField> representable_fields(VendorFormat vendor) {
  std::vector<SemField> out;
  for (const auto& row : sem_table())
    if (cell(row, vendor).kind == VendorCell::Kind::Key) out.push_back(row.field);
  out.push_back(SemField::ImageWidthPx);
  out.push_back(SemField::ImageHeightPx);
  if (std::find(out.begin(), out.end(), SemField::DatabarRows) == out.end())
    out.push_back(SemField::DatabarRows);
  return out;
}

Bytes write_vendor_a(const UnifiedSemMetadata& m, const FixtureOptions& options) {
  std::string text;
  for (const auto& row : sem_table()) {
    const auto& c = cell(row, VendorFormat::VendorA);
    const auto v = get(m, row.field);
    if (c.kind != VendorCell::Kind::Key || !v) continue;
    const auto& fi = info(row.field);
    std::string unit(fi.unit.empty() ? "x" : fi.unit);
    double shown = *v;
    if (options.human_units)
      for (const auto& h : kHumanUnits)
        if (h.field == row.field) {
          unit = h.unit;
          shown = *v / h.factor;
        }
    text += std::string(c.key) + " = " + number(shown) + " " + unit + "\n";
  }
  const auto g = geometry_keys(VendorFormat::VendorA);
  if (m.image_width_px)
    text += std::string(g.image_width) + " = " + std::to_string(*m.image_width_px) + " px\n";
  if (m.image_height_px)
    text += std::string(g.image_height) + " = " + std::to_string(*m.image_height_px) + " px\n";
  if (auto rows = scan_rows(m))
    text += std::string(g.scan_rows) + " = " + std::to_string(*rows) + " px\n";
  for (const auto& [k, v] : options.extra_entries) text += k + " = " + number(v) + "\n";

  Bytes out(kMagicA, kMagicA + 8);
  const auto len = static_cast<std::uint32_t>(text.size());
  for (int i = 0; i < 4; ++i) out.push_back(std::uint8_t(len >> (8 * i)));
  out.insert(out.end(), text.begin(), text.end());
  if (options.embed_image) {
    const auto png = demo_image(m);
    out.insert(out.end(), png.begin(), png.end());
  }
  return out;
}

Bytes write_vendor_b(const UnifiedSemMetadata& m, const FixtureOptions& options) {
  Bytes out(kMagicB, kMagicB + 8);
  for (const auto& row : sem_table()) {
    const auto& c = cell(row, VendorFormat::VendorB);
    const auto v = get(m, row.field);
    if (c.kind != VendorCell::Kind::Key || !v) continue;
    if (info(row.field).is_count)
      put_record(out, std::string(c.key), static_cast<std::uint32_t>(*v));
    else
      put_record(out, std::string(c.key), *v);
  }
  const auto g = geometry_keys(VendorFormat::VendorB);
  if (m.image_width_px)
    put_record(out, std::string(g.image_width), static_cast<std::uint32_t>(*m.image_width_px));
  if (m.image_height_px)
    put_record(out, std::string(g.image_height), static_cast<std::uint32_t>(*m.image_height_px));
  for (const auto& [k, v] : options.extra_entries) put_record(out, k, v);
  put_u16(out, 0);
  if (options.embed_image) {
    const auto png = demo_image(m);
    out.insert(out.end(), png.begin(), png.end());
  }
  return out;
}

Bytes write_vendor_c(const UnifiedSemMetadata& m, const FixtureOptions& options) {
  std::vector<std::string> order;
  std::map<std::string, std::string> sections;
  auto emit = [&](std::string_view dotted, const std::string& value) {
    auto dot = dotted.find('.');
    std::string section = dot == std::string_view::npos ? "Misc" : std::string(dotted.substr(0, dot));
    std::string key(dot == std::string_view::npos ? dotted : dotted.substr(dot + 1));
    if (!sections.contains(section)) order.push_back(section);
    sections[section] += key + "=" + value + "\n";
  };
  for (const auto& row : sem_table()) {
    const auto& c = cell(row, VendorFormat::VendorC);
    const auto v = get(m, row.field);
    if (c.kind != VendorCell::Kind::Key || !v) continue;
    // The section-less beam current key is filed under [Beam].
    const std::string dotted =
        c.key.find('.') == std::string_view::npos ? "Beam." + std::string(c.key) : std::string(c.key);
    emit(dotted, number(*v));
  }
  const auto g = geometry_keys(VendorFormat::VendorC);
  if (m.image_width_px) emit(g.image_width, std::to_string(*m.image_width_px));
  if (m.image_height_px) emit(g.image_height, std::to_string(*m.image_height_px));
  if (auto rows = scan_rows(m)) emit(g.scan_rows, std::to_string(*rows));
  for (const auto& [k, v] : options.extra_entries) emit(k, number(v));

  std::string text = "[System]\nType=SEM\n";
  for (const auto& s : order) text += "[" + s + "]\n" + sections[s];
  return to_bytes(text);
}

Bytes write_vendor(VendorFormat vendor, const UnifiedSemMetadata& m,
                   const FixtureOptions& options) {
  switch (vendor) {
    case VendorFormat::VendorA: return write_vendor_a(m, options);
    case VendorFormat::VendorB: return write_vendor_b(m, options);
    case VendorFormat::VendorC: return write_vendor_c(m, options);
    case VendorFormat::Unknown: break;
  }
  fail(ErrorCode::Domain, "no writer for unknown vendor");
}

UnifiedSemMetadata demo_sem_metadata() {
  UnifiedSemMetadata m;
  m.acceleration_voltage = 20000.0;
  m.dwell_time = 1e-6;
  m.stage_x = 0.0412;
  m.stage_y = 0.0385;
  m.stage_z = 0.0301;
  m.stage_rotation = 0.0;
  m.working_distance = 0.0101;
  m.pixel_size = 1e-7;
  m.emission_current = 1.0e-4;
  m.beam_current = 1e-9;
  m.frame_time = 20.0;
  m.line_time = 0.026;
  m.magnification = 1000.0;
  m.chamber_pressure = 0.0023;
  m.system_vacuum = 0.0011;
  m.gun_vacuum = 2e-7;
  m.image_width_px = 1270;
  m.image_height_px = 884;
  m.databar_rows = 116;
  return m;
}

}  // namespace rdm
