#include "rdm/workflows/load_data.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include "rdm/error.hpp"

namespace rdm {
namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto comma = line.find(',', pos);
    out.push_back(strip(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double number(std::string_view field, std::size_t line_no, std::string_view column) {
  double v = 0;
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || end != field.data() + field.size())
    fail(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": " + std::string(column) +
                                " is not a number: '" + std::string(field) + "'");
  if (!std::isfinite(v))
    fail(ErrorCode::Domain, "line " + std::to_string(line_no) + ": " + std::string(column) +
                                " is not finite");
  return v;
}

// Returns the data lines with their 1-based numbers after checking the header.
std::vector<std::pair<std::size_t, std::string_view>> data_lines(std::string_view text,
                                                                 std::string_view header) {
  auto lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && strip(lines[i]).empty()) ++i;
  if (i == lines.size() || strip(lines[i]) != header)
    fail(ErrorCode::Header, "expected CSV header '" + std::string(header) + "'");
  std::vector<std::pair<std::size_t, std::string_view>> out;
  for (++i; i < lines.size(); ++i)
    if (!strip(lines[i]).empty()) out.emplace_back(i + 1, lines[i]);
  return out;
}

std::string shortest(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

void check_series(const LoadDisplacementSeries& series) {
  for (std::size_t i = 0; i < series.samples.size(); ++i) {
    const auto& s = series.samples[i];
    if (!std::isfinite(s.time) || !std::isfinite(s.displacement) || !std::isfinite(s.load))
      fail(ErrorCode::Domain, "sample " + std::to_string(i) + " is not finite");
    if (i > 0 && !(s.time > series.samples[i - 1].time))
      fail(ErrorCode::Domain, "time is not strictly increasing at sample " + std::to_string(i));
  }
}

LoadDisplacementSeries parse_load_csv(std::string_view text) {
  LoadDisplacementSeries series;
  for (const auto& [line_no, line] : data_lines(text, kLoadCsvHeader)) {
    auto f = split_fields(line);
    if (f.size() != 3)
      fail(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": expected 3 fields, got " +
                                  std::to_string(f.size()));
    const double t = number(f[0], line_no, "time_s");
    const double u = number(f[1], line_no, "displacement_nm") * 1e-9;
    const double p = number(f[2], line_no, "load_mN") * 1e-3;
    if (!series.samples.empty() && !(t > series.samples.back().time))
      fail(ErrorCode::Domain,
           "line " + std::to_string(line_no) + ": time is not strictly increasing");
    series.samples.push_back({t, u, p});
  }
  return series;
}

std::vector<PillarGeometry> parse_geometry_csv(std::string_view text) {
  std::vector<PillarGeometry> out;
  std::set<std::string> seen;
  for (const auto& [line_no, line] : data_lines(text, kGeometryCsvHeader)) {
    auto f = split_fields(line);
    if (f.size() != 3)
      fail(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": expected 3 fields, got " +
                                  std::to_string(f.size()));
    if (f[0].empty()) fail(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": empty pillar_id");
    PillarGeometry g{std::string(f[0]), number(f[1], line_no, "diameter_top_um") * 1e-6,
                     number(f[2], line_no, "height_um") * 1e-6};
    if (!(g.diameter_top > 0) || !(g.height > 0))
      fail(ErrorCode::Domain, "line " + std::to_string(line_no) + ": pillar " + g.pillar_id +
                                  " needs positive diameter and height");
    if (!seen.insert(g.pillar_id).second)
      fail(ErrorCode::Domain, "line " + std::to_string(line_no) + ": duplicate pillar " + g.pillar_id);
    out.push_back(std::move(g));
  }
  return out;
}

std::string write_load_csv(const LoadDisplacementSeries& series) {
  std::string out(kLoadCsvHeader);
  out += '\n';
  for (const auto& s : series.samples)
    out += shortest(s.time) + "," + shortest(s.displacement * 1e9) + "," + shortest(s.load * 1e3) +
           "\n";
  return out;
}

std::string write_geometry_csv(const std::vector<PillarGeometry>& pillars) {
  std::string out(kGeometryCsvHeader);
  out += '\n';
  for (const auto& p : pillars)
    out += p.pillar_id + "," + shortest(p.diameter_top * 1e6) + "," + shortest(p.height * 1e6) + "\n";
  return out;
}

}  // namespace rdm
