#include "rdm/previews/ebsd.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

#include "rdm/error.hpp"

namespace rdm {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::optional<double> to_double(std::string_view token) {
  double v = 0;
  auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || p != token.data() + token.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

[[noreturn]] void syntax(std::size_t line_no, const std::string& what) {
  fail(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

EbsdMap parse_ang(std::string_view text) {
  std::optional<double> cols, rows, step;
  EbsdMap map;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_done = false;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (header_done) syntax(line_no, "header line after data");
      auto body = trim(line.substr(1));
      auto sep = body.find_first_of(" \t:=");
      if (sep == std::string_view::npos) continue;
      const auto key = body.substr(0, sep);
      auto value = trim(body.substr(sep));
      while (!value.empty() && (value.front() == ':' || value.front() == '='))
        value = trim(value.substr(1));
      std::optional<double>* slot = key == "NCOLS"  ? &cols
                                    : key == "NROWS" ? &rows
                                    : key == "STEP"  ? &step
                                                     : nullptr;
      if (!slot) continue;
      *slot = to_double(value);
      if (!*slot) syntax(line_no, "header " + std::string(key) + " is not numeric");
      continue;
    }
    if (!header_done) {
      if (!cols || !rows || !step) fail(ErrorCode::Header, "missing NCOLS, NROWS or STEP header");
      if (*cols < 0 || *rows < 0 || std::floor(*cols) != *cols || std::floor(*rows) != *rows)
        fail(ErrorCode::Header, "NCOLS and NROWS must be whole numbers");
      header_done = true;
    }
    double v[7];
    std::size_t n = 0;
    std::size_t p = 0;
    while (p < line.size()) {
      while (p < line.size() && (line[p] == ' ' || line[p] == '\t')) ++p;
      if (p >= line.size()) break;
      auto q = line.find_first_of(" \t", p);
      if (q == std::string_view::npos) q = line.size();
      if (n == 7) syntax(line_no, "more than 7 columns");
      auto d = to_double(line.substr(p, q - p));
      if (!d) syntax(line_no, "'" + std::string(line.substr(p, q - p)) + "' is not a number");
      v[n++] = *d;
      p = q;
    }
    if (n != 7) syntax(line_no, "expected 7 columns, found " + std::to_string(n));
    if (v[5] < 0) syntax(line_no, "quality must be >= 0");
    if (v[6] < 0 || std::floor(v[6]) != v[6]) syntax(line_no, "phase must be a whole number");
    map.cells.push_back({{v[0], v[1], v[2]}, v[5], static_cast<std::uint32_t>(v[6])});
  }
  if (!cols || !rows || !step) fail(ErrorCode::Header, "missing NCOLS, NROWS or STEP header");
  map.n_cols = static_cast<std::size_t>(*cols);
  map.n_rows = static_cast<std::size_t>(*rows);
  map.step = *step;
  if (map.cells.size() != map.n_cols * map.n_rows)
    fail(ErrorCode::Shape, "grid is " + std::to_string(map.n_cols) + "x" +
                               std::to_string(map.n_rows) + " but file has " +
                               std::to_string(map.cells.size()) + " rows");
  return map;
}

std::string write_ang(const EbsdMap& map) {
  std::ostringstream out;
  out.precision(17);
  out << "# NCOLS: " << map.n_cols << "\n# NROWS: " << map.n_rows << "\n# STEP: " << map.step
      << "\n";
  for (std::size_t i = 0; i < map.cells.size(); ++i) {
    const auto& c = map.cells[i];
    const double x = double(i % (map.n_cols ? map.n_cols : 1)) * map.step;
    const double y = double(i / (map.n_cols ? map.n_cols : 1)) * map.step;
    out << c.orientation.phi1 << ' ' << c.orientation.Phi << ' ' << c.orientation.phi2 << ' '
        << x << ' ' << y << ' ' << c.quality << ' ' << c.phase_id << '\n';
  }
  return out.str();
}

}  // namespace rdm
