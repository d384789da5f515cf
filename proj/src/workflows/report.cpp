#include "rdm/workflows/report.hpp"

#include <algorithm>
#include <tuple>

#include "rdm/error.hpp"
#include "rdm/graph/provenance.hpp"
#include "rdm/store/registration.hpp"

namespace rdm {
namespace {

std::string text_of(const ObjectRecord& r, const std::string& name) {
  auto it = r.properties.find(name);
  if (it == r.properties.end() || it->second.is_null()) return {};
  if (it->second.is_string()) return it->second.get<std::string>();
  if (it->second.is_number_integer()) return std::to_string(it->second.get<std::int64_t>());
  if (it->second.is_number()) return format_number(it->second.get<double>());
  return it->second.dump();
}

std::string html_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Display width in code points, so that "µ" counts once.
std::size_t display_width(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

}  // namespace

ReportTable prep_report(const RepositorySnapshot& snap, const PermId& entry) {
  auto e = snap.object(entry);
  if (!e) fail(ErrorCode::NotFound, "entry " + entry.str() + " not found");

  std::vector<std::tuple<std::int64_t, PermId, ObjectPtr>> steps;
  for (const auto& c : e->children) {
    auto r = snap.object(c);
    if (!r || r->type_name != types::kPreparationStep) continue;
    auto idx = r->properties.find("sequence_index");
    const std::int64_t i =
        idx != r->properties.end() && idx->second.is_number() ? idx->second.get<std::int64_t>() : 0;
    steps.emplace_back(i, c, r);
  }
  std::sort(steps.begin(), steps.end(),
            [](const auto& a, const auto& b) { return std::tie(std::get<0>(a), std::get<1>(a)) <
                                                      std::tie(std::get<0>(b), std::get<1>(b)); });

  ReportTable t;
  const std::string title = text_of(*e, "title");
  t.title = "Preparation report: " + (title.empty() ? entry.str() : title);
  t.columns = kPrepReportColumns;
  if (steps.empty()) t.warnings.push_back("entry " + entry.str() + " has no preparation steps");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& [idx, id, r] = steps[i];
    if (i > 0 && std::get<0>(steps[i - 1]) == idx)
      t.warnings.push_back("sequence_index " + std::to_string(idx) + " is used more than once");
    const std::string duration = text_of(*r, "duration");
    t.rows.push_back({std::to_string(idx), text_of(*r, "protocol_name"), text_of(*r, "abrasive"),
                      text_of(*r, "lubricant"), duration.empty() ? "" : duration + " s"});
  }
  return t;
}

ReportTable prep_report(const Repository& repo, const PermId& entry) {
  return prep_report(repo.snapshot(), entry);
}

std::string render_html(const ReportTable& t) {
  std::string out = "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>" +
                    html_escape(t.title) +
                    "</title>\n<style>table{border-collapse:collapse}td,th{border:1px solid #999;"
                    "padding:4px 8px}</style></head>\n<body>\n<h1>" +
                    html_escape(t.title) + "</h1>\n<table>\n<tr>";
  for (const auto& c : t.columns) out += "<th>" + html_escape(c) + "</th>";
  out += "</tr>\n";
  for (const auto& row : t.rows) {
    out += "<tr>";
    for (const auto& cell : row) out += "<td>" + html_escape(cell) + "</td>";
    out += "</tr>\n";
  }
  out += "</table>\n";
  for (const auto& w : t.warnings) out += "<p class=\"warning\">" + html_escape(w) + "</p>\n";
  return out + "</body></html>\n";
}

std::string render_text(const ReportTable& t) {
  std::vector<std::size_t> widths;
  for (const auto& c : t.columns) widths.push_back(display_width(c));
  for (const auto& row : t.rows)
    for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i)
      widths[i] = std::max(widths[i], display_width(row[i]));
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += " | ";
      out += cells[i];
      if (i + 1 < cells.size()) out.append(widths[i] - display_width(cells[i]), ' ');
    }
    return out + "\n";
  };
  std::string out = t.title + "\n\n" + line(t.columns);
  std::size_t rule = 0;
  for (auto w : widths) rule += w;
  out += std::string(rule + 3 * (widths.empty() ? 0 : widths.size() - 1), '-') + "\n";
  for (const auto& row : t.rows) out += line(row);
  for (const auto& w : t.warnings) out += "warning: " + w + "\n";
  return out;
}

nlohmann::json to_json(const ReportTable& t) {
  return {{"title", t.title}, {"columns", t.columns}, {"rows", t.rows}, {"warnings", t.warnings}};
}

std::vector<DatasetPtr> attach_report(Repository& repo, BlobStore& store, const PermId& entry,
                                      const ReportTable& table, const std::string& derivation_key) {
  const std::string html = render_html(table), text = render_text(table);
  return {register_linked_dataset(repo, store, entry, to_bytes(html), "DERIVED_FIGURE",
                                  std::nullopt, "prep_report.html", derivation_key),
          register_linked_dataset(repo, store, entry, to_bytes(text), "DERIVED_FIGURE",
                                  std::nullopt, "prep_report.txt", derivation_key)};
}

}  // namespace rdm
