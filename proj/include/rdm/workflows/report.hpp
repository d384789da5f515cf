#pragma once

#include <string>
#include <vector>

#include "rdm/core/repository.hpp"
#include "rdm/store/blob_store.hpp"

namespace rdm {

struct ReportTable {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> warnings;

  bool operator==(const ReportTable&) const = default;
};

inline const std::vector<std::string> kPrepReportColumns = {"Step", "Protocol", "Abrasive",
                                                            "Lubricant", "Duration"};

// PREPARATION_STEP children of `entry`, ordered by sequence_index (ties by
// perm id, with a warning). Throws Error{NotFound} for an unknown entry.
ReportTable prep_report(const RepositorySnapshot& snap, const PermId& entry);
ReportTable prep_report(const Repository& repo, const PermId& entry);

std::string render_html(const ReportTable& table);
std::string render_text(const ReportTable& table);
nlohmann::json to_json(const ReportTable& table);

// Registers the HTML and plain-text renderings as DERIVED_FIGURE datasets of
// `entry`.
std::vector<DatasetPtr> attach_report(Repository& repo, BlobStore& store, const PermId& entry,
                                      const ReportTable& table,
                                      const std::string& derivation_key = {});

}  // namespace rdm
