#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rdm/core/repository.hpp"
#include "rdm/store/blob_store.hpp"

namespace rdm {

inline constexpr std::string_view kStressStrainWorkflow = "stress_strain";
inline constexpr std::string_view kPrepReportWorkflow = "prep_report";

struct JobOutcome {
  PermId entry;
  std::string workflow_name;
  std::vector<PermId> produced_datasets;
  bool skipped = false;
  std::string reason;  // "up to date", "missing input: ...", "failed: ..."

  bool operator==(const JobOutcome&) const = default;
};

nlohmann::json to_json(const JobOutcome& outcome);

// Runs workflows whose outputs are missing. Outputs carry a derivation key
// hashed from (entry, workflow, inputs); a job whose key is already present on
// the entry is skipped, so a second tick produces nothing.
class Scheduler {
 public:
  // `lock_file`, when set, is held with flock() for the duration of a tick so
  // that only one process schedules at a time.
  Scheduler(Repository& repo, BlobStore& store,
            std::optional<std::filesystem::path> lock_file = std::nullopt);

  // Throws Error{Busy} if another tick holds the lock; otherwise never throws
  // for per-entry problems, which land in JobOutcome::reason.
  std::vector<JobOutcome> tick();

  // Error{NotFound} for an unknown entry; Error{InvalidArgument} when the
  // entry is not a MICRO_MECH_EXP.
  JobOutcome run_stress_strain(const PermId& entry);
  // Any entry type with PREPARATION_STEP children qualifies.
  JobOutcome run_prep_report(const PermId& entry);

 private:
  Repository& repo_;
  BlobStore& store_;
  std::optional<std::filesystem::path> lock_file_;
};

}  // namespace rdm
