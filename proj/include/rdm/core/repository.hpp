#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "rdm/core/record.hpp"
#include "rdm/core/schema.hpp"
#include "rdm/core/validation.hpp"
#include "rdm/core/vocabulary.hpp"
#include "rdm/store/dataset.hpp"

namespace rdm {

using ObjectPtr = std::shared_ptr<const ObjectRecord>;
using DatasetPtr = std::shared_ptr<const DatasetRecord>;

// Immutable view of the repository at one instant. Records are shared, never
// copied, and safe to hand across threads.
struct RepositorySnapshot {
  std::map<PermId, ObjectPtr> objects;
  std::map<PermId, DatasetPtr> datasets;
  std::map<PermId, std::vector<PermId>> datasets_by_owner;
  VocabularyMap vocabularies;

  ObjectPtr object(const PermId& id) const;
  DatasetPtr dataset(const PermId& id) const;
  std::vector<DatasetPtr> datasets_of(const PermId& owner) const;
};

struct RepositoryOptions {
  // Append-only journal; none keeps the repository in memory only.
  std::optional<std::filesystem::path> journal;
  Clock clock = system_now;
  std::string default_actor = "system";
};

inline constexpr std::string_view kJournalFormat = "rdm-journal";
inline constexpr int kJournalVersion = 1;

// Typed object repository. Many concurrent readers; writes are serialized and
// each one is a single journal line, applied to the index only after it hits
// the journal.
class Repository {
 public:
  explicit Repository(RepositoryOptions options = {});
  ~Repository();

  Repository(const Repository&) = delete;
  Repository& operator=(const Repository&) = delete;

  const SchemaMap& schemas() const noexcept { return schemas_; }
  const ObjectTypeSchema& schema(std::string_view type_name) const;
  VocabularyMap vocabularies() const;
  ControlledVocabulary vocabulary(std::string_view name) const;
  void add_vocabulary_term(std::string_view vocabulary_name, VocabularyTerm term);

  ValidationReport validate(const ObjectRecord& record) const;

  // Creates (empty perm_id or unknown id) or updates a record. parents and
  // children in `record` are added as links. The identity and type of an
  // existing record never change. Throws ValidationError, Error{Cycle},
  // Error{NotFound} (linked id) or Error{SchemaNotFound}.
  PermId put_object(ObjectRecord record, std::string_view actor = {});

  ObjectPtr get_object(const PermId& id) const;  // Error{NotFound}
  ObjectPtr find_object(const PermId& id) const;
  std::vector<ObjectPtr> objects(std::string_view type_name = {}) const;
  bool contains(const PermId& id) const;

  // Throws Error{Cycle} for a self-link or a link closing a cycle; the
  // repository is unchanged in that case. Re-linking is a no-op.
  void link(const PermId& parent, const PermId& child);

  std::set<PermId> ancestors(const PermId& id) const;
  std::set<PermId> descendants(const PermId& id) const;
  std::vector<AuditEntry> audit_trail(const PermId& id) const;

  // Registers a dataset under its owner entry in one journal line. Mints
  // dataset_id when empty. Throws Error{NotFound} or Error{Vocab}.
  DatasetPtr put_dataset(DatasetRecord record);
  void set_preview(const PermId& dataset_id, const BlobRef& preview);
  DatasetPtr get_dataset(const PermId& id) const;  // Error{NotFound}
  DatasetPtr find_dataset(const PermId& id) const;
  std::vector<DatasetPtr> datasets_of(const PermId& owner) const;
  std::vector<DatasetPtr> datasets() const;

  RepositorySnapshot snapshot() const;

  // Warnings produced while replaying the journal (e.g. a torn final line).
  const std::vector<std::string>& replay_warnings() const noexcept { return replay_warnings_; }
  const std::optional<std::filesystem::path>& journal_path() const noexcept {
    return options_.journal;
  }

 private:
  struct State;

  PermId mint_locked();
  void append_journal(const nlohmann::json& line);
  void replay();
  void apply(const nlohmann::json& line, bool from_journal);
  bool reaches(const PermId& from, const PermId& to,
               const std::multimap<PermId, PermId>& pending) const;

  RepositoryOptions options_;
  SchemaMap schemas_;
  std::unique_ptr<State> state_;
  mutable std::shared_mutex state_mutex_;
  std::mutex write_mutex_;
  std::ofstream journal_out_;
  std::vector<std::string> replay_warnings_;
};

}  // namespace rdm
