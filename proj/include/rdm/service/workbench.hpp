#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rdm/core/repository.hpp"
#include "rdm/extract/vendor.hpp"
#include "rdm/store/blob_store.hpp"
#include "rdm/store/registration.hpp"
#include "rdm/workflows/scheduler.hpp"

namespace rdm {

struct WorkbenchConfig {
  std::filesystem::path journal;    // empty: in-memory repository
  std::filesystem::path blob_root;  // required
  Clock clock = system_now;
  std::string actor = "system";
};

// Repository, blob store and scheduler wired together; the CLI and the HTTP
// API both drive this class so that they leave identical journals.
class Workbench {
 public:
  explicit Workbench(WorkbenchConfig config);

  Repository& repo() noexcept { return repo_; }
  const Repository& repo() const noexcept { return repo_; }
  BlobStore& store() noexcept { return store_; }
  Scheduler& scheduler() noexcept { return scheduler_; }
  const WorkbenchConfig& config() const noexcept { return config_; }

  PermId create_object(ObjectRecord record);
  void link(const PermId& parent, const PermId& child);

  // Registers the file and attaches a PNG preview when one can be made.
  DatasetPtr ingest(const PermId& entry, ByteView bytes, std::string_view dataset_type,
                    std::optional<VendorFormat> parser, std::string original_filename);

  // PNG preview bytes of a dataset; nullopt when it has none.
  std::optional<Bytes> preview(const PermId& dataset_id) const;

 private:
  WorkbenchConfig config_;
  Repository repo_;
  BlobStore store_;
  Scheduler scheduler_;
};

// Object body accepted by POST /objects and `object create --json`:
// {"type_name", "properties", "parents", "children", "space", "perm_id"}; only
// type_name is required. Throws Error{Parse}.
ObjectRecord object_from_request(const nlohmann::json& body);

// Parses the format names accepted by `ingest` and POST /datasets: vendorA,
// vendorB, vendorC, auto (detect from bytes) and none. Throws
// Error{InvalidArgument}.
std::optional<VendorFormat> parser_choice(std::string_view name, ByteView bytes);

}  // namespace rdm
