#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rdm/core/perm_id.hpp"
#include "rdm/extract/raw.hpp"
#include "rdm/extract/unified.hpp"
#include "rdm/extract/vendor.hpp"
#include "rdm/store/blob_store.hpp"
#include "rdm/time.hpp"

namespace rdm {

// A registered file. The bytes stay in the blob store; the repository keeps
// this link plus the extracted metadata. owner_entry is the dataset's parent.
struct DatasetRecord {
  PermId dataset_id;
  PermId owner_entry;
  std::string dataset_type;  // DATASET_TYPE term code
  BlobRef blob;
  std::string original_filename;
  VendorFormat vendor = VendorFormat::Unknown;
  std::optional<UnifiedSemMetadata> unified_metadata;
  std::optional<RawKeyValues> raw_metadata;
  std::optional<BlobRef> preview;  // PNG
  Timestamp registered_at{};
  std::vector<std::string> warnings;
  // Set on workflow outputs: hash of (entry, workflow, input blob hashes).
  std::string derivation_key;

  bool operator==(const DatasetRecord&) const = default;
};

nlohmann::json to_json(const DatasetRecord& d);
DatasetRecord dataset_from_json(const nlohmann::json& j);

}  // namespace rdm
