#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdm/bytes.hpp"
#include "rdm/core/repository.hpp"
#include "rdm/extract/vendor.hpp"
#include "rdm/store/blob_store.hpp"

namespace rdm {

// Stores `bytes`, optionally extracts metadata with the chosen parser, and
// records the dataset under `owner_entry`. A failing parser only adds a
// warning. Throws Error{NotFound} for an unknown owner and Error{Vocab} for an
// unknown dataset type, before anything is stored.
DatasetPtr register_linked_dataset(Repository& repo, BlobStore& store, const PermId& owner_entry,
                                   ByteView bytes, std::string_view dataset_type,
                                   std::optional<VendorFormat> parser_choice,
                                   std::string original_filename = {},
                                   std::string derivation_key = {});

struct StoreIssue {
  PermId dataset_id;
  std::string content_hash;
  std::string problem;  // "missing" or "corrupt"
  std::string detail;
};

struct StoreCheckReport {
  std::size_t datasets_checked = 0;
  std::size_t blobs_checked = 0;
  std::vector<StoreIssue> issues;

  bool ok() const noexcept { return issues.empty(); }
};

// Verifies every blob and preview referenced by a dataset record.
StoreCheckReport check_store(const Repository& repo, const BlobStore& store);

// Removes blobs no dataset refers to.
std::vector<BlobRef> collect_orphans(const Repository& repo, BlobStore& store);

nlohmann::json to_json(const StoreCheckReport& report);

}  // namespace rdm
