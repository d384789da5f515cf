#include "rdm/store/registration.hpp"

#include "rdm/error.hpp"
#include "rdm/extract/parsers.hpp"

namespace rdm {

DatasetPtr register_linked_dataset(Repository& repo, BlobStore& store, const PermId& owner_entry,
                                   ByteView bytes, std::string_view dataset_type,
                                   std::optional<VendorFormat> parser_choice,
                                   std::string original_filename, std::string derivation_key) {
  if (!repo.find_object(owner_entry))
    fail(ErrorCode::NotFound, "entry " + owner_entry.str() + " not found");
  if (!repo.vocabulary(vocab::kDatasetType).contains(dataset_type))
    fail(ErrorCode::Vocab, "'" + std::string(dataset_type) + "' is not a dataset type");

  DatasetRecord record;
  record.owner_entry = owner_entry;
  record.dataset_type = std::string(dataset_type);
  record.original_filename = std::move(original_filename);
  record.derivation_key = std::move(derivation_key);
  record.vendor = detect_format(bytes);
  if (parser_choice && *parser_choice != VendorFormat::Unknown) {
    try {
      ParseResult parsed = parse_file(bytes, *parser_choice);
      record.vendor = parsed.vendor;
      record.raw_metadata = std::move(parsed.raw);
      record.unified_metadata = std::move(parsed.unified);
      record.warnings = std::move(parsed.warnings);
    } catch (const Error& e) {
      record.warnings.push_back(std::string(to_string(*parser_choice)) + " parser failed (" +
                                std::string(to_string(e.code())) + "): " + e.what() +
                                "; registered without metadata");
    }
  }
  record.blob = store.put_blob(bytes);
  return repo.put_dataset(std::move(record));
}

StoreCheckReport check_store(const Repository& repo, const BlobStore& store) {
  StoreCheckReport report;
  for (const auto& d : repo.datasets()) {
    ++report.datasets_checked;
    std::vector<BlobRef> refs{d->blob};
    if (d->preview) refs.push_back(*d->preview);
    for (const auto& ref : refs) {
      ++report.blobs_checked;
      try {
        store.get_blob(ref);
      } catch (const Error& e) {
        report.issues.push_back({d->dataset_id, ref.content_hash,
                                 e.code() == ErrorCode::NotFound ? "missing" : "corrupt",
                                 e.what()});
      }
    }
  }
  return report;
}

std::vector<BlobRef> collect_orphans(const Repository& repo, BlobStore& store) {
  std::set<std::string> keep;
  for (const auto& d : repo.datasets()) {
    keep.insert(d->blob.content_hash);
    if (d->preview) keep.insert(d->preview->content_hash);
  }
  return store.collect_garbage(keep);
}

nlohmann::json to_json(const StoreCheckReport& report) {
  nlohmann::json issues = nlohmann::json::array();
  for (const auto& i : report.issues)
    issues.push_back({{"dataset", i.dataset_id.str()},
                      {"content_hash", i.content_hash},
                      {"problem", i.problem},
                      {"detail", i.detail}});
  return {{"ok", report.ok()},
          {"datasets_checked", report.datasets_checked},
          {"blobs_checked", report.blobs_checked},
          {"issues", issues}};
}

}  // namespace rdm
