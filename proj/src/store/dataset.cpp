#include "rdm/store/dataset.hpp"

namespace rdm {

nlohmann::json to_json(const DatasetRecord& d) {
  nlohmann::json j = {{"dataset_id", d.dataset_id.str()},
                      {"owner_entry", d.owner_entry.str()},
                      {"dataset_type", d.dataset_type},
                      {"blob", to_json(d.blob)},
                      {"original_filename", d.original_filename},
                      {"vendor", std::string(to_string(d.vendor))},
                      {"registered_at", format_timestamp(d.registered_at)},
                      {"warnings", d.warnings}};
  if (d.unified_metadata) j["unified_metadata"] = to_json(*d.unified_metadata);
  if (d.raw_metadata) j["raw_metadata"] = to_json(*d.raw_metadata);
  if (d.preview) j["preview"] = to_json(*d.preview);
  if (!d.derivation_key.empty()) j["derivation_key"] = d.derivation_key;
  return j;
}

DatasetRecord dataset_from_json(const nlohmann::json& j) {
  DatasetRecord d;
  if (auto id = j.value("dataset_id", std::string{}); !id.empty()) d.dataset_id = PermId(id);
  d.owner_entry = PermId(j.at("owner_entry").get<std::string>());
  d.dataset_type = j.at("dataset_type").get<std::string>();
  d.blob = blob_ref_from_json(j.at("blob"));
  d.original_filename = j.value("original_filename", std::string{});
  d.vendor = vendor_from_string(j.value("vendor", std::string{"unknown"}))
                 .value_or(VendorFormat::Unknown);
  if (auto at = j.value("registered_at", std::string{}); !at.empty())
    d.registered_at = parse_timestamp(at);
  d.warnings = j.value("warnings", std::vector<std::string>{});
  if (j.contains("unified_metadata")) d.unified_metadata = unified_from_json(j.at("unified_metadata"));
  if (j.contains("raw_metadata")) d.raw_metadata = raw_from_json(j.at("raw_metadata"));
  if (j.contains("preview")) d.preview = blob_ref_from_json(j.at("preview"));
  d.derivation_key = j.value("derivation_key", std::string{});
  return d;
}

}  // namespace rdm
