#include "rdm/service/workbench.hpp"

#include "rdm/error.hpp"
#include "rdm/previews/thumbnail.hpp"

namespace rdm {
namespace {

RepositoryOptions repo_options(const WorkbenchConfig& c) {
  RepositoryOptions o;
  if (!c.journal.empty()) o.journal = c.journal;
  o.clock = c.clock;
  o.default_actor = c.actor;
  return o;
}

std::optional<std::filesystem::path> lock_path(const WorkbenchConfig& c) {
  if (c.journal.empty()) return std::nullopt;
  return std::filesystem::path(c.journal.string() + ".lock");
}

}  // namespace

Workbench::Workbench(WorkbenchConfig config)
    : config_(std::move(config)),
      repo_(repo_options(config_)),
      store_(BlobStore::on_filesystem(config_.blob_root)),
      scheduler_(repo_, store_, lock_path(config_)) {}

PermId Workbench::create_object(ObjectRecord record) {
  return repo_.put_object(std::move(record), config_.actor);
}

void Workbench::link(const PermId& parent, const PermId& child) { repo_.link(parent, child); }

DatasetPtr Workbench::ingest(const PermId& entry, ByteView bytes, std::string_view dataset_type,
                             std::optional<VendorFormat> parser, std::string original_filename) {
  auto d = register_linked_dataset(repo_, store_, entry, bytes, dataset_type, parser,
                                   std::move(original_filename));
  std::optional<Bytes> png;
  try {
    png = make_preview(bytes, dataset_type, d->vendor);
  } catch (const Error&) {
    // A file we cannot render still registers; it just has no preview.
  }
  if (png) {
    repo_.set_preview(d->dataset_id, store_.put_blob(*png));
    d = repo_.get_dataset(d->dataset_id);
  }
  return d;
}

std::optional<Bytes> Workbench::preview(const PermId& dataset_id) const {
  auto d = repo_.get_dataset(dataset_id);
  if (!d->preview) return std::nullopt;
  return store_.get_blob(*d->preview);
}

ObjectRecord object_from_request(const nlohmann::json& body) {
  if (!body.is_object()) fail(ErrorCode::Parse, "object body must be a JSON object");
  try {
    ObjectRecord r;
    r.type_name = body.contains("type_name") ? body.at("type_name").get<std::string>()
                                             : body.at("type").get<std::string>();
    if (auto id = body.value("perm_id", std::string()); !id.empty()) r.perm_id = PermId(id);
    if (auto p = body.find("properties"); p != body.end() && !p->is_null()) {
      if (!p->is_object()) fail(ErrorCode::Parse, "properties must be an object");
      for (const auto& [k, v] : p->items()) r.properties[k] = v;
    }
    for (const auto& id : body.value("parents", nlohmann::json::array()))
      r.parents.insert(PermId(id.get<std::string>()));
    for (const auto& id : body.value("children", nlohmann::json::array()))
      r.children.insert(PermId(id.get<std::string>()));
    r.space = body.value("space", "");
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("object body: ") + e.what());
  }
}

std::optional<VendorFormat> parser_choice(std::string_view name, ByteView bytes) {
  if (name == "none" || name.empty()) return std::nullopt;
  if (name == "auto") {
    auto v = detect_format(bytes);
    return v == VendorFormat::Unknown ? std::nullopt : std::optional(v);
  }
  if (auto v = vendor_from_string(name); v && *v != VendorFormat::Unknown) return v;
  fail(ErrorCode::InvalidArgument,
       "format must be vendorA, vendorB, vendorC, auto or none, got '" + std::string(name) + "'");
}

}  // namespace rdm
