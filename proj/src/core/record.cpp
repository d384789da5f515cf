#include "rdm/core/record.hpp"

namespace rdm {

namespace {

nlohmann::json id_list(const std::set<PermId>& ids) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& id : ids) out.push_back(id.str());
  return out;
}

std::set<PermId> id_set(const nlohmann::json& j, const char* key) {
  std::set<PermId> out;
  if (j.contains(key))
    for (const auto& v : j.at(key)) out.insert(PermId(v.get<std::string>()));
  return out;
}

}  // namespace

nlohmann::json to_json(const ObjectRecord& r) {
  nlohmann::json props = nlohmann::json::object();
  for (const auto& [k, v] : r.properties) props[k] = v;
  return {{"perm_id", r.perm_id.str()},
          {"type_name", r.type_name},
          {"properties", props},
          {"parents", id_list(r.parents)},
          {"children", id_list(r.children)},
          {"space", r.space},
          {"registered_at", format_timestamp(r.registered_at)}};
}

ObjectRecord object_from_json(const nlohmann::json& j) {
  ObjectRecord r;
  if (auto id = j.value("perm_id", std::string{}); !id.empty()) r.perm_id = PermId(id);
  r.type_name = j.at("type_name").get<std::string>();
  if (j.contains("properties"))
    for (const auto& [k, v] : j.at("properties").items()) r.properties[k] = v;
  r.parents = id_set(j, "parents");
  r.children = id_set(j, "children");
  r.space = j.value("space", std::string{});
  if (auto at = j.value("registered_at", std::string{}); !at.empty())
    r.registered_at = parse_timestamp(at);
  return r;
}

nlohmann::json to_json(const AuditEntry& e) {
  return {{"at", format_timestamp(e.at)},
          {"actor", e.actor},
          {"property", e.property},
          {"old", e.old_value},
          {"new", e.new_value}};
}

}  // namespace rdm
