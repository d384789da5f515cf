#pragma once

#include <map>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "rdm/core/perm_id.hpp"
#include "rdm/time.hpp"

namespace rdm {

// A typed entity: sample, protocol, device, or experiment entry. Property
// values are JSON so that each schema kind keeps its natural shape.
struct ObjectRecord {
  PermId perm_id;
  std::string type_name;
  std::map<std::string, nlohmann::json> properties;
  std::set<PermId> parents;
  std::set<PermId> children;
  std::string space;
  Timestamp registered_at{};

  bool operator==(const ObjectRecord&) const = default;
};

nlohmann::json to_json(const ObjectRecord& r);
ObjectRecord object_from_json(const nlohmann::json& j);

// One immutable change of a mutable property, kept append-only.
struct AuditEntry {
  Timestamp at{};
  std::string actor;
  std::string property;
  nlohmann::json old_value;
  nlohmann::json new_value;

  bool operator==(const AuditEntry&) const = default;
};

nlohmann::json to_json(const AuditEntry& e);

}  // namespace rdm
