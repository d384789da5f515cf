#include "rdm/extract/raw.hpp"

#include <algorithm>

namespace rdm {

const RawEntry* RawKeyValues::find(std::string_view key) const noexcept {
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const RawEntry& e) { return e.key == key; });
  return it == entries.end() ? nullptr : &*it;
}

std::optional<double> as_number(const RawValue& v) noexcept {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  return std::nullopt;
}

nlohmann::json to_json(const RawKeyValues& raw) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : raw.entries) {
    nlohmann::json item = {{"key", e.key}};
    std::visit([&](const auto& v) { item["value"] = v; }, e.value);
    if (e.declared_unit) item["unit"] = *e.declared_unit;
    out.push_back(std::move(item));
  }
  return out;
}

RawKeyValues raw_from_json(const nlohmann::json& j) {
  RawKeyValues raw;
  for (const auto& item : j) {
    RawEntry e{item.at("key").get<std::string>(), 0.0, std::nullopt};
    const auto& v = item.at("value");
    if (v.is_number_integer())
      e.value = v.get<std::int64_t>();
    else if (v.is_number())
      e.value = v.get<double>();
    else
      e.value = v.get<std::string>();
    if (item.contains("unit")) e.declared_unit = item.at("unit").get<std::string>();
    raw.entries.push_back(std::move(e));
  }
  return raw;
}

}  // namespace rdm
