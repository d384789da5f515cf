#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace rdm {

using RawValue = std::variant<double, std::int64_t, std::string>;

struct RawEntry {
  std::string key;  // verbatim as found in the file
  RawValue value;
  std::optional<std::string> declared_unit;

  bool operator==(const RawEntry&) const = default;
};

// File order is preserved.
struct RawKeyValues {
  std::vector<RawEntry> entries;

  const RawEntry* find(std::string_view key) const noexcept;
  bool operator==(const RawKeyValues&) const = default;
};

std::optional<double> as_number(const RawValue& v) noexcept;

nlohmann::json to_json(const RawKeyValues& raw);
RawKeyValues raw_from_json(const nlohmann::json& j);

}  // namespace rdm
