#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rdm/core/vocabulary.hpp"

namespace rdm {

enum class ValueKind {
  Text,
  Real,
  Integer,
  Date,        // "YYYY-MM-DD"
  Vocabulary,  // term code of PropertyDefinition::vocabulary
  Spreadsheet, // CSV text, first line is the header
  Boolean,
  RealVector,  // fixed arity, entries >= 0
  ElementMap,  // element symbol -> atomic percent, sums to 100
  TextSet,
};

std::string_view to_string(ValueKind kind) noexcept;

struct PropertyDefinition {
  std::string name;
  ValueKind kind = ValueKind::Text;
  std::string vocabulary;           // only for ValueKind::Vocabulary
  std::optional<std::string> unit;  // canonical SI label
  std::size_t arity = 0;            // only for ValueKind::RealVector
};

struct ObjectTypeSchema {
  std::string type_name;
  std::string label;
  std::vector<PropertyDefinition> properties;
  std::set<std::string> required_property_names;

  const PropertyDefinition* find(std::string_view name) const noexcept;
};

using SchemaMap = std::map<std::string, ObjectTypeSchema, std::less<>>;

// Throws Error{Validation} when property names repeat, a required name is not
// declared, or a vocabulary property points at an unknown vocabulary.
void check_schema(const ObjectTypeSchema& schema, const VocabularyMap& vocabularies);

namespace types {
inline constexpr std::string_view kSample = "SAMPLE";
inline constexpr std::string_view kProtocol = "PROTOCOL";
inline constexpr std::string_view kPreparationStep = "PREPARATION_STEP";
inline constexpr std::string_view kDevice = "DEVICE";
inline constexpr std::string_view kEntry = "ENTRY";
inline constexpr std::string_view kPreparationExp = "PREPARATION_EXP";
inline constexpr std::string_view kMicroMechExp = "MICRO_MECH_EXP";
}  // namespace types

SchemaMap builtin_schemas();

}  // namespace rdm
