#include "rdm/core/schema.hpp"

#include <algorithm>

#include "rdm/error.hpp"

namespace rdm {

std::string_view to_string(ValueKind kind) noexcept {
  switch (kind) {
    case ValueKind::Text: return "text";
    case ValueKind::Real: return "real";
    case ValueKind::Integer: return "integer";
    case ValueKind::Date: return "date";
    case ValueKind::Vocabulary: return "vocabulary";
    case ValueKind::Spreadsheet: return "spreadsheet";
    case ValueKind::Boolean: return "boolean";
    case ValueKind::RealVector: return "real_vector";
    case ValueKind::ElementMap: return "element_map";
    case ValueKind::TextSet: return "text_set";
  }
  return "?";
}

const PropertyDefinition* ObjectTypeSchema::find(std::string_view name) const noexcept {
  auto it = std::find_if(properties.begin(), properties.end(),
                         [&](const PropertyDefinition& p) { return p.name == name; });
  return it == properties.end() ? nullptr : &*it;
}

void check_schema(const ObjectTypeSchema& schema, const VocabularyMap& vocabularies) {
  std::set<std::string_view> seen;
  for (const auto& p : schema.properties) {
    if (!seen.insert(p.name).second)
      fail(ErrorCode::Validation, schema.type_name + ": duplicate property " + p.name);
    if (p.kind == ValueKind::Vocabulary && !vocabularies.contains(p.vocabulary))
      fail(ErrorCode::Validation,
           schema.type_name + "." + p.name + ": unknown vocabulary " + p.vocabulary);
  }
  for (const auto& r : schema.required_property_names)
    if (!schema.find(r))
      fail(ErrorCode::Validation, schema.type_name + ": required property " + r +
                                      " is not declared");
}

namespace {

PropertyDefinition text(std::string name) { return {std::move(name), ValueKind::Text}; }

PropertyDefinition real(std::string name, std::string unit) {
  return {std::move(name), ValueKind::Real, {}, std::move(unit)};
}

PropertyDefinition term(std::string name, std::string_view vocabulary) {
  return {std::move(name), ValueKind::Vocabulary, std::string(vocabulary)};
}

}  // namespace

SchemaMap builtin_schemas() {
  std::vector<ObjectTypeSchema> all = {
      // Experimental and computational samples share one type; fields a
      // simulation cannot provide are simply not required.
      {std::string(types::kSample),
       "Sample",
       {text("name"),
        term("sample_category", vocab::kSampleType),
        {"dimensions_mm", ValueKind::RealVector, {}, "mm", 3},
        text("location"),
        {"composition", ValueKind::ElementMap, {}, "at.%"},
        {"defect_tags", ValueKind::TextSet},
        {"is_computational", ValueKind::Boolean},
        text("description")},
       {"location", "dimensions_mm"}},
      {std::string(types::kProtocol),
       "Protocol",
       {text("name"), term("technique", vocab::kExperimentTechnique), text("description")},
       {"name"}},
      {std::string(types::kPreparationStep),
       "Preparation Step",
       {{"sequence_index", ValueKind::Integer},
        text("protocol_name"),
        text("abrasive"),
        text("lubricant"),
        real("duration", "s"),
        text("notes")},
       {"sequence_index", "protocol_name"}},
      {std::string(types::kDevice),
       "Device",
       {text("name"), text("model"), text("manufacturer"), text("location")},
       {"model"}},
      {std::string(types::kEntry),
       "Entry",
       {text("title"), term("technique", vocab::kExperimentTechnique), {"date", ValueKind::Date},
        text("description")},
       {"title"}},
      {std::string(types::kPreparationExp),
       "Preparation Exp",
       {text("title"), term("technique", vocab::kExperimentTechnique), {"date", ValueKind::Date},
        text("description")},
       {"title"}},
      {std::string(types::kMicroMechExp),
       "Micro Mech Exp",
       {text("title"), term("technique", vocab::kExperimentTechnique), {"date", ValueKind::Date},
        {"pillar_geometry", ValueKind::Spreadsheet}, real("temperature", "K"),
        text("description")},
       {"title"}},
  };
  SchemaMap out;
  for (auto& s : all) out.emplace(s.type_name, std::move(s));
  return out;
}

}  // namespace rdm
