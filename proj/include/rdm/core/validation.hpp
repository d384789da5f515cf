#pragma once

#include <string>
#include <vector>

#include "rdm/core/record.hpp"
#include "rdm/core/schema.hpp"
#include "rdm/error.hpp"

namespace rdm {

namespace rule {
inline constexpr const char* kRequired = "REQUIRED";
inline constexpr const char* kUnknownProperty = "UNKNOWN_PROPERTY";
inline constexpr const char* kType = "TYPE";
inline constexpr const char* kVocabularyTerm = "VOCAB_TERM";
inline constexpr const char* kSum100 = "SUM_100";
inline constexpr const char* kElementSymbol = "ELEMENT_SYMBOL";
inline constexpr const char* kNegative = "NEGATIVE";
inline constexpr const char* kArity = "ARITY";
}  // namespace rule

struct Violation {
  std::string property_name;
  std::string rule_id;
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(std::string_view property, std::string_view rule_id) const noexcept;
};

nlohmann::json to_json(const ValidationReport& report);

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

// Absolute tolerance on |sum(composition) - 100|.
inline constexpr double kCompositionTolerance = 1e-6;

ValidationReport validate_object(const ObjectRecord& record, const ObjectTypeSchema& schema,
                                 const VocabularyMap& vocabularies);

// Looks the schema up by record.type_name; throws Error{SchemaNotFound}.
ValidationReport validate_object(const ObjectRecord& record, const SchemaMap& schemas,
                                 const VocabularyMap& vocabularies);

}  // namespace rdm
