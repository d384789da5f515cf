#include "rdm/core/validation.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "rdm/core/elements.hpp"

namespace rdm {

bool ValidationReport::has(std::string_view property, std::string_view rule_id) const noexcept {
  for (const auto& v : violations)
    if (v.property_name == property && v.rule_id == rule_id) return true;
  return false;
}

nlohmann::json to_json(const ValidationReport& report) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& v : report.violations)
    list.push_back({{"property", v.property_name}, {"rule", v.rule_id}, {"message", v.message}});
  return {{"ok", report.ok()}, {"violations", list}};
}

namespace {

std::string summarize(const ValidationReport& report) {
  std::string msg = "validation failed:";
  for (const auto& v : report.violations) msg += " [" + v.property_name + " " + v.rule_id + "]";
  return msg;
}

bool is_date(const std::string& s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  try {
    parse_timestamp(s + "T00:00:00.000Z");
    return true;
  } catch (const Error&) {
    return false;
  }
}

bool is_finite_number(const nlohmann::json& v) {
  return v.is_number() && std::isfinite(v.get<double>());
}

class Checker {
 public:
  Checker(const VocabularyMap& vocabularies, ValidationReport& report)
      : vocabularies_(vocabularies), report_(report) {}

  void check(const PropertyDefinition& def, const nlohmann::json& value) {
    const std::string& name = def.name;
    switch (def.kind) {
      case ValueKind::Text:
      case ValueKind::Spreadsheet:
        if (!value.is_string()) add(name, rule::kType, "expected text");
        break;
      case ValueKind::Real:
        if (!is_finite_number(value))
          add(name, rule::kType, "expected a finite real number");
        else if (def.unit && value.get<double>() < 0)
          // Every unit-bearing scalar (s, K) is an absolute quantity.
          add(name, rule::kNegative, "value must be >= 0 " + *def.unit);
        break;
      case ValueKind::Integer:
        if (!value.is_number_integer()) add(name, rule::kType, "expected an integer");
        break;
      case ValueKind::Date:
        if (!value.is_string() || !is_date(value.get<std::string>()))
          add(name, rule::kType, "expected a date YYYY-MM-DD");
        break;
      case ValueKind::Boolean:
        if (!value.is_boolean()) add(name, rule::kType, "expected true or false");
        break;
      case ValueKind::Vocabulary: check_term(def, value); break;
      case ValueKind::RealVector: check_vector(def, value); break;
      case ValueKind::ElementMap: check_composition(def, value); break;
      case ValueKind::TextSet: {
        if (!value.is_array()) {
          add(name, rule::kType, "expected a list of text");
          break;
        }
        std::set<std::string> seen;
        for (const auto& v : value)
          if (!v.is_string() || !seen.insert(v.get<std::string>()).second) {
            add(name, rule::kType, "expected distinct text items");
            break;
          }
        break;
      }
    }
  }

 private:
  void add(const std::string& property, const char* rule_id, std::string message) {
    report_.violations.push_back({property, rule_id, std::move(message)});
  }

  void check_term(const PropertyDefinition& def, const nlohmann::json& value) {
    auto vocab = vocabularies_.find(def.vocabulary);
    if (!value.is_string()) {
      add(def.name, rule::kType, "expected a term code");
    } else if (vocab == vocabularies_.end() || !vocab->second.contains(value.get<std::string>())) {
      add(def.name, rule::kVocabularyTerm,
          "'" + value.get<std::string>() + "' is not a term of " + def.vocabulary);
    }
  }

  void check_vector(const PropertyDefinition& def, const nlohmann::json& value) {
    if (!value.is_array()) {
      add(def.name, rule::kType, "expected a list of reals");
      return;
    }
    if (value.size() != def.arity)
      add(def.name, rule::kArity, "expected " + std::to_string(def.arity) + " values");
    for (const auto& v : value) {
      if (!is_finite_number(v)) {
        add(def.name, rule::kType, "expected finite reals");
        return;
      }
      if (v.get<double>() < 0) {
        add(def.name, rule::kNegative, "values must be >= 0");
        return;
      }
    }
  }

  void check_composition(const PropertyDefinition& def, const nlohmann::json& value) {
    if (!value.is_object()) {
      add(def.name, rule::kType, "expected element -> atomic percent");
      return;
    }
    double sum = 0.0;
    bool numeric = true;
    for (const auto& [symbol, pct] : value.items()) {
      if (!is_element_symbol(symbol))
        add(def.name, rule::kElementSymbol, "'" + symbol + "' is not an element symbol");
      if (!is_finite_number(pct)) {
        add(def.name, rule::kType, "fraction of " + symbol + " is not a number");
        numeric = false;
        continue;
      }
      if (pct.get<double>() < 0) add(def.name, rule::kNegative, symbol + " is negative");
      sum += pct.get<double>();
    }
    // The slack absorbs decimal-to-binary rounding of the entered values so
    // that a total of exactly 100 +/- 1e-6 as typed is accepted.
    const double slack =
        64.0 * std::numeric_limits<double>::epsilon() * 100.0 * double(value.size() + 1);
    if (numeric && !(std::abs(sum - 100.0) <= kCompositionTolerance + slack))
      add(def.name, rule::kSum100, "composition sums to " + std::to_string(sum) + ", not 100");
  }

  const VocabularyMap& vocabularies_;
  ValidationReport& report_;
};

}  // namespace

ValidationError::ValidationError(ValidationReport report)
    : Error(ErrorCode::Validation, summarize(report)), report_(std::move(report)) {}

ValidationReport validate_object(const ObjectRecord& record, const ObjectTypeSchema& schema,
                                 const VocabularyMap& vocabularies) {
  ValidationReport report;
  Checker checker(vocabularies, report);
  for (const auto& name : schema.required_property_names) {
    auto it = record.properties.find(name);
    if (it == record.properties.end() || it->second.is_null() ||
        (it->second.is_string() && it->second.get<std::string>().empty()))
      report.violations.push_back({name, rule::kRequired, name + " is required"});
  }
  for (const auto& [name, value] : record.properties) {
    const auto* def = schema.find(name);
    if (!def) {
      report.violations.push_back(
          {name, rule::kUnknownProperty, name + " is not part of " + schema.type_name});
      continue;
    }
    if (value.is_null()) continue;  // explicit "unset" of an optional field
    checker.check(*def, value);
  }
  return report;
}

ValidationReport validate_object(const ObjectRecord& record, const SchemaMap& schemas,
                                 const VocabularyMap& vocabularies) {
  auto it = schemas.find(record.type_name);
  if (it == schemas.end()) fail(ErrorCode::SchemaNotFound, "no schema for " + record.type_name);
  return validate_object(record, it->second, vocabularies);
}

}  // namespace rdm
