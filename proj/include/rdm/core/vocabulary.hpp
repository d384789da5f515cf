#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace rdm {

struct VocabularyTerm {
  std::string code;
  std::string label;
  std::string description;

  bool operator==(const VocabularyTerm&) const = default;
};

// Fixed term list presented as a drop-down. Codes are unique; the list is
// never empty.
class ControlledVocabulary {
 public:
  ControlledVocabulary(std::string name, std::vector<VocabularyTerm> terms);

  const std::string& name() const noexcept { return name_; }
  const std::vector<VocabularyTerm>& terms() const noexcept { return terms_; }

  bool contains(std::string_view code) const noexcept;
  const VocabularyTerm* find(std::string_view code) const noexcept;

  // Throws Error{Vocab} on a duplicate code.
  void add_term(VocabularyTerm term);

  bool operator==(const ControlledVocabulary&) const = default;

 private:
  std::string name_;
  std::vector<VocabularyTerm> terms_;
};

using VocabularyMap = std::map<std::string, ControlledVocabulary, std::less<>>;

namespace vocab {
inline constexpr std::string_view kSampleType = "SAMPLE_TYPE";
inline constexpr std::string_view kExperimentTechnique = "EXPERIMENT_TECHNIQUE";
inline constexpr std::string_view kDatasetType = "DATASET_TYPE";
}  // namespace vocab

ControlledVocabulary vocabulary_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ControlledVocabulary& v);

// Seed vocabularies compiled from data/vocabularies/*.json.
VocabularyMap seed_vocabularies();

}  // namespace rdm
