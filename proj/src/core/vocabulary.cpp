#include "rdm/core/vocabulary.hpp"

#include <algorithm>

#include "rdm/error.hpp"

namespace rdm {

namespace detail {
// Generated at configure time from data/vocabularies/.
extern const char* const kSeedVocabularies[];
extern const std::size_t kSeedVocabularyCount;
}  // namespace detail

ControlledVocabulary::ControlledVocabulary(std::string name, std::vector<VocabularyTerm> terms)
    : name_(std::move(name)) {
  if (terms.empty()) fail(ErrorCode::Vocab, "vocabulary " + name_ + " has no terms");
  for (auto& t : terms) add_term(std::move(t));
}

bool ControlledVocabulary::contains(std::string_view code) const noexcept {
  return find(code) != nullptr;
}

const VocabularyTerm* ControlledVocabulary::find(std::string_view code) const noexcept {
  auto it = std::find_if(terms_.begin(), terms_.end(),
                         [&](const VocabularyTerm& t) { return t.code == code; });
  return it == terms_.end() ? nullptr : &*it;
}

void ControlledVocabulary::add_term(VocabularyTerm term) {
  if (term.code.empty()) fail(ErrorCode::Vocab, "empty term code in " + name_);
  if (contains(term.code))
    fail(ErrorCode::Vocab, "duplicate term " + term.code + " in " + name_);
  terms_.push_back(std::move(term));
}

ControlledVocabulary vocabulary_from_json(const nlohmann::json& j) {
  std::vector<VocabularyTerm> terms;
  for (const auto& t : j.at("terms"))
    terms.push_back({t.at("code").get<std::string>(), t.value("label", ""),
                     t.value("description", "")});
  return ControlledVocabulary(j.at("name").get<std::string>(), std::move(terms));
}

nlohmann::json to_json(const ControlledVocabulary& v) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : v.terms())
    terms.push_back({{"code", t.code}, {"label", t.label}, {"description", t.description}});
  return {{"name", v.name()}, {"terms", terms}};
}

VocabularyMap seed_vocabularies() {
  VocabularyMap out;
  for (std::size_t i = 0; i < detail::kSeedVocabularyCount; ++i) {
    auto v = vocabulary_from_json(nlohmann::json::parse(detail::kSeedVocabularies[i]));
    out.emplace(v.name(), std::move(v));
  }
  return out;
}

}  // namespace rdm
