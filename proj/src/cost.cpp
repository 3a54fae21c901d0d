#include "textfit/cost.hpp"

#include <array>
#include <cstdlib>
#include <map>

#include "textfit/candidates.hpp"
#include "textfit/errors.hpp"

namespace textfit {

namespace {

bool is_relative_pronoun(const std::string& lower) {
  return lower == "who" || lower == "whom" || lower == "whose" || lower == "which" ||
         lower == "that";
}

std::map<std::string, int> word_multiset(const Document& doc) {
  std::map<std::string, int> counts;
  for (const auto& sentence : doc.sentences)
    for (const auto& token : sentence.tokens)
      if (token.is_word) ++counts[to_lower(token.surface)];
  return counts;
}

}  // namespace

std::string_view to_string(MeaningClass c) {
  switch (c) {
    case MeaningClass::None: return "none";
    case MeaningClass::ClosedOnly: return "closed_only";
    case MeaningClass::SingleOpen: return "single_open";
    case MeaningClass::MultiOpen: return "multi_open";
  }
  return "none";
}

MeaningClass meaning_class_from_string(std::string_view name) {
  if (name == "none") return MeaningClass::None;
  if (name == "closed_only") return MeaningClass::ClosedOnly;
  if (name == "single_open") return MeaningClass::SingleOpen;
  if (name == "multi_open") return MeaningClass::MultiOpen;
  throw ParseError("unknown meaning class: '" + std::string(name) + "'");
}

const Rational& CostWeights::weight(MeaningClass c) const {
  switch (c) {
    case MeaningClass::None: return none;
    case MeaningClass::ClosedOnly: return closed_only;
    case MeaningClass::SingleOpen: return single_open;
    case MeaningClass::MultiOpen: return multi_open;
  }
  return none;
}

Rational CostWeights::positivity_floor() const {
  Rational smallest{0};
  for (const Rational* w : {&closed_only, &single_open, &multi_open, &discourse_lambda}) {
    if (*w > Rational(0) && (smallest == Rational(0) || *w < smallest)) smallest = *w;
  }
  if (smallest == Rational(0)) smallest = Rational(1);
  return smallest / 100;
}

void CostWeights::validate() const {
  if (none != Rational(0)) throw ConfigError("weights.none must be 0");
  if (closed_only < Rational(0) || single_open < Rational(0) || multi_open < Rational(0) ||
      discourse_lambda < Rational(0))
    throw ConfigError("cost weights must be non-negative");
  if (!(none <= closed_only && closed_only <= single_open && single_open <= multi_open))
    throw ConfigError("cost weights must be non-decreasing in meaning-class order");
}

MeaningClass classify_meaning_effect(const Sentence& original, std::string_view replacement_text,
                                     const Lexicon& lexicon) {
  std::map<std::string, int> diff;
  for (const auto& token : original.tokens)
    if (token.is_word) ++diff[to_lower(token.surface)];
  for (const auto& [word, count] : word_multiset(tokenize(replacement_text))) diff[word] -= count;

  int open_tokens = 0;
  bool any_non_relative = false;
  bool any_difference = false;
  for (const auto& [word, delta] : diff) {
    if (delta == 0) continue;
    any_difference = true;
    if (!is_relative_pronoun(word)) any_non_relative = true;
    if (!lexicon.contains(word)) open_tokens += std::abs(delta);
  }

  if (!any_difference || !any_non_relative) return MeaningClass::None;
  if (open_tokens == 0) return MeaningClass::ClosedOnly;
  if (open_tokens == 1) return MeaningClass::SingleOpen;
  return MeaningClass::MultiOpen;
}

long long discourse_effect_from_counts(long long q_original, long long q_replacement) {
  if (q_original < 0 || q_replacement < 0)
    throw ValidationError("question counts must be non-negative");
  return q_original >= q_replacement ? q_original - q_replacement : q_replacement - q_original;
}

CostBreakdown compute_cost(const ParaphraseCandidate& candidate, const CostWeights& weights) {
  CostBreakdown cost;
  cost.meaning = weights.weight(candidate.meaning_class);
  cost.discourse = weights.discourse_lambda * Rational(candidate.discourse_effect);
  cost.total = cost.meaning + cost.discourse;
  if (cost.total == Rational(0) && candidate.changes_text) {
    // Positivity floor: a change with no measured effect still counts.
    cost.meaning = weights.positivity_floor();
    cost.total = cost.meaning;
  }
  return cost;
}

}  // namespace textfit
