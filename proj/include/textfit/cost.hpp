#pragma once

#include <string_view>

#include "textfit/rational.hpp"
#include "textfit/text.hpp"

namespace textfit {

struct ParaphraseCandidate;

// How far a rewrite moves the sentence's meaning, approximated by the word
// classes of the tokens it touches. Ordered by increasing effect.
enum class MeaningClass { None, ClosedOnly, SingleOpen, MultiOpen };

std::string_view to_string(MeaningClass c);
MeaningClass meaning_class_from_string(std::string_view name);  // throws ParseError

struct CostWeights {
  Rational none{0};
  Rational closed_only{1};
  Rational single_open{3};
  Rational multi_open{6};
  Rational discourse_lambda{1};

  const Rational& weight(MeaningClass c) const;

  // Smallest configured nonzero weight divided by 100 (fallback 1/100 when
  // all weights are zero). Applied to text-changing candidates whose
  // components are both zero, so every real change keeps a positive cost.
  Rational positivity_floor() const;

  // weight(None) must be 0 and class weights must be non-decreasing in
  // class order; everything must be non-negative. Throws ConfigError.
  void validate() const;
};

struct CostBreakdown {
  Rational meaning;
  Rational discourse;
  Rational total;
};

// Classifies the multiset symmetric difference of word tokens
// (case-insensitive): empty or relative-pronoun-only -> None; all closed ->
// ClosedOnly; exactly one open token -> SingleOpen; two or more open ->
// MultiOpen.
MeaningClass classify_meaning_effect(const Sentence& original, std::string_view replacement_text,
                                     const Lexicon& lexicon);

// |q_original - q_replacement| where the counts are how many questions each
// version can answer. Counts come from annotation, never from text. Throws
// ValidationError on negative input.
long long discourse_effect_from_counts(long long q_original, long long q_replacement);

CostBreakdown compute_cost(const ParaphraseCandidate& candidate, const CostWeights& weights);

}  // namespace textfit
