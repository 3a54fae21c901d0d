#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "textfit/cost.hpp"
#include "textfit/text.hpp"

namespace textfit {

// Per-candidate change to the document totals: f (function words), w (words),
// s (sentences).
struct Deltas {
  long long function_words = 0;
  long long words = 0;
  long long sentences = 0;

  bool operator==(const Deltas&) const = default;
};

struct ParaphraseCandidate {
  int sentence_index = 0;   // 1-based position of the source sentence
  int candidate_index = 0;  // 1-based position within that sentence's group
  std::string replacement_text;  // zero or more sentences; empty = deletion
  Deltas deltas;
  MeaningClass meaning_class = MeaningClass::None;
  long long discourse_effect = 0;
  bool changes_text = true;  // false when the replacement tokenizes identically

  bool operator==(const ParaphraseCandidate&) const = default;
};

struct CandidateSet {
  Document document;  // tokenized and classified
  std::vector<ParaphraseCandidate> candidates;  // sorted by (sentence, candidate)

  const ParaphraseCandidate* find(int sentence, int candidate) const;
};

// Recomputes (f, w, s) from the replacement text against the original
// sentence. The replacement may hold zero sentences (deletion, s = -1) or
// several (a split, s >= +1).
Deltas derive_coefficients(const Sentence& original, std::string_view replacement_text,
                           const Lexicon& lexicon);

enum class IssueSeverity { Warning, Error };

struct ValidationIssue {
  IssueSeverity severity = IssueSeverity::Error;
  std::string where;    // e.g. "candidate (3,2)"
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const;  // true when no Error-severity issue is present
  std::string to_string() const;
};

struct ValidationOptions {
  bool allow_sentence_deletion = false;
};

// Structural checks: stored coefficients match re-derivation, (i,j) unique
// and consecutive, sentence indices in range, no exclusivity-respecting
// selection can drive the sentence or word count below 1, replacements end
// with terminal punctuation, null paraphrases flagged as warnings.
ValidationReport validate_candidate_set(const CandidateSet& set, const Lexicon& lexicon,
                                        const ValidationOptions& options = {});

struct LoadedCandidates {
  CandidateSet set;
  std::vector<ValidationIssue> warnings;  // e.g. stored coefficients overridden
};

// JSON file with top-level "document" (string) and "candidates" (array of
// objects with "sentence", "replacement", optional "f"/"w"/"s",
// "meaning_class", "discourse_effect"). Coefficients are re-derived from the
// texts; a stored value that disagrees is overridden with a warning.
LoadedCandidates load_candidates(const std::filesystem::path& file, const Lexicon& lexicon);
LoadedCandidates parse_candidates_json(std::string_view json_text, const Lexicon& lexicon,
                                       std::string_view origin = "<input>");

std::string serialize_candidates(const CandidateSet& set);

}  // namespace textfit
