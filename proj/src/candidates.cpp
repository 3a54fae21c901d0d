#include "textfit/candidates.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "textfit/errors.hpp"

namespace textfit {

namespace {

using nlohmann::ordered_json;

std::string candidate_label(int sentence, int candidate) {
  return "candidate (" + std::to_string(sentence) + "," + std::to_string(candidate) + ")";
}

bool tokenizes_identically(const Sentence& original, const Document& replacement) {
  if (replacement.sentences.size() != 1) return false;
  const auto& tokens = replacement.sentences.front().tokens;
  if (tokens.size() != original.tokens.size()) return false;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (tokens[i].surface != original.tokens[i].surface) return false;
  return true;
}

bool ends_with_terminal(std::string_view text) {
  auto last = text.find_last_not_of(" \t\r\n");
  if (last == std::string_view::npos) return false;
  char c = text[last];
  return c == '.' || c == '!' || c == '?';
}

}  // namespace

const ParaphraseCandidate* CandidateSet::find(int sentence, int candidate) const {
  for (const auto& c : candidates)
    if (c.sentence_index == sentence && c.candidate_index == candidate) return &c;
  return nullptr;
}

Deltas derive_coefficients(const Sentence& original, std::string_view replacement_text,
                           const Lexicon& lexicon) {
  Document replacement = classify_words(tokenize(replacement_text), lexicon);
  Metrics m = compute_metrics(replacement);

  long long original_words = original.word_count();
  long long original_closed = 0;
  for (const auto& token : original.tokens)
    if (token.is_word && lexicon.contains(token.surface)) ++original_closed;

  Deltas d;
  d.words = m.words - original_words;
  d.sentences = m.sentences - 1;
  d.function_words = m.function_words - original_closed;
  return d;
}

bool ValidationReport::ok() const {
  return std::none_of(issues.begin(), issues.end(),
                      [](const ValidationIssue& i) { return i.severity == IssueSeverity::Error; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& issue : issues) {
    out << (issue.severity == IssueSeverity::Error ? "error" : "warning") << ": " << issue.where
        << ": " << issue.message << '\n';
  }
  return out.str();
}

ValidationReport validate_candidate_set(const CandidateSet& set, const Lexicon& lexicon,
                                        const ValidationOptions& options) {
  ValidationReport report;
  auto add = [&](IssueSeverity severity, std::string where, std::string message) {
    report.issues.push_back({severity, std::move(where), std::move(message)});
  };

  const long long sentence_count = static_cast<long long>(set.document.sentences.size());

  std::set<std::pair<int, int>> seen;
  std::map<int, std::vector<int>> groups;
  for (const auto& c : set.candidates) {
    const std::string where = candidate_label(c.sentence_index, c.candidate_index);

    if (!seen.insert({c.sentence_index, c.candidate_index}).second)
      add(IssueSeverity::Error, where, "duplicate (sentence, candidate) pair");
    groups[c.sentence_index].push_back(c.candidate_index);

    if (c.sentence_index < 1 || c.sentence_index > sentence_count) {
      add(IssueSeverity::Error, where,
          "sentence index out of range 1.." + std::to_string(sentence_count));
      continue;  // nothing to re-derive against
    }

    const Sentence& original = set.document.sentences[c.sentence_index - 1];
    Deltas derived = derive_coefficients(original, c.replacement_text, lexicon);
    if (derived != c.deltas) {
      std::ostringstream msg;
      msg << "stored coefficients (f=" << c.deltas.function_words << ", w=" << c.deltas.words
          << ", s=" << c.deltas.sentences << ") do not match re-derived (f="
          << derived.function_words << ", w=" << derived.words << ", s=" << derived.sentences
          << ")";
      add(IssueSeverity::Error, where, msg.str());
    }

    bool empty_replacement =
        c.replacement_text.find_first_not_of(" \t\r\n") == std::string::npos;
    if (empty_replacement) {
      if (!options.allow_sentence_deletion)
        add(IssueSeverity::Error, where, "sentence deletion is disabled by configuration");
    } else if (!ends_with_terminal(c.replacement_text)) {
      add(IssueSeverity::Error, where,
          "replacement must end with terminal punctuation (. ! ?)");
    }

    if (!c.changes_text)
      add(IssueSeverity::Warning, where, "null paraphrase: replacement tokenizes identically");
    if (c.discourse_effect < 0)
      add(IssueSeverity::Error, where, "discourse effect must be non-negative");
  }

  for (auto& [sentence, indices] : groups) {
    std::sort(indices.begin(), indices.end());
    for (std::size_t k = 0; k < indices.size(); ++k) {
      if (indices[k] != static_cast<int>(k) + 1) {
        add(IssueSeverity::Error, "sentence " + std::to_string(sentence),
            "candidate indices must be consecutive from 1");
        break;
      }
    }
  }

  // Worst-case totals over exclusivity-respecting selections: at most one
  // candidate per sentence, so the minimum is separable.
  long long min_sentence_delta = 0;
  long long min_word_delta = 0;
  for (const auto& [sentence, _] : groups) {
    long long worst_s = 0;
    long long worst_w = 0;
    for (const auto& c : set.candidates) {
      if (c.sentence_index != sentence) continue;
      worst_s = std::min(worst_s, c.deltas.sentences);
      worst_w = std::min(worst_w, c.deltas.words);
    }
    min_sentence_delta += worst_s;
    min_word_delta += worst_w;
  }
  Metrics base = compute_metrics(set.document);
  if (base.sentences + min_sentence_delta < 1)
    add(IssueSeverity::Error, "candidate set",
        "some selection could drive the sentence count below 1");
  if (base.words + min_word_delta < 1)
    add(IssueSeverity::Error, "candidate set",
        "some selection could drive the word count below 1");

  return report;
}

namespace {

long long require_integer(const ordered_json& value, const std::string& where) {
  if (!value.is_number_integer())
    throw ParseError(where + ": expected an integer");
  return value.get<long long>();
}

}  // namespace

LoadedCandidates parse_candidates_json(std::string_view json_text, const Lexicon& lexicon,
                                       std::string_view origin) {
  ordered_json root;
  try {
    root = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(origin) + ": " + e.what());
  }

  const std::string where_root = std::string(origin);
  if (!root.is_object()) throw ParseError(where_root + ": top level must be an object");
  if (!root.contains("document") || !root["document"].is_string())
    throw ParseError(where_root + ": missing string field 'document'");

  LoadedCandidates result;
  result.set.document = classify_words(tokenize(root["document"].get<std::string>()), lexicon);
  const long long sentence_count = static_cast<long long>(result.set.document.sentences.size());

  if (root.contains("candidates") && !root["candidates"].is_array())
    throw ParseError(where_root + ": 'candidates' must be an array");

  std::map<int, int> next_index;
  if (root.contains("candidates")) {
    int entry_number = 0;
    for (const auto& entry : root["candidates"]) {
      const std::string where = where_root + ": candidates[" + std::to_string(entry_number) + "]";
      ++entry_number;
      if (!entry.is_object()) throw ParseError(where + ": expected an object");
      if (!entry.contains("sentence")) throw ParseError(where + ": missing field 'sentence'");
      if (!entry.contains("replacement") || !entry["replacement"].is_string())
        throw ParseError(where + ": missing string field 'replacement'");

      ParaphraseCandidate c;
      long long sentence = require_integer(entry["sentence"], where + ".sentence");
      if (sentence < 1 || sentence > sentence_count)
        throw ParseError(where + ": sentence " + std::to_string(sentence) +
                         " out of range 1.." + std::to_string(sentence_count));
      c.sentence_index = static_cast<int>(sentence);
      c.candidate_index = ++next_index[c.sentence_index];
      c.replacement_text = entry["replacement"].get<std::string>();

      const Sentence& original = result.set.document.sentences[c.sentence_index - 1];
      c.deltas = derive_coefficients(original, c.replacement_text, lexicon);
      c.changes_text = !tokenizes_identically(original, tokenize(c.replacement_text));

      // Stored coefficients are advisory; the text is authoritative.
      const std::pair<const char*, long long Deltas::*> fields[] = {
          {"f", &Deltas::function_words}, {"w", &Deltas::words}, {"s", &Deltas::sentences}};
      for (auto [key, member] : fields) {
        if (!entry.contains(key)) continue;
        long long stored = require_integer(entry[key], where + "." + key);
        if (stored != c.deltas.*member) {
          std::ostringstream msg;
          msg << "stored " << key << "=" << stored << " disagrees with derived "
              << c.deltas.*member << "; using the derived value";
          result.warnings.push_back({IssueSeverity::Warning,
                                     candidate_label(c.sentence_index, c.candidate_index),
                                     msg.str()});
        }
      }

      if (entry.contains("meaning_class")) {
        if (!entry["meaning_class"].is_string())
          throw ParseError(where + ".meaning_class: expected a string");
        c.meaning_class = meaning_class_from_string(entry["meaning_class"].get<std::string>());
      } else {
        c.meaning_class = classify_meaning_effect(original, c.replacement_text, lexicon);
      }

      if (entry.contains("discourse_effect")) {
        c.discourse_effect = require_integer(entry["discourse_effect"], where + ".discourse_effect");
        if (c.discourse_effect < 0)
          throw ParseError(where + ".discourse_effect: must be non-negative");
      }

      result.set.candidates.push_back(std::move(c));
    }
  }

  std::stable_sort(result.set.candidates.begin(), result.set.candidates.end(),
                   [](const ParaphraseCandidate& a, const ParaphraseCandidate& b) {
                     return std::pair(a.sentence_index, a.candidate_index) <
                            std::pair(b.sentence_index, b.candidate_index);
                   });
  return result;
}

LoadedCandidates load_candidates(const std::filesystem::path& file, const Lexicon& lexicon) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open candidate file: " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_candidates_json(buffer.str(), lexicon, file.string());
}

std::string serialize_candidates(const CandidateSet& set) {
  ordered_json root;
  root["document"] = set.document.source_text;
  root["candidates"] = ordered_json::array();
  for (const auto& c : set.candidates) {
    ordered_json entry;
    entry["sentence"] = c.sentence_index;
    entry["replacement"] = c.replacement_text;
    entry["f"] = c.deltas.function_words;
    entry["w"] = c.deltas.words;
    entry["s"] = c.deltas.sentences;
    entry["meaning_class"] = std::string(to_string(c.meaning_class));
    entry["discourse_effect"] = c.discourse_effect;
    root["candidates"].push_back(std::move(entry));
  }
  return root.dump(2) + "\n";
}

}  // namespace textfit
