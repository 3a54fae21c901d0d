#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "textfit/lexicon.hpp"
#include "textfit/rational.hpp"

namespace textfit {

enum class WordClass { Open, Closed };

struct Token {
  std::string surface;
  std::size_t offset = 0;  // byte offset into the source text
  bool is_word = false;    // false for standalone punctuation
  WordClass word_class = WordClass::Open;  // meaningful only when is_word

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::size_t begin = 0;  // byte span [begin, end) in the source text
  std::size_t end = 0;

  int word_count() const;
  int closed_word_count() const;
};

struct Document {
  std::vector<Sentence> sentences;
  std::string source_text;

  // Single-spaced rendering whose tokenization reproduces this document's
  // token sequence exactly.
  std::string normalized_text() const;
};

// The base quantities of the constraint model: W (words), S (sentences),
// F (function words), and the two exact ratios derived from them.
struct Metrics {
  long long words = 0;
  long long sentences = 0;
  long long function_words = 0;

  Rational avg_sentence_length() const;  // W/S; throws EmptyDocumentError when S == 0
  Rational lexical_density() const;      // F/W; throws EmptyDocumentError when W == 0

  bool operator==(const Metrics&) const = default;
};

// Splits sentences on terminal punctuation (. ! ?) followed by whitespace or
// end of input. Words are maximal runs of alphanumeric characters;
// contractions, hyphenated forms and decimal numbers stay single tokens.
// Every other character becomes a punctuation token. Empty input yields a
// document with zero sentences.
Document tokenize(std::string_view raw);

// Marks every word token Closed when its lowercased surface is in the
// lexicon, Open otherwise.
Document classify_words(Document doc, const Lexicon& lexicon);

Metrics compute_metrics(const Document& doc);

}  // namespace textfit
