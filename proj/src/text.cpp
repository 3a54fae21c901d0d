#include "textfit/text.hpp"

#include <cctype>

#include "textfit/errors.hpp"

namespace textfit {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

// Treat non-ASCII bytes as word characters so UTF-8 sequences stay inside
// one token.
bool is_word_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || u >= 0x80;
}

bool is_digit(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

bool is_terminal(char c) {
  return c == '.' || c == '!' || c == '?';
}

}  // namespace

int Sentence::word_count() const {
  int n = 0;
  for (const auto& t : tokens) n += t.is_word ? 1 : 0;
  return n;
}

int Sentence::closed_word_count() const {
  int n = 0;
  for (const auto& t : tokens) n += (t.is_word && t.word_class == WordClass::Closed) ? 1 : 0;
  return n;
}

Document tokenize(std::string_view raw) {
  Document doc;
  doc.source_text = std::string(raw);

  std::vector<Token> pending;
  auto flush = [&] {
    if (pending.empty()) return;
    bool has_word = false;
    for (const auto& t : pending) has_word |= t.is_word;
    std::size_t end = pending.back().offset + pending.back().surface.size();
    if (has_word) {
      Sentence s;
      s.begin = pending.front().offset;
      s.end = end;
      s.tokens = std::move(pending);
      doc.sentences.push_back(std::move(s));
    } else if (!doc.sentences.empty()) {
      // Stray punctuation between sentences attaches to the previous one.
      auto& prev = doc.sentences.back();
      prev.tokens.insert(prev.tokens.end(), pending.begin(), pending.end());
      prev.end = end;
    }
    pending.clear();
  };

  const std::size_t n = raw.size();
  std::size_t i = 0;
  while (i < n) {
    char c = raw[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (is_word_char(c)) {
      std::size_t start = i;
      while (i < n) {
        if (is_word_char(raw[i])) {
          ++i;
          continue;
        }
        // Keep apostrophes and hyphens inside words, and decimal points
        // inside numbers ("don't", "well-known", "3.14").
        if ((raw[i] == '\'' || raw[i] == '-') && i > start && is_word_char(raw[i - 1]) &&
            i + 1 < n && is_word_char(raw[i + 1])) {
          ++i;
          continue;
        }
        if (raw[i] == '.' && i > start && is_digit(raw[i - 1]) && i + 1 < n && is_digit(raw[i + 1])) {
          ++i;
          continue;
        }
        break;
      }
      pending.push_back(Token{std::string(raw.substr(start, i - start)), start, true, WordClass::Open});
      continue;
    }
    pending.push_back(Token{std::string(1, c), i, false, WordClass::Open});
    bool ends_sentence = is_terminal(c) && (i + 1 >= n || is_space(raw[i + 1]));
    ++i;
    if (ends_sentence) flush();
  }
  flush();
  return doc;
}

Document classify_words(Document doc, const Lexicon& lexicon) {
  for (auto& sentence : doc.sentences)
    for (auto& token : sentence.tokens)
      if (token.is_word)
        token.word_class = lexicon.contains(token.surface) ? WordClass::Closed : WordClass::Open;
  return doc;
}

Metrics compute_metrics(const Document& doc) {
  Metrics m;
  m.sentences = static_cast<long long>(doc.sentences.size());
  for (const auto& sentence : doc.sentences) {
    m.words += sentence.word_count();
    m.function_words += sentence.closed_word_count();
  }
  return m;
}

Rational Metrics::avg_sentence_length() const {
  if (sentences == 0) throw EmptyDocumentError("average sentence length undefined: no sentences");
  return Rational(words, sentences);
}

Rational Metrics::lexical_density() const {
  if (words == 0) throw EmptyDocumentError("lexical density undefined: no words");
  return Rational(function_words, words);
}

std::string Document::normalized_text() const {
  std::string out;
  for (const auto& sentence : sentences) {
    for (const auto& token : sentence.tokens) {
      if (!out.empty() && token.is_word) out += ' ';
      out += token.surface;
    }
  }
  return out;
}

}  // namespace textfit
