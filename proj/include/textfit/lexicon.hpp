#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>

namespace textfit {

// Closed-class (function word) list. Lookups are case-insensitive; anything
// absent counts as an open-class word.
class Lexicon {
 public:
  // Loads a UTF-8 word list: one lowercase word per line, '#' starts a
  // comment line, blank lines ignored. Throws ConfigError when the file is
  // missing or unreadable.
  static Lexicon load(const std::filesystem::path& file);

  static Lexicon from_text(std::string_view text);

  // The list shipped with the library (identical to data/function_words.txt).
  static const Lexicon& builtin();

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }
  const std::unordered_set<std::string>& words() const { return words_; }

 private:
  std::unordered_set<std::string> words_;
};

// ASCII lowercasing; bytes outside A-Z pass through unchanged.
std::string to_lower(std::string_view text);

}  // namespace textfit
