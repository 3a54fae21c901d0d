#pragma once

#include <stdexcept>

namespace textfit {

// Base class for everything this library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Missing or unusable configuration: lexicon path, config keys, weight ordering.
struct ConfigError : Error {
  using Error::Error;
};

// Malformed input; the message carries the file name and position where known.
struct ParseError : Error {
  using Error::Error;
};

// A candidate set, model, or assignment failed a structural check.
struct ValidationError : Error {
  using Error::Error;
};

// Ratio metrics requested on a document with no sentences (or no words).
struct EmptyDocumentError : Error {
  using Error::Error;
};

}  // namespace textfit
