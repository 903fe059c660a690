#pragma once

#include <stdexcept>
#include <string>

namespace facetrank {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters (damping outside (0,1), zero vocabulary, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

class EmptyGraphError : public Error {
 public:
  EmptyGraphError() : Error("graph has no nodes") {}
};

/// A facet tag has no entry in a rank store.
class MissingTagError : public Error {
 public:
  explicit MissingTagError(const std::string& tag)
      : Error("tag not present in store: " + tag), tag_(tag) {}
  const std::string& tag() const noexcept { return tag_; }

 private:
  std::string tag_;
};

/// Input record or file that cannot be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class StoreMissingError : public IoError {
 public:
  using IoError::IoError;
};

class StoreVersionError : public Error {
 public:
  using Error::Error;
};

class StoreCorruptError : public Error {
 public:
  using Error::Error;
};

/// A store does not belong to the graph it is queried with.
class FingerprintMismatchError : public Error {
 public:
  using Error::Error;
};

/// Out-of-domain argument to a similarity measure.
class DomainError : public Error {
 public:
  using Error::Error;
};

class TooFewBinsError : public Error {
 public:
  using Error::Error;
};

class InsufficientVocabularyError : public Error {
 public:
  using Error::Error;
};

}  // namespace facetrank
