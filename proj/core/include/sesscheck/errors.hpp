#pragma once

#include <stdexcept>
#include <string>

namespace sesscheck {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation was not met by the caller.
struct PreconditionError : Error {
  using Error::Error;
};

struct DuplicateProviderError : Error {
  explicit DuplicateProviderError(const std::string& what) : Error(what) {}
};

struct UnknownLanguageError : Error {
  explicit UnknownLanguageError(const std::string& what) : Error(what) {}
};

struct MalformedConfigError : Error {
  explicit MalformedConfigError(const std::string& what) : Error(what) {}
};

struct DuplicateKeyError : Error {
  explicit DuplicateKeyError(const std::string& what) : Error(what) {}
};

}  // namespace sesscheck
