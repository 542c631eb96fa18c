#pragma once

#include <stdexcept>
#include <string>

namespace orderlab {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An element or window does not belong to the group it is used with.
class SpecMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed group, word, element, oracle or class string.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A precondition of an operation does not hold (x = e, x not positive, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A ball or window grew beyond the configured element cap.
class SizeCapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace orderlab
