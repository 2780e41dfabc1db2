#pragma once

#include <stdexcept>
#include <string>

namespace algstoch {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed simplicial data, non-commuting maps, broken category tables.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Unknown object, morphism, event or level.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// A composite required by an operation is absent from the morphism table.
class ClosureError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

/// Model text could not be parsed or failed schema validation.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace algstoch
