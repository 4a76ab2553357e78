#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace layrel {

enum class ErrorKind {
  InvalidShape,
  InvalidLayout,
  Construction,
  ArityMismatch,
  EmptySet,
  FitPrecondition,
  NotStrictlyAffine,
  InvalidMapping,
  UnsupportedStrides,
  IncompatibleShape,
  InvalidComposition,
  ComplementUndefined,
  NotInvertible,
  Overflow,
  OutOfDomain,
  Parse,
};

const char *to_string(ErrorKind kind) noexcept;

/// Base class of every error raised by the library. Domain errors carry one
/// of the kinds above; `ParseError` is reserved for malformed text input.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class ParseError : public Error {
public:
  ParseError(const std::string &message, std::size_t position)
      : Error(ErrorKind::Parse, message + " at position " +
                                    std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

} // namespace layrel
