#include "layrel/error.hpp"

namespace layrel {

const char *to_string(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::InvalidShape:
    return "invalid shape";
  case ErrorKind::InvalidLayout:
    return "invalid layout";
  case ErrorKind::Construction:
    return "invalid construction";
  case ErrorKind::ArityMismatch:
    return "arity mismatch";
  case ErrorKind::EmptySet:
    return "empty set";
  case ErrorKind::FitPrecondition:
    return "affine fit precondition";
  case ErrorKind::NotStrictlyAffine:
    return "not strictly affine";
  case ErrorKind::InvalidMapping:
    return "invalid mapping";
  case ErrorKind::UnsupportedStrides:
    return "unsupported strides";
  case ErrorKind::IncompatibleShape:
    return "incompatible shape";
  case ErrorKind::InvalidComposition:
    return "invalid composition";
  case ErrorKind::ComplementUndefined:
    return "complement undefined";
  case ErrorKind::NotInvertible:
    return "not invertible";
  case ErrorKind::Overflow:
    return "overflow";
  case ErrorKind::OutOfDomain:
    return "out of domain";
  case ErrorKind::Parse:
    return "parse error";
  }
  return "unknown error";
}

} // namespace layrel
