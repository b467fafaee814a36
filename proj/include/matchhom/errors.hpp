#pragma once

#include <stdexcept>
#include <string>

namespace matchhom {

/// Bad arguments or data supplied by the caller.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured entry-count or wall-clock cap was exceeded.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A consistency check inside the library failed. Indicates a bug.
class InternalInvariant : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// class_order() was handed a chain whose boundary is nonzero.
class NotACycle : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// kappa_simplex() on a simplex with two edges in the same pair of blocks.
class ParallelEdge : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

}  // namespace matchhom
