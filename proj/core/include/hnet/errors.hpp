#pragma once

#include <stdexcept>

namespace hnet {

/// Base class for all errors raised by this library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point does not belong to the space it was used with: wrong
/// representation, dimension mismatch, or a violated norm constraint.
class invalid_point_error : public error {
 public:
  using error::error;
};

/// Argument outside an operation's domain (empty input, parameter out of
/// range, mismatched graphs or spaces, ...).
class domain_error : public error {
 public:
  using error::error;
};

/// The requested construction is not unique: antipodal midpoints, or a
/// center of gravity outside the uniqueness regime.
class ambiguity_error : public error {
 public:
  using error::error;
};

/// Operation not available in this geometry (log/exp on metric trees).
class unsupported_capability_error : public error {
 public:
  using error::error;
};

/// Invalid graph construction; the message lists every violation found.
class graph_error : public error {
 public:
  using error::error;
};

/// File or format problem while reading/writing specs, reports, traces.
class io_error : public error {
 public:
  using error::error;
};

}  // namespace hnet
