#pragma once

#include <stdexcept>
#include <string>

namespace tmc {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// det g at or below the degeneracy threshold, or a non-positive area density.
class DegenerateImmersion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An evaluated point misses the S^n x R constraint.
class ImmersionDefect : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite-difference jets dominated by cancellation error.
class FdInstability : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A difference stencil would leave a non-periodic parameter interval.
class BoundaryStencil : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integral operation requested on a non-compact surface.
class CompactnessRequired : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A hypothesis of an inequality (slice, H-surface) does not hold.
class HypothesisViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tmc
