#pragma once

#include <stdexcept>
#include <string>

namespace scarfmatch {

/// Raised when an exhaustive search would exceed its configured bound.
/// Bounds are hard configuration: refusing is always preferred over silent
/// truncation.
struct ResourceBoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a runtime invariant of the pivoting machinery fails. These
/// indicate an implementation defect, never bad input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace scarfmatch
