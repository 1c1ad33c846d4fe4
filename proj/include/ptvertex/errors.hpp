#pragma once

#include <stdexcept>
#include <string>

namespace ptvertex {

/// A numeric evaluation point annihilated a linear form needed in a
/// denominator.  The offending form is named in the message.
class degenerate_point_error : public std::runtime_error {
 public:
  explicit degenerate_point_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// A cancellation the theory guarantees did not happen; always a bug signal,
/// never valid output.
class cancellation_error : public std::runtime_error {
 public:
  explicit cancellation_error(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace ptvertex
