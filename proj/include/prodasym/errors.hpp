// Error types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace prodasym {

/// Raised when a numeric procedure cannot meet its contract for the requested
/// parameters: saddle bracket failure, truncation hard-cap, quadrature depth
/// exhaustion. Distinct from std::invalid_argument, which flags misuse.
class domain_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature refinement exceeded the depth cap; carries the partial value.
class quadrature_error : public domain_error {
 public:
  quadrature_error(const std::string& what, double partial)
      : domain_error(what), partial_value(partial) {}
  double partial_value;
};

}  // namespace prodasym
