// Coupled radial parameter (t, r) with t = e^{-r}.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace prodasym {

/// The radius pair used throughout: r > 0 on the log scale, t = e^{-r} in
/// (0,1). The interesting regime t -> 1 corresponds to r -> 0. Construct via
/// from_r / from_t so the pair stays self-consistent.
struct RadialParam {
  double r;
  double t;

  static RadialParam from_r(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("RadialParam: r must be positive and finite, got " +
                                  std::to_string(r));
    }
    const double t = std::exp(-r);
    if (t <= 0.0) {
      throw std::invalid_argument("RadialParam: t = e^{-r} underflows at r = " +
                                  std::to_string(r));
    }
    return RadialParam{r, t};
  }

  static RadialParam from_t(double t) {
    if (!(t > 0.0) || !(t < 1.0)) {
      throw std::invalid_argument("RadialParam: t must lie in (0,1), got " +
                                  std::to_string(t));
    }
    return RadialParam{-std::log(t), t};
  }

  /// Checked construction from an externally supplied pair.
  /// Consistency requirement: |r + ln t| <= 1e-15 * r.
  static RadialParam checked(double r, double t) {
    RadialParam rp{r, t};
    rp.validate();
    return rp;
  }

  void validate() const {
    if (!(r > 0.0) || !(t > 0.0) || !(t < 1.0)) {
      throw std::invalid_argument("RadialParam: need r > 0 and t in (0,1)");
    }
    if (std::abs(r + std::log(t)) > 1e-15 * r) {
      throw std::invalid_argument("RadialParam: pair (r, t) is not self-consistent");
    }
  }
};

}  // namespace prodasym
