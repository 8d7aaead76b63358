// Normalized characteristic function phi_{Z_t}, the L1 Gaussian-distance
// diagnostic, and the moment-based modulus bound checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "prodasym/errors.hpp"
#include "prodasym/factor_family.hpp"
#include "prodasym/moments.hpp"
#include "prodasym/quadrature.hpp"
#include "prodasym/radial.hpp"
#include "prodasym/summation.hpp"

namespace prodasym {

struct CharFnSample {
  RadialParam rp{1.0, 0.0};
  double theta = 0.0;
  std::complex<double> value{1.0, 0.0};
  double log_abs = 0.0;  // ln|value|, accumulated in log space
};

/// Evaluates phi_{Z_t}(theta) = e^{-i theta m/sigma} f(t e^{i theta/sigma}) / f(t)
/// as a sum of per-factor principal-branch complex logarithms. For every
/// admissible factor the non-constant part at radius t has modulus below the
/// constant term, so the principal branch never crosses the cut and the log
/// sum equals the log of the product.
///
/// Construct once per radial point; each call costs one pass over the cached
/// factor data. `k_limit` forces the factor cutoff (used by tests comparing
/// against an explicitly convolved truncated model); 0 means automatic, with
/// the same tail rule as the moment sums.
class PhiZEvaluator {
 public:
  PhiZEvaluator(const FactorFamily& family, RadialParam rp, double tol = 1e-12,
                std::int64_t k_limit = 0, std::int64_t hard_cap = 100000000)
      : family_(family), rp_(rp) {
    if (!(tol > 0.0)) throw std::invalid_argument("PhiZEvaluator: tol must be > 0");
    family_.validate();
    const MomentSummary ms = aggregate_moments(family_, rp_, tol, hard_cap);
    mean_ = ms.m;
    sigma_ = std::sqrt(ms.sigma2);
    gamma3_ = ms.gamma3;

    const double r = rp_.r;
    const double x = rp_.t;
    const double one_minus_x = -std::expm1(-r);
    std::int64_t cutoff = k_limit;
    if (family_.is_custom()) {
      const auto n = static_cast<std::int64_t>(family_.factor_count());
      cutoff = (cutoff == 0) ? n : std::min(cutoff, n);
    } else if (cutoff == 0) {
      const double mult = detail::tail_multiplier(family_, one_minus_x);
      const std::int64_t k_needed = detail::estimate_truncation(r, one_minus_x, mult, tol);
      if (k_needed > hard_cap) {
        throw domain_error("PhiZEvaluator: factor cutoff would exceed the cap; r too small");
      }
      std::int64_t k = 16;
      while (mult * detail::cubic_tail_bound(r, one_minus_x, k) >= tol && k < hard_cap) ++k;
      if (k >= hard_cap) {
        throw domain_error("PhiZEvaluator: factor cutoff reached the cap before meeting tol");
      }
      cutoff = k;
    }

    t_pow_.reserve(static_cast<std::size_t>(cutoff));
    double xk = x;
    for (std::int64_t k = 1; k <= cutoff; ++k) {
      t_pow_.push_back(xk);
      xk = (k % 4096 == 0) ? std::exp(-r * static_cast<double>(k + 1)) : xk * x;
    }

    CompensatedSum s0;
    switch (family_.kind) {
      case FactorKind::DistinctParts:
        for (double q : t_pow_) s0.add(std::log1p(q));
        break;
      case FactorKind::GeometricParts:
        for (double q : t_pow_) s0.add(-std::log1p(-q));
        break;
      case FactorKind::CustomPolynomial:
        custom_weights_.resize(t_pow_.size());
        for (std::size_t i = 0; i < t_pow_.size(); ++i) {
          const auto& poly = family_.custom_factors[i];
          double fk = 0.0;
          for (std::size_t j = 0; j < poly.size(); ++j) {
            if (poly[j] == 0) continue;
            const double w = poly[j].get_d() * std::exp(-r * static_cast<double>(j));
            custom_weights_[i].emplace_back(static_cast<double>(j), w);
            fk += w;
          }
          s0.add(std::log(fk));
        }
        break;
    }
    log_f_at_t_ = s0.value();
  }

  CharFnSample operator()(double theta) const {
    CharFnSample out;
    out.rp = rp_;
    out.theta = theta;
    if (theta == 0.0) return out;  // exactly 1 by definition

    const double th = theta / sigma_;
    const std::complex<double> rot = std::polar(1.0, th);
    std::complex<double> e = 1.0;
    ComplexCompensatedSum acc;
    for (std::size_t i = 0; i < t_pow_.size(); ++i) {
      const auto k = static_cast<std::int64_t>(i) + 1;
      // Unit-phase recurrence, re-anchored so rounding drift stays bounded.
      e = (k % 512 == 1) ? std::polar(1.0, static_cast<double>(k) * th) : e * rot;
      switch (family_.kind) {
        case FactorKind::DistinctParts:
          acc.add(std::log(1.0 + t_pow_[i] * e));
          break;
        case FactorKind::GeometricParts:
          acc.add(-std::log(1.0 - t_pow_[i] * e));
          break;
        case FactorKind::CustomPolynomial: {
          std::complex<double> fk = 0.0;
          for (const auto& [deg, w] : custom_weights_[i]) {
            fk += w * std::polar(1.0, deg * th);
          }
          acc.add(std::log(fk));
          break;
        }
      }
    }
    const std::complex<double> log_phi_x = acc.value() - log_f_at_t_;
    const std::complex<double> centered =
        log_phi_x - std::complex<double>(0.0, theta * mean_ / sigma_);
    out.value = std::exp(centered);
    out.log_abs = centered.real();
    return out;
  }

  double mean() const { return mean_; }
  double sigma() const { return sigma_; }
  double gamma3() const { return gamma3_; }
  double log_f_at_t() const { return log_f_at_t_; }
  std::int64_t truncation_k() const { return static_cast<std::int64_t>(t_pow_.size()); }

 private:
  FactorFamily family_;
  RadialParam rp_;
  double mean_ = 0.0;
  double sigma_ = 1.0;
  double gamma3_ = 0.0;
  double log_f_at_t_ = 0.0;
  std::vector<double> t_pow_;
  std::vector<std::vector<std::pair<double, double>>> custom_weights_;
};

/// One-shot evaluation of phi_{Z_t}(theta).
inline CharFnSample phi_z(const FactorFamily& family, RadialParam rp, double theta,
                          double tol = 1e-12) {
  return PhiZEvaluator(family, rp, tol)(theta);
}

/// Integral of |phi_{Z_t}(x) - e^{-x^2/2}| over [-pi sigma, pi sigma]. The
/// integrand is even, so the positive half is integrated and doubled; the
/// domain splits at x* = sigma^3 / (4 Gamma_3), where the Gaussian-dominated
/// core gives way to the exponentially small tail. Estimated quadrature error
/// is kept below quad_tol; depth exhaustion surfaces as quadrature_error with
/// the partial value.
inline double strong_gaussian_integral(const FactorFamily& family, RadialParam rp,
                                       double quad_tol = 1e-6) {
  if (!(quad_tol > 0.0)) {
    throw std::invalid_argument("strong_gaussian_integral: quad_tol must be > 0");
  }
  const PhiZEvaluator phi(family, rp);
  const double top = std::numbers::pi * phi.sigma();
  double split = phi.sigma() * phi.sigma() * phi.sigma() / (4.0 * phi.gamma3());
  split = std::clamp(split, 0.0, top);

  auto integrand = [&phi](double x) {
    return std::abs(phi(x).value - std::exp(-0.5 * x * x));
  };

  double total = 0.0;
  if (split > 0.0) {
    total += adaptive_simpson(integrand, 0.0, split, 0.25 * quad_tol, 48, 8);
  }
  if (top > split) {
    // Seed enough uniform cells that the oscillation of |phi| in the tail
    // cannot slip between coarse samples.
    const int cells = static_cast<int>(
        std::clamp((top - split) / 2.0, 8.0, 4096.0));
    total += adaptive_simpson(integrand, split, top, 0.25 * quad_tol, 48, cells);
  }
  return 2.0 * total;
}

/// Moment bound on a centered variable's characteristic function modulus:
///   |phi(xi)|^2 <= exp(-xi^2 E(Z^2) + (4/3)|xi|^3 E|Z|^3),
/// with the sharper exponent -xi^2 E(Z^2)/3 available when
/// |xi| <= E(Z^2) / (2 E|Z|^3). Slack 1e-12 absorbs rounding.
struct CramerCheck {
  bool holds = false;
  bool sharp_region = false;
  bool sharp_holds = true;
  double main_bound = 0.0;
  double sharp_bound = 0.0;
  explicit operator bool() const { return holds && sharp_holds; }
};

inline CramerCheck cramer_bound_check(double mean0_second, double abs_third,
                                      double phi_abs, double xi) {
  if (!(mean0_second > 0.0)) {
    throw std::invalid_argument("cramer_bound_check: second moment must be > 0");
  }
  if (!(abs_third >= 0.0) || !std::isfinite(abs_third)) {
    throw std::invalid_argument("cramer_bound_check: third absolute moment must be finite");
  }
  const double axi = std::abs(xi);
  CramerCheck c;
  c.main_bound = std::exp(-xi * xi * mean0_second + (4.0 / 3.0) * axi * axi * axi * abs_third);
  c.holds = phi_abs * phi_abs <= c.main_bound + 1e-12;
  c.sharp_region = (abs_third == 0.0) || (axi <= 0.5 * mean0_second / abs_third);
  if (c.sharp_region) {
    c.sharp_bound = std::exp(-xi * xi * mean0_second / 3.0);
    c.sharp_holds = phi_abs * phi_abs <= c.sharp_bound + 1e-12;
  }
  return c;
}

namespace detail {

inline std::vector<double> log_spaced(double lo, double hi, int points) {
  std::vector<double> g(static_cast<std::size_t>(points));
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < points; ++i) {
    g[static_cast<std::size_t>(i)] =
        lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  g.back() = hi;
  return g;
}

}  // namespace detail

/// Pointwise check of |phi_{Z_t}(theta)| <= e^{-theta^2/3} on a log-spaced
/// grid inside |theta| <= sigma^3 / (4 Gamma_3). Violations are excesses
/// beyond a 1e-9 slack; max_violation <= 0 is the expected outcome.
struct GaussianRegionReport {
  double boundary = 0.0;
  int points = 0;
  double max_violation = -std::numeric_limits<double>::infinity();
  double theta_at_max = 0.0;
  int violations = 0;
};

inline GaussianRegionReport gaussian_region_check(const FactorFamily& family,
                                                  RadialParam rp, int points = 64) {
  if (points < 2) throw std::invalid_argument("gaussian_region_check: need >= 2 points");
  const PhiZEvaluator phi(family, rp);
  const double sigma3 = phi.sigma() * phi.sigma() * phi.sigma();
  GaussianRegionReport rep;
  rep.boundary = sigma3 / (4.0 * phi.gamma3());
  rep.points = points;
  for (double theta : detail::log_spaced(rep.boundary * 1e-4, rep.boundary, points)) {
    const double excess = std::abs(phi(theta).value) - std::exp(-theta * theta / 3.0);
    if (excess > rep.max_violation) {
      rep.max_violation = excess;
      rep.theta_at_max = theta;
    }
    if (excess > 1e-9) ++rep.violations;
  }
  return rep;
}

/// Uniform-smallness check on the outer window c/sqrt(r) <= theta < pi sigma:
/// reports B_emp = -r * max ln|phi| (positive iff |phi| is uniformly
/// exponentially small there). For the distinct-parts family the sampled
/// maximum is also compared against the closed bound
///   ln|phi| <= (1/4) [ (t cos(cr) - t^2) / (1 - 2 t cos(cr) + t^2) - t/(1-t) ].
struct TailRegionReport {
  double theta_lo = 0.0;
  double theta_hi = 0.0;
  int points = 0;
  double max_log_abs = 0.0;
  double b_empirical = 0.0;
  double analytic_log_bound = std::numeric_limits<double>::quiet_NaN();
  bool analytic_bound_holds = true;
};

inline TailRegionReport tail_region_check(const FactorFamily& family, RadialParam rp,
                                          double c = 1.0, int points = 256) {
  if (!(c > 0.0)) throw std::invalid_argument("tail_region_check: c must be > 0");
  if (points < 2) throw std::invalid_argument("tail_region_check: need >= 2 points");
  const PhiZEvaluator phi(family, rp);
  TailRegionReport rep;
  rep.theta_lo = c / std::sqrt(rp.r);
  rep.theta_hi = std::numbers::pi * phi.sigma() * (1.0 - 1e-9);
  rep.points = points;
  if (!(rep.theta_lo < rep.theta_hi)) {
    throw std::invalid_argument("tail_region_check: region is empty at this radius");
  }
  rep.max_log_abs = -std::numeric_limits<double>::infinity();
  for (double theta : detail::log_spaced(rep.theta_lo, rep.theta_hi, points)) {
    rep.max_log_abs = std::max(rep.max_log_abs, phi(theta).log_abs);
  }
  rep.b_empirical = -rp.r * rep.max_log_abs;
  if (family.kind == FactorKind::DistinctParts) {
    const double t = rp.t;
    const double cs = std::cos(c * rp.r);
    rep.analytic_log_bound =
        0.25 * ((t * cs - t * t) / (1.0 - 2.0 * t * cs + t * t) - t / (1.0 - t));
    rep.analytic_bound_holds = rep.max_log_abs <= rep.analytic_log_bound + 1e-9;
  }
  return rep;
}

}  // namespace prodasym
