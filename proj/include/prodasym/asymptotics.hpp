// Coefficient estimates: the general saddle-point formula, the closed-form
// equivalent-scales variant, and the fully closed asymptotic law for the
// distinct-parts counting sequence.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "prodasym/errors.hpp"
#include "prodasym/factor_family.hpp"
#include "prodasym/moments.hpp"
#include "prodasym/saddle.hpp"
#include "prodasym/summation.hpp"

namespace prodasym {

enum class EstimateMethod { GeneralSaddle, Equivalents, ClosedForm };

/// Log-space estimate of a_n. Always satisfies
///   log_estimate = log_f_value + n_times_r - log_sigma_term,
/// where log_sigma_term = ln(sqrt(2 pi) * sigma_used); the components are kept
/// so the estimate is reconstructible and the two sigma conventions are
/// visible side by side.
struct AsymptoticEstimate {
  std::int64_t n = 0;
  double log_estimate = 0.0;
  EstimateMethod method = EstimateMethod::GeneralSaddle;
  SaddleSolution saddle;
  double log_f_value = 0.0;
  double n_times_r = 0.0;
  double log_sigma_term = 0.0;
};

/// ln f(t) = sum_k ln f_k(t), truncated once the analytic tail drops below
/// tol (absolute): for the two-point family the tail is <= x^{K+1}/(1-x),
/// for the geometric one <= x^{K+1}/(1-x)^2. Compensated summation.
inline double log_f(const FactorFamily& family, RadialParam rp, double tol = 1e-12,
                    std::int64_t hard_cap = 100000000) {
  if (!(tol > 0.0)) throw std::invalid_argument("log_f: tol must be > 0");
  family.validate();
  const double r = rp.r;
  const double x = rp.t;
  CompensatedSum sum;

  if (family.is_custom()) {
    for (const auto& poly : family.custom_factors) {
      double fk = 0.0;
      for (std::size_t j = 0; j < poly.size(); ++j) {
        if (poly[j] != 0) fk += poly[j].get_d() * std::exp(-r * static_cast<double>(j));
      }
      sum.add(std::log(fk));
    }
    return sum.value();
  }

  const double one_minus_x = -std::expm1(-r);
  const bool geometric = family.kind == FactorKind::GeometricParts;
  const double denom = geometric ? one_minus_x * one_minus_x : one_minus_x;
  // Tail bound x^{K+1}/denom < tol  =>  K > (ln(1/(tol*denom)))/r.
  const double k_needed = (std::log(1.0 / (tol * denom))) / r;
  if (k_needed > static_cast<double>(hard_cap)) {
    throw domain_error("log_f: truncation would need ~" + std::to_string(k_needed) +
                       " factors; r too small");
  }
  double xk = x;
  for (std::int64_t k = 1;; ++k) {
    sum.add(geometric ? -std::log1p(-xk) : std::log1p(xk));
    if (xk / denom < tol && k >= 8) break;
    if (k >= hard_cap) {
      throw domain_error("log_f: truncation cap reached before meeting tol");
    }
    xk = (k % 4096 == 0) ? std::exp(-r * static_cast<double>(k + 1)) : xk * x;
  }
  return sum.value();
}

/// Closed two-term sum asymptotics: sum_k ln(1 + e^{-rho k}) =
/// pi^2/(12 rho) - ln(2)/2 + O(rho) as rho -> 0+. Asymptotic only: for
/// rho >~ 1 the formula goes negative while the true sum stays positive, so
/// treat rho <= 1 as its useful region.
inline double euler_maclaurin_log_f(double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("euler_maclaurin_log_f: rho must be > 0");
  const double pi = std::numbers::pi;
  return pi * pi / (12.0 * rho) - 0.5 * std::numbers::ln2;
}

namespace detail {

inline double log_sqrt_two_pi() {
  return 0.5 * std::log(2.0 * std::numbers::pi);
}

}  // namespace detail

/// a_n ~ f(t_n) / (sqrt(2 pi) sigma(t_n) t_n^n) with t_n from the exact
/// saddle solve and sigma from the aggregated moment series.
inline AsymptoticEstimate estimate_general(const FactorFamily& family, std::int64_t n,
                                           double solver_tol = 1e-9,
                                           double tol = 1e-12) {
  AsymptoticEstimate est;
  est.n = n;
  est.method = EstimateMethod::GeneralSaddle;
  est.saddle = solve_saddle(family, n, solver_tol);
  const MomentSummary ms = aggregate_moments(family, est.saddle.rp, tol);
  est.log_f_value = log_f(family, est.saddle.rp, tol);
  est.n_times_r = static_cast<double>(n) * est.saddle.rp.r;
  est.log_sigma_term = detail::log_sqrt_two_pi() + 0.5 * std::log(ms.sigma2);
  est.log_estimate = est.log_f_value + est.n_times_r - est.log_sigma_term;
  return est;
}

/// Distinct-parts only: the saddle and sigma are replaced by their closed
/// equivalents (tau_n and sigma_1), while ln f(tau_n) stays an exact sum.
inline AsymptoticEstimate estimate_equivalents(std::int64_t n, double tol = 1e-12) {
  AsymptoticEstimate est;
  est.n = n;
  est.method = EstimateMethod::Equivalents;
  est.saddle = closed_form_saddle(n);
  const double nd = static_cast<double>(n);
  const double sigma1sq = 4.0 * std::sqrt(3.0) / std::numbers::pi * nd * std::sqrt(nd);
  est.log_f_value = log_f(FactorFamily::distinct_parts(), est.saddle.rp, tol);
  est.n_times_r = nd * est.saddle.rp.r;
  est.log_sigma_term = detail::log_sqrt_two_pi() + 0.5 * std::log(sigma1sq);
  est.log_estimate = est.log_f_value + est.n_times_r - est.log_sigma_term;
  return est;
}

/// Fully closed law for the distinct-parts counting sequence:
///   log q(n) ~ pi sqrt(n/3) - ln 4 - (1/4) ln 3 - (3/4) ln n.
/// Components follow the same decomposition as the other methods, with
/// ln f(tau_n) replaced by its two-term closed asymptotics.
inline AsymptoticEstimate closed_form_q(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("closed_form_q: n must be >= 1");
  AsymptoticEstimate est;
  est.n = n;
  est.method = EstimateMethod::ClosedForm;
  est.saddle = closed_form_saddle(n);
  const double nd = static_cast<double>(n);
  const double pi = std::numbers::pi;
  const double half_exponent = pi * std::sqrt(nd) / (2.0 * std::sqrt(3.0));
  const double sigma1sq = 4.0 * std::sqrt(3.0) / pi * nd * std::sqrt(nd);
  est.log_f_value = half_exponent - 0.5 * std::numbers::ln2;
  est.n_times_r = half_exponent;
  est.log_sigma_term = detail::log_sqrt_two_pi() + 0.5 * std::log(sigma1sq);
  est.log_estimate = est.log_f_value + est.n_times_r - est.log_sigma_term;
  return est;
}

}  // namespace prodasym
