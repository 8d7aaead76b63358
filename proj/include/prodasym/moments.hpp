// Per-factor laws and rigorously truncated aggregate moment series, plus the
// closed-form equivalents valid as r -> 0.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "prodasym/errors.hpp"
#include "prodasym/factor_family.hpp"
#include "prodasym/quadrature.hpp"
#include "prodasym/radial.hpp"
#include "prodasym/summation.hpp"

namespace prodasym {

/// Law of the variable attached to factor k at radius t, with its first
/// moments. For the two-point family the support is {0, k} with
/// P(X = k) = t^k / (1 + t^k).
struct FactorLaw {
  std::int64_t index = 0;
  std::vector<std::pair<std::int64_t, double>> support;  // (value, probability)
  double mean = 0.0;
  double variance = 0.0;
  double abs_central_3 = 0.0;
};

/// Aggregate m(t), sigma^2(t), Gamma_3(t) and the variance supremum ratio at
/// one radial point. `tail_bound` is the analytic bound on the discarded
/// tails relative to the smallest of the three partial sums; it never exceeds
/// the tolerance the caller requested.
struct MomentSummary {
  double m = 0.0;
  double sigma2 = 0.0;
  double gamma3 = 0.0;
  double sup_var_ratio = 0.0;
  std::int64_t truncation_k = 0;
  double tail_bound = 0.0;
};

/// m_1(e^{-r}) = pi^2 / (12 r^2).
inline double m1(RadialParam rp) {
  const double pi = std::numbers::pi;
  return pi * pi / (12.0 * rp.r * rp.r);
}

/// sigma_1^2(e^{-r}) = pi^2 / (6 r^3).
inline double sigma1_sq(RadialParam rp) {
  const double pi = std::numbers::pi;
  return pi * pi / (6.0 * rp.r * rp.r * rp.r);
}

namespace detail {

struct FactorTerms {
  double mean;
  double variance;
  double abs_central_3;
};

/// Two-point law moments from q = t^k.
inline FactorTerms distinct_terms(double k, double q) {
  const double denom = 1.0 + q;
  const double p = q / denom;
  const double mean = k * p;
  const double variance = k * k * q / (denom * denom);
  const double abs3 = k * k * k * q * (1.0 + q * q) / (denom * denom * denom * denom);
  return {mean, variance, abs3};
}

/// Scaled-geometric law moments from q = t^k. The absolute third central
/// moment uses the split at floor(mean):
///   E|G-m|^3 = -mu3 + 2 p S_plus,  S_plus = sum_{j > floor(m)} (j-m)^3 q^j,
/// with mu3 = q(1+q)/p^3 and S_plus in closed form via geometric sums.
inline FactorTerms geometric_terms(double k, double q) {
  const double p = 1.0 - q;
  const double mg = q / p;
  const double mean = k * mg;
  const double variance = k * k * q / (p * p);

  const double j0 = std::floor(mg);
  const double delta = (j0 + 1.0) - mg;  // in (0, 1]
  const double s0 = 1.0 / p;
  const double s1 = q / (p * p);
  const double s2 = q * (1.0 + q) / (p * p * p);
  const double s3 = q * (1.0 + 4.0 * q + q * q) / (p * p * p * p);
  // q^{j0+1} = exp((j0+1) ln q); ln q = -r k is moderate, no overflow.
  const double q_pow = std::exp((j0 + 1.0) * std::log(q));
  const double s_plus = q_pow * (s3 + 3.0 * delta * s2 + 3.0 * delta * delta * s1 +
                                 delta * delta * delta * s0);
  const double mu3 = s2;  // third central moment of the geometric law
  const double abs_g3 = -mu3 + 2.0 * p * s_plus;
  return {mean, variance, k * k * k * abs_g3};
}

inline FactorTerms custom_terms(const std::vector<mpq_class>& poly, double r) {
  double norm = 0.0, ex = 0.0, ex2 = 0.0;
  for (std::size_t j = 0; j < poly.size(); ++j) {
    if (poly[j] == 0) continue;
    const double w = poly[j].get_d() * std::exp(-r * static_cast<double>(j));
    norm += w;
    ex += static_cast<double>(j) * w;
    ex2 += static_cast<double>(j) * static_cast<double>(j) * w;
  }
  const double mean = ex / norm;
  const double variance = std::max(0.0, ex2 / norm - mean * mean);
  double abs3 = 0.0;
  for (std::size_t j = 0; j < poly.size(); ++j) {
    if (poly[j] == 0) continue;
    const double w = poly[j].get_d() * std::exp(-r * static_cast<double>(j)) / norm;
    const double d = static_cast<double>(j) - mean;
    abs3 += std::abs(d) * d * d * w;
  }
  return {mean, variance, abs3};
}

/// Analytic tail inequality sum_{k>K} k^3 x^k <= x^{K+1} (K+1)^3 / (1-x)^4,
/// valid for K >= 1. Evaluated in log space so huge K underflows cleanly.
inline double cubic_tail_bound(double r, double one_minus_x, std::int64_t K) {
  const double lg = -r * static_cast<double>(K + 1) + 3.0 * std::log(static_cast<double>(K + 1));
  if (lg < -745.0) return 0.0;
  const double d2 = one_minus_x * one_minus_x;
  return std::exp(lg) / (d2 * d2);
}

/// Per-family multiplier making cubic_tail_bound cover all three moment
/// series: the two-point numerators are <= 2 k^3 x^k; the geometric ones are
/// <= 28 k^3 x^k / (1-x)^3.
inline double tail_multiplier(const FactorFamily& family, double one_minus_x) {
  if (family.kind == FactorKind::GeometricParts) {
    return 28.0 / (one_minus_x * one_minus_x * one_minus_x);
  }
  return 2.0;
}

/// Smallest K with multiplier * bound(K) below `abs_target`; fixed-point on
/// the log form. Used to refuse infeasible radii before looping.
inline std::int64_t estimate_truncation(double r, double one_minus_x, double multiplier,
                                        double abs_target) {
  const double d2 = one_minus_x * one_minus_x;
  const double rhs = std::log(abs_target) + std::log(d2 * d2) - std::log(multiplier);
  double K = 16.0;
  for (int i = 0; i < 8; ++i) {
    K = std::max(16.0, (3.0 * std::log(K + 1.0) - rhs) / r);
  }
  return static_cast<std::int64_t>(K) + 1;
}

}  // namespace detail

/// Law and moments of the factor-k variable. For the geometric family the
/// support listing stops once the missed mass is below 1e-12 (the moments are
/// closed-form, not truncated).
inline FactorLaw factor_law(const FactorFamily& family, std::int64_t k, RadialParam rp) {
  if (k < 1) throw std::invalid_argument("factor_law: k must be >= 1");
  FactorLaw law;
  law.index = k;
  const double q = std::exp(-rp.r * static_cast<double>(k));
  switch (family.kind) {
    case FactorKind::DistinctParts: {
      const auto t = detail::distinct_terms(static_cast<double>(k), q);
      const double p = q / (1.0 + q);
      law.support = {{0, 1.0 - p}, {k, p}};
      law.mean = t.mean;
      law.variance = t.variance;
      law.abs_central_3 = t.abs_central_3;
      break;
    }
    case FactorKind::GeometricParts: {
      const auto t = detail::geometric_terms(static_cast<double>(k), q);
      const double p = 1.0 - q;
      double mass = 1.0;
      double pj = p;
      for (std::int64_t j = 0; mass > 1e-12; ++j) {
        law.support.emplace_back(j * k, pj);
        mass -= pj;
        pj *= q;
      }
      law.mean = t.mean;
      law.variance = t.variance;
      law.abs_central_3 = t.abs_central_3;
      break;
    }
    case FactorKind::CustomPolynomial: {
      if (static_cast<std::size_t>(k) > family.custom_factors.size()) {
        law.support = {{0, 1.0}};
        break;
      }
      const auto& poly = family.custom_factors[static_cast<std::size_t>(k) - 1];
      double norm = 0.0;
      for (std::size_t j = 0; j < poly.size(); ++j) {
        if (poly[j] != 0) norm += poly[j].get_d() * std::exp(-rp.r * static_cast<double>(j));
      }
      for (std::size_t j = 0; j < poly.size(); ++j) {
        if (poly[j] == 0) continue;
        law.support.emplace_back(static_cast<std::int64_t>(j),
                                 poly[j].get_d() * std::exp(-rp.r * static_cast<double>(j)) / norm);
      }
      const auto t = detail::custom_terms(poly, rp.r);
      law.mean = t.mean;
      law.variance = t.variance;
      law.abs_central_3 = t.abs_central_3;
      break;
    }
  }
  return law;
}

/// Sums the three moment series in one fixed-order pass, truncated where the
/// analytic tail bound drops below tol times the smallest partial sum.
/// Throws domain_error when satisfying tol would need more than `hard_cap`
/// factors (detected from the bound up front, before any long loop).
inline MomentSummary aggregate_moments(const FactorFamily& family, RadialParam rp,
                                       double tol = 1e-12,
                                       std::int64_t hard_cap = 100000000) {
  if (!(tol > 0.0)) throw std::invalid_argument("aggregate_moments: tol must be > 0");
  family.validate();
  const double r = rp.r;
  const double x = rp.t;
  const double one_minus_x = -std::expm1(-r);

  CompensatedSum m_sum, v_sum, g_sum;
  double sup_var = 0.0;
  std::int64_t K = 0;
  double rel_bound = 0.0;

  if (family.is_custom()) {
    for (std::size_t i = 0; i < family.custom_factors.size(); ++i) {
      const auto t = detail::custom_terms(family.custom_factors[i], r);
      m_sum.add(t.mean);
      v_sum.add(t.variance);
      g_sum.add(t.abs_central_3);
      sup_var = std::max(sup_var, t.variance);
    }
    K = static_cast<std::int64_t>(family.custom_factors.size());
  } else {
    const double multiplier = detail::tail_multiplier(family, one_minus_x);
    // Refuse up front if even an absolute target of tol can never be met
    // within the cap; the relative stop below only triggers sooner.
    const std::int64_t k_needed =
        detail::estimate_truncation(r, one_minus_x, multiplier, tol);
    if (k_needed > hard_cap) {
      throw domain_error("aggregate_moments: truncation would need ~" +
                         std::to_string(k_needed) + " factors (cap " +
                         std::to_string(hard_cap) + "); r too small");
    }
    const double k_peak = 2.0 / r;  // argmax of k^2 x^k
    double xk = x;
    for (std::int64_t k = 1;; ++k) {
      const double kd = static_cast<double>(k);
      const auto t = (family.kind == FactorKind::DistinctParts)
                         ? detail::distinct_terms(kd, xk)
                         : detail::geometric_terms(kd, xk);
      m_sum.add(t.mean);
      v_sum.add(t.variance);
      g_sum.add(t.abs_central_3);
      sup_var = std::max(sup_var, t.variance);

      if (k >= 16 && kd >= k_peak) {
        const double abs_bound = multiplier * detail::cubic_tail_bound(r, one_minus_x, k);
        const double floor_sum =
            std::min(m_sum.value(), std::min(v_sum.value(), g_sum.value()));
        if (abs_bound < tol * floor_sum) {
          K = k;
          rel_bound = abs_bound / floor_sum;
          break;
        }
      }
      if (k >= hard_cap) {
        throw domain_error("aggregate_moments: truncation cap " + std::to_string(hard_cap) +
                           " reached before meeting tol");
      }
      // Power recurrence, re-anchored so drift stays ~4096 eps.
      xk = (k % 4096 == 0) ? std::exp(-r * static_cast<double>(k + 1)) : xk * x;
    }
    // The supremum of the variance terms is attained near k ~ 2/r, inside
    // the truncated range; verify against the analytic tail supremum anyway.
    const double lg_tail = -r * static_cast<double>(K + 1) +
                           2.0 * std::log(static_cast<double>(K + 1));
    double sup_tail = (lg_tail < -745.0) ? 0.0 : std::exp(lg_tail);
    if (family.kind == FactorKind::GeometricParts) sup_tail /= one_minus_x * one_minus_x;
    sup_var = std::max(sup_var, sup_tail);
  }

  MomentSummary s;
  s.m = m_sum.value();
  s.sigma2 = v_sum.value();
  s.gamma3 = g_sum.value();
  if (!(s.sigma2 > 0.0)) {
    throw domain_error("aggregate_moments: degenerate family (zero variance)");
  }
  s.sup_var_ratio = sup_var / s.sigma2;
  s.truncation_k = K;
  s.tail_bound = rel_bound;
  return s;
}

/// The constant in Gamma_3(e^{-r}) ~ C / r^4 and its standardized companion
/// C_3 = C / (pi^2/6)^{3/2}, so that Gamma_3/sigma^3 ~ C_3 sqrt(r).
struct Gamma3Constant {
  double c;
  double c3;
};

inline Gamma3Constant gamma3_constant(double quad_tol = 1e-10) {
  auto integrand = [](double u) {
    if (u <= 0.0) return 0.0;
    const double e1 = std::exp(-u);
    const double e3 = std::exp(-3.0 * u);
    const double d = 1.0 + e1;
    return u * u * u * (e3 + e1) / (d * d * d * d);
  };
  // Integrand < 2 u^3 e^{-u}; beyond u = 60 the tail is ~1e-21.
  const double c = adaptive_simpson(integrand, 0.0, 60.0, quad_tol, 48, 24);
  const double pi = std::numbers::pi;
  const double c3 = c / std::pow(pi * pi / 6.0, 1.5);
  return {c, c3};
}

}  // namespace prodasym
