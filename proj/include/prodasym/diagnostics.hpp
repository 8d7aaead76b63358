// Machine-checkable reports for the normal-limit hypotheses: Liapounov-type
// ratios, the Taylor remainder bound, and the product-limit harness.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prodasym/charfn.hpp"
#include "prodasym/factor_family.hpp"
#include "prodasym/moments.hpp"
#include "prodasym/radial.hpp"
#include "prodasym/saddle.hpp"

namespace prodasym {

/// The quantities whose limits drive the normal approximation: the Liapounov
/// ratio Gamma_3/sigma^3 (-> 0), the variance supremum ratio (-> 0), the
/// rate-normalized ratio/(sqrt r) (stabilizes), and the L1 Gaussian distance.
/// `mean_equivalent_gap` is filled only for the n-indexed variant.
struct CltReport {
  RadialParam rp{1.0, 0.0};
  double liapounov_ratio = 0.0;
  double sup_var_ratio = 0.0;
  double liapounov_scaled = 0.0;
  std::optional<double> mean_equivalent_gap;
  double strong_gaussian = 0.0;
};

inline CltReport clt_report(const FactorFamily& family, RadialParam rp,
                            double tol = 1e-12, double quad_tol = 1e-6) {
  const MomentSummary ms = aggregate_moments(family, rp, tol);
  CltReport rep;
  rep.rp = rp;
  rep.liapounov_ratio = ms.gamma3 / std::pow(ms.sigma2, 1.5);
  rep.sup_var_ratio = ms.sup_var_ratio;
  rep.liapounov_scaled = rep.liapounov_ratio / std::sqrt(rp.r);
  rep.strong_gaussian = strong_gaussian_integral(family, rp, quad_tol);
  return rep;
}

/// n-indexed variant, evaluated at the closed-form saddle tau_n.
inline CltReport clt_report_at(const FactorFamily& family, std::int64_t n,
                               double tol = 1e-12, double quad_tol = 1e-6) {
  const SaddleSolution tau = closed_form_saddle(n);
  CltReport rep = clt_report(family, tau.rp, tol, quad_tol);
  rep.mean_equivalent_gap = mean_equivalent_gap(family, n, tol);
  return rep;
}

/// Exact finite-support check of the second-order Taylor remainder of one
/// factor's standardized characteristic function:
///   |E e^{i theta Y/sigma} - (1 - (theta^2/2)(sigma_k/sigma)^2)|
///     <= |theta|^3 E|Y|^3 / (6 sigma^3) + 1e-12.
inline bool taylor_remainder_check(const FactorLaw& law, double sigma_total,
                                   double theta) {
  if (!(sigma_total > 0.0)) {
    throw std::invalid_argument("taylor_remainder_check: sigma_total must be > 0");
  }
  std::complex<double> ch{0.0, 0.0};
  for (const auto& [value, prob] : law.support) {
    const double y = (static_cast<double>(value) - law.mean) / sigma_total;
    ch += prob * std::polar(1.0, theta * y);
  }
  const double ratio2 = law.variance / (sigma_total * sigma_total);
  const std::complex<double> second_order{1.0 - 0.5 * theta * theta * ratio2, 0.0};
  const double remainder = std::abs(ch - second_order);
  const double a = std::abs(theta);
  const double bound = a * a * a * law.abs_central_3 /
                       (6.0 * sigma_total * sigma_total * sigma_total);
  return remainder <= bound + 1e-12;
}

/// A synthetic double-indexed family u_{n,t} with the closed-form data the
/// product-limit lemma requires: S(t) = sum_n u_{n,t}, its limit S as t -> 1,
/// a uniform bound M on sum_n |u_{n,t}|, the supremum sup_n |u_{n,t}|, and a
/// computable bound on the tail sum beyond N terms.
struct ProductLimitFamily {
  std::string name;
  std::function<std::complex<double>(std::int64_t, double)> u;
  std::function<std::complex<double>(double)> sum_closed_form;
  std::complex<double> limit{0.0, 0.0};
  double abs_sum_bound = 0.0;  // M
  std::function<double(double)> sup_abs;
  std::function<double(std::int64_t, double)> tail_abs;
};

struct ProductLimitRow {
  double t = 0.0;
  std::int64_t n_terms = 0;
  std::complex<double> product{1.0, 0.0};
  std::complex<double> exp_s_t{1.0, 0.0};
  double deviation = 0.0;  // |product - e^{S(t)}|
  double bound = 0.0;      // lemma-derived tolerance at this t
  bool ok = false;
};

struct ProductLimitReport {
  std::vector<ProductLimitRow> rows;
  bool pass = true;
  double final_deviation_to_limit = 0.0;  // |product - e^S| at the last grid t
};

/// Evaluates prod_{n<=N} (1 + u_{n,t}) along the t grid and asserts
/// |product - e^{S(t)}| <= |e^{S(t)}| (e^{2 M sup_n|u| + 2 tail} - 1) + 1e-12,
/// the tolerance the lemma's own |sum ln(1+u) - sum u| <= 2 M sup|u| bound
/// yields. N is chosen so the tail sum is below 1e-14.
inline ProductLimitReport product_limit_check(const ProductLimitFamily& fam,
                                              std::span<const double> t_grid) {
  ProductLimitReport rep;
  for (double t : t_grid) {
    ProductLimitRow row;
    row.t = t;
    std::int64_t n_terms = 64;
    while (fam.tail_abs(n_terms, t) >= 1e-14 && n_terms < (1 << 22)) n_terms *= 2;
    row.n_terms = n_terms;
    std::complex<double> prod{1.0, 0.0};
    for (std::int64_t n = 1; n <= n_terms; ++n) {
      prod *= 1.0 + fam.u(n, t);
    }
    row.product = prod;
    const std::complex<double> s_t = fam.sum_closed_form(t);
    row.exp_s_t = std::exp(s_t);
    row.deviation = std::abs(prod - row.exp_s_t);
    const double slack = 2.0 * fam.abs_sum_bound * fam.sup_abs(t) +
                         2.0 * fam.tail_abs(n_terms, t);
    row.bound = std::abs(row.exp_s_t) * std::expm1(slack) + 1e-12;
    row.ok = row.deviation <= row.bound;
    rep.pass = rep.pass && row.ok;
    rep.rows.push_back(row);
  }
  if (!rep.rows.empty()) {
    rep.final_deviation_to_limit =
        std::abs(rep.rows.back().product - std::exp(fam.limit));
  }
  return rep;
}

}  // namespace prodasym
