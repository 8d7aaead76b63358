// Adaptive Simpson quadrature.
#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "prodasym/errors.hpp"
#include "prodasym/summation.hpp"

namespace prodasym {

namespace detail {

inline double simpson_rule(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm,
                            double fb, double whole, double tol, int depth,
                            bool& exhausted, CompensatedSum& partial) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_rule(a, m, fa, flm, fm);
  const double right = simpson_rule(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-300) {
    const double v = left + right + delta / 15.0;
    partial.add(v);
    return v;
  }
  if (depth <= 0) {
    exhausted = true;
    const double v = left + right + delta / 15.0;
    partial.add(v);
    return v;
  }
  const double vl = adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                                         depth - 1, exhausted, partial);
  const double vr = adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                                         depth - 1, exhausted, partial);
  return vl + vr;
}

}  // namespace detail

/// Integrates f over [a, b] by adaptive Simpson with Richardson correction,
/// aiming at absolute error <= tol. `initial_cells` seeds a uniform partition
/// before refinement so broad oscillatory integrands are not accepted off a
/// handful of samples. Throws quadrature_error (with the partial value) when
/// some subinterval still fails its share of the budget at `max_depth`.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol,
                        int max_depth = 48, int initial_cells = 8) {
  if (!(tol > 0.0)) throw std::invalid_argument("adaptive_simpson: tol must be > 0");
  if (a == b) return 0.0;
  if (initial_cells < 1) initial_cells = 1;

  bool exhausted = false;
  CompensatedSum partial;
  CompensatedSum total;
  const double h = (b - a) / initial_cells;
  const double cell_tol = tol / initial_cells;
  for (int i = 0; i < initial_cells; ++i) {
    const double x0 = a + i * h;
    const double x1 = (i + 1 == initial_cells) ? b : a + (i + 1) * h;
    const double xm = 0.5 * (x0 + x1);
    const double f0 = f(x0);
    const double fm = f(xm);
    const double f1 = f(x1);
    const double whole = detail::simpson_rule(x0, x1, f0, fm, f1);
    total.add(detail::adaptive_simpson_rec(f, x0, x1, f0, fm, f1, whole,
                                           cell_tol, max_depth, exhausted,
                                           partial));
  }
  if (exhausted) {
    throw quadrature_error(
        "adaptive_simpson: refinement depth cap reached; partial value " +
            std::to_string(total.value()),
        total.value());
  }
  return total.value();
}

}  // namespace prodasym
