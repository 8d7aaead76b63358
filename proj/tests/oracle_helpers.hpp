// Test-only oracles, independent of the library's computation paths.
#pragma once

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------- series

/// Plain discrete convolution of coefficient vectors, truncated to n_max.
inline std::vector<mpq_class> convolve(const std::vector<mpq_class>& a,
                                       const std::vector<mpq_class>& b,
                                       std::size_t n_max) {
  std::vector<mpq_class> c(n_max + 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size() && i <= n_max; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= n_max; ++j) {
      c[i + j] += a[i] * b[j];
    }
  }
  return c;
}

/// Counts multisets of positive integers summing to n (enumeration).
inline std::uint64_t multiset_partition_count(std::uint64_t n, std::uint64_t max_part) {
  if (n == 0) return 1;
  std::uint64_t total = 0;
  for (std::uint64_t p = std::min(n, max_part); p >= 1; --p) {
    total += multiset_partition_count(n - p, p);
  }
  return total;
}

/// Counts sets of distinct positive integers summing to n (enumeration,
/// written independently of the library's backtracking order).
inline std::uint64_t distinct_set_count(std::uint64_t n, std::uint64_t max_part) {
  if (n == 0) return 1;
  std::uint64_t total = 0;
  for (std::uint64_t p = std::min(n, max_part); p >= 1; --p) {
    total += distinct_set_count(n - p, p - 1);
  }
  return total;
}

/// Exact coefficients of prod_{k=1}^{k_max} (1 + z^k) to full degree
/// k_max (k_max + 1) / 2.
inline std::vector<mpz_class> distinct_truncated_product(std::size_t k_max) {
  const std::size_t deg = k_max * (k_max + 1) / 2;
  std::vector<mpz_class> c(deg + 1, mpz_class(0));
  c[0] = 1;
  for (std::size_t k = 1; k <= k_max; ++k) {
    for (std::size_t s = deg; s >= k; --s) {
      c[s] += c[s - k];
      if (s == k) break;
    }
  }
  return c;
}

inline double log_of_mpz(const mpz_class& z) {
  signed long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::numbers::ln2;
}

// ---------------------------------------------------------------- charfn

/// phi_{Z_t}(theta) for the distinct-parts model truncated at k_max factors,
/// by explicit enumeration of the convolved distribution: P(X = n) =
/// a_n t^n / prod_{k<=k_max}(1 + t^k). `mean` and `sigma` are the centering
/// constants the implementation used.
inline std::complex<double> phi_z_by_convolution(const std::vector<mpz_class>& table,
                                                 double r, double mean, double sigma,
                                                 double theta) {
  long double log_norm = 0.0L;
  // The factor count is recoverable from the table degree:
  // deg = k(k+1)/2  =>  k = (-1 + sqrt(1 + 8 deg)) / 2.
  const std::size_t deg = table.size() - 1;
  const std::size_t k_max =
      static_cast<std::size_t>(std::llround((-1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(deg))) / 2.0));
  for (std::size_t k = 1; k <= k_max; ++k) {
    log_norm += std::log1p(std::exp(-r * static_cast<long double>(k)));
  }

  const double th = theta / sigma;
  long double sum_p = 0.0L;
  std::complex<long double> acc{0.0L, 0.0L};
  for (std::size_t n = 0; n < table.size(); ++n) {
    if (table[n] == 0) continue;
    const long double lp = static_cast<long double>(log_of_mpz(table[n])) -
                           r * static_cast<long double>(n) - log_norm;
    const long double p = std::exp(lp);
    sum_p += p;
    const long double ang = th * static_cast<long double>(n);
    acc += p * std::complex<long double>(std::cos(ang), std::sin(ang));
  }
  // The enumeration must itself be a probability distribution.
  if (std::abs(static_cast<double>(sum_p) - 1.0) > 1e-10) {
    return {std::numeric_limits<double>::quiet_NaN(), 0.0};
  }
  const std::complex<long double> center =
      std::exp(std::complex<long double>(0.0L, -static_cast<long double>(theta) * mean / sigma));
  const std::complex<long double> v = acc * center;
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// ------------------------------------------------------------- quadrature

/// Composite 16-point Gauss-Legendre rule: an independent cross-check for
/// the adaptive Simpson engine.
inline double gauss_legendre_16(const std::function<double(double)>& f, double a,
                                double b, int panels) {
  static const std::array<double, 8> nodes = {
      0.0950125098376374402, 0.2816035507792589132, 0.4580167776572273863,
      0.6178762444026437484, 0.7554044083550030339, 0.8656312023878317439,
      0.9445750230732325761, 0.9894009349916499326};
  static const std::array<double, 8> weights = {
      0.1894506104550684963, 0.1826034150449235889, 0.1691565193950025382,
      0.1495959888165767320, 0.1246289712555338720, 0.0951585116824927848,
      0.0622535239386478929, 0.0271524594117540949};
  long double total = 0.0L;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    const double half = 0.5 * h;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      total += weights[i] * half * (f(mid - half * nodes[i]) + f(mid + half * nodes[i]));
    }
  }
  return static_cast<double>(total);
}

// ---------------------------------------------------------------- moments

struct NaiveMoments {
  long double m = 0.0L;
  long double sigma2 = 0.0L;
  long double gamma3 = 0.0L;
};

/// Direct long-double summation of the distinct-parts moment series, no
/// compensation, no tail rule: K terms of the defining sums.
inline NaiveMoments naive_distinct_moments(double r, std::int64_t K) {
  NaiveMoments nm;
  for (std::int64_t k = 1; k <= K; ++k) {
    const long double x = std::exp(-static_cast<long double>(r) * k);
    const long double d = 1.0L + x;
    nm.m += k * x / d;
    nm.sigma2 += static_cast<long double>(k) * k * x / (d * d);
    nm.gamma3 += static_cast<long double>(k) * k * k * (x * x * x + x) / (d * d * d * d);
  }
  return nm;
}

/// The tail constant of the third-moment series by its alternating series
///   C = sum_{m>=0} (-1)^m (m+1)(m+2)(m+3) [ 1/(m+1)^4 + 1/(m+3)^4 ],
/// accelerated by iterated averaging of partial sums.
inline double gamma3_constant_by_series() {
  constexpr int kTerms = 96;
  std::vector<long double> s(kTerms);
  long double partial = 0.0L;
  for (int m = 0; m < kTerms; ++m) {
    const long double a = m + 1.0L, b = m + 2.0L, c = m + 3.0L;
    const long double term = a * b * c * (1.0L / (a * a * a * a) + 1.0L / (c * c * c * c));
    partial += (m % 2 == 0 ? term : -term);
    s[static_cast<std::size_t>(m)] = partial;
  }
  for (int pass = 0; pass + 1 < kTerms; ++pass) {
    for (int i = 0; i + pass + 1 < kTerms; ++i) {
      s[static_cast<std::size_t>(i)] =
          0.5L * (s[static_cast<std::size_t>(i)] + s[static_cast<std::size_t>(i) + 1]);
    }
  }
  return static_cast<double>(s[0]);
}

/// E|X - EX|^3 of a finite law by direct evaluation.
inline double abs_third_central(const std::vector<std::pair<std::int64_t, double>>& support) {
  long double mean = 0.0L;
  for (const auto& [v, p] : support) mean += static_cast<long double>(v) * p;
  long double out = 0.0L;
  for (const auto& [v, p] : support) {
    const long double d = std::abs(static_cast<long double>(v) - mean);
    out += d * d * d * p;
  }
  return static_cast<double>(out);
}

}  // namespace oracle
