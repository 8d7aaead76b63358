// Exact coefficient oracle: truncated product expansion and specialized
// partition counting, all in exact arithmetic.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "prodasym/factor_family.hpp"

namespace prodasym {

/// Exact coefficients a_0..a_{n_max} of the truncated product. Entries are
/// rationals to cover CustomPolynomial; the built-in families always produce
/// integers (denominator 1).
struct CoefficientTable {
  std::size_t n_max = 0;
  std::vector<mpq_class> coeffs;  // size n_max + 1

  const mpq_class& operator[](std::size_t n) const { return coeffs.at(n); }

  /// Entry as an exact integer; throws if the entry is not integral.
  mpz_class integer_at(std::size_t n) const {
    const mpq_class& q = coeffs.at(n);
    if (q.get_den() != 1) {
      throw std::invalid_argument("coefficient " + std::to_string(n) + " is not an integer");
    }
    return q.get_num();
  }
};

/// Expands prod_{k=1}^{n_max} f_k(z) exactly up to degree n_max.
///
/// Truncation lemma: factor k's non-constant part starts at degree >= k
/// (by construction for the built-ins, by the validated invariant for custom
/// families), so factors with k > n_max only multiply degrees <= n_max by
/// their constant term 1. The table below is therefore exact for the full
/// infinite product in every degree <= n_max, and recomputing with a larger
/// n_max leaves lower entries unchanged.
inline CoefficientTable expand_product(const FactorFamily& family, std::size_t n_max) {
  family.validate();
  // The built-in families stay in integer arithmetic throughout.
  if (!family.is_custom()) {
    std::vector<mpz_class> z(n_max + 1, mpz_class(0));
    z[0] = 1;
    if (family.kind == FactorKind::DistinctParts) {
      // (1 + z^k): descending in-place shifted add.
      for (std::size_t k = 1; k <= n_max; ++k) {
        for (std::size_t s = n_max; s >= k; --s) {
          z[s] += z[s - k];
          if (s == k) break;
        }
      }
    } else {
      // 1/(1 - z^k) = 1 + z^k + z^{2k} + ...: ascending in-place add.
      for (std::size_t k = 1; k <= n_max; ++k) {
        for (std::size_t s = k; s <= n_max; ++s) {
          z[s] += z[s - k];
        }
      }
    }
    std::vector<mpq_class> c;
    c.reserve(n_max + 1);
    for (auto& v : z) c.emplace_back(std::move(v));
    return CoefficientTable{n_max, std::move(c)};
  }

  std::vector<mpq_class> c(n_max + 1, mpq_class(0));
  c[0] = 1;
  switch (family.kind) {
    case FactorKind::DistinctParts:
    case FactorKind::GeometricParts:
      break;  // handled above
    case FactorKind::CustomPolynomial:
      for (std::size_t i = 0; i < family.custom_factors.size(); ++i) {
        const std::size_t k = i + 1;
        if (k > n_max) break;
        const auto& poly = family.custom_factors[i];
        // Constant term is 1 and every other term has degree >= k, so a
        // descending pass reads only not-yet-updated entries.
        for (std::size_t s = n_max; s >= k; --s) {
          mpq_class acc = c[s];
          const std::size_t j_hi = std::min(poly.size() - 1, s);
          for (std::size_t j = k; j <= j_hi; ++j) {
            if (poly[j] != 0) acc += poly[j] * c[s - j];
          }
          c[s] = acc;
          if (s == k) break;
        }
      }
      break;
  }
  return CoefficientTable{n_max, std::move(c)};
}

/// q(0..n_max) where q(n) counts partitions of n into pairwise-distinct
/// positive parts. One-dimensional DP, each part added once, exact integers.
inline std::vector<mpz_class> distinct_partition_table(std::size_t n_max) {
  std::vector<mpz_class> q(n_max + 1, mpz_class(0));
  q[0] = 1;
  for (std::size_t part = 1; part <= n_max; ++part) {
    for (std::size_t s = n_max; s >= part; --s) {
      q[s] += q[s - part];
      if (s == part) break;
    }
  }
  return q;
}

inline mpz_class distinct_partition_count(std::size_t n) {
  return distinct_partition_table(n)[n];
}

/// Independent oracle: counts subsets of {1..n} with sum n by explicit
/// backtracking. Exponential-time guard: n <= 60.
inline mpz_class brute_force_distinct(std::size_t n) {
  if (n > 60) {
    throw std::invalid_argument("brute_force_distinct: n > 60 exceeds the enumeration guard");
  }
  struct Walker {
    unsigned long count = 0;
    void walk(std::size_t remaining, std::size_t min_part) {
      for (std::size_t p = min_part; p <= remaining; ++p) {
        if (p == remaining) {
          ++count;
        } else {
          walk(remaining - p, p + 1);
        }
      }
    }
  } w;
  if (n == 0) return mpz_class(1);  // the empty partition
  w.walk(n, 1);
  return mpz_class(w.count);
}

}  // namespace prodasym
