// Factor families: declarative description of the factor sequence f_k whose
// product defines the series under study.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace prodasym {

enum class FactorKind {
  DistinctParts,     // f_k(z) = 1 + z^k
  GeometricParts,    // f_k(z) = 1 / (1 - z^k)
  CustomPolynomial,  // explicit finite coefficient lists, one per factor
};

/// Parses a non-negative decimal string ("12", "0.25", "3.500") into an exact
/// rational. No exponents, no signs, no floats-through-double.
inline mpq_class parse_exact_decimal(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty coefficient string");
  std::string digits;
  std::size_t frac_len = 0;
  bool seen_dot = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("malformed decimal: " + text);
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') {
      throw std::invalid_argument("malformed decimal (expect non-negative digits): " + text);
    }
    digits.push_back(c);
    if (seen_dot) ++frac_len;
  }
  if (digits.empty()) throw std::invalid_argument("malformed decimal: " + text);
  mpz_class num(digits, 10);
  mpz_class den(1);
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

/// A factor family in the admissible class: every factor has non-negative
/// coefficients, constant term 1, and (for custom families) the non-constant
/// part of factor k starts at degree >= k. Under these conditions the product
/// truncated at n_max factors is exact in all degrees <= n_max.
struct FactorFamily {
  FactorKind kind = FactorKind::DistinctParts;
  // CustomPolynomial only: custom_factors[k-1][j] = coefficient of z^j in f_k.
  std::vector<std::vector<mpq_class>> custom_factors;

  static FactorFamily distinct_parts() { return FactorFamily{FactorKind::DistinctParts, {}}; }
  static FactorFamily geometric_parts() { return FactorFamily{FactorKind::GeometricParts, {}}; }

  static FactorFamily custom(std::vector<std::vector<mpq_class>> factors) {
    FactorFamily fam{FactorKind::CustomPolynomial, std::move(factors)};
    fam.validate();
    return fam;
  }

  /// Document shape: {"factors": [[1, 0, 1], ["1", "0", "0.5"], ...]}.
  /// Coefficients are unsigned integers or decimal strings, parsed exactly;
  /// floating-point JSON numbers are rejected.
  static FactorFamily from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("factors") || !doc["factors"].is_array()) {
      throw std::invalid_argument("custom family document must be {\"factors\": [[...], ...]}");
    }
    std::vector<std::vector<mpq_class>> factors;
    for (const auto& poly : doc["factors"]) {
      if (!poly.is_array()) throw std::invalid_argument("each factor must be a coefficient array");
      std::vector<mpq_class> coeffs;
      for (const auto& c : poly) {
        if (c.is_number_unsigned()) {
          coeffs.emplace_back(static_cast<unsigned long>(c.get<std::uint64_t>()));
        } else if (c.is_string()) {
          coeffs.push_back(parse_exact_decimal(c.get<std::string>()));
        } else if (c.is_number()) {
          throw std::invalid_argument(
              "non-integer JSON numbers are inexact; write the coefficient as a decimal string");
        } else {
          throw std::invalid_argument("coefficients must be unsigned integers or decimal strings");
        }
      }
      factors.push_back(std::move(coeffs));
    }
    return custom(std::move(factors));
  }

  static FactorFamily load_custom(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open custom family file: " + path);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("cannot parse custom family file " + path + ": " + e.what());
    }
    return from_json(doc);
  }

  bool is_custom() const { return kind == FactorKind::CustomPolynomial; }

  /// Number of non-trivial factors: unbounded for the built-in families.
  bool has_finite_factor_count() const { return is_custom(); }
  std::size_t factor_count() const { return custom_factors.size(); }

  void validate() const {
    if (!is_custom()) return;
    if (custom_factors.empty()) {
      throw std::invalid_argument("custom family needs at least one factor");
    }
    for (std::size_t i = 0; i < custom_factors.size(); ++i) {
      const std::size_t k = i + 1;
      const auto& coeffs = custom_factors[i];
      if (coeffs.empty() || coeffs[0] != 1) {
        throw std::invalid_argument("factor " + std::to_string(k) +
                                    ": constant term must be exactly 1");
      }
      for (std::size_t j = 1; j < coeffs.size(); ++j) {
        if (coeffs[j] < 0) {
          throw std::invalid_argument("factor " + std::to_string(k) +
                                      ": coefficients must be non-negative");
        }
        if (coeffs[j] > 0 && j < k) {
          throw std::invalid_argument(
              "factor " + std::to_string(k) + ": non-constant part must start at degree >= " +
              std::to_string(k) + " (degree " + std::to_string(j) + " is set)");
        }
      }
    }
  }
};

}  // namespace prodasym
