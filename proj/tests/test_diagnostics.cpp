#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "oracle_helpers.hpp"
#include "prodasym/diagnostics.hpp"

using namespace prodasym;

namespace {
constexpr double kC3 = 2.366422535874080751811;
}

TEST_CASE("clt report at r=0.1: rates and signs", "[diagnostics]") {
  const auto rep = clt_report(FactorFamily::distinct_parts(), RadialParam::from_r(0.1));
  CHECK(rep.liapounov_ratio >= 0.0);
  CHECK(rep.sup_var_ratio > 0.0);
  CHECK(rep.sup_var_ratio <= 1.0);
  CHECK(std::isfinite(rep.strong_gaussian));
  CHECK_FALSE(rep.mean_equivalent_gap.has_value());
  CHECK(std::abs(rep.liapounov_ratio / (kC3 * std::sqrt(0.1)) - 1.0) <= 0.10);
}

TEST_CASE("clt report fields trend the way the limits require", "[diagnostics]") {
  double prev_liap = 1e300, prev_sup = 1e300, prev_sg = 1e300;
  double scaled_lo = 1e300, scaled_hi = 0.0;
  for (double r : {0.5, 0.2, 0.1}) {
    const auto rep = clt_report(FactorFamily::distinct_parts(), RadialParam::from_r(r));
    CHECK(rep.liapounov_ratio < prev_liap);
    CHECK(rep.sup_var_ratio < prev_sup);
    CHECK(rep.strong_gaussian < prev_sg);
    prev_liap = rep.liapounov_ratio;
    prev_sup = rep.sup_var_ratio;
    prev_sg = rep.strong_gaussian;
    scaled_lo = std::min(scaled_lo, rep.liapounov_scaled);
    scaled_hi = std::max(scaled_hi, rep.liapounov_scaled);
  }
  CHECK(scaled_hi / scaled_lo <= 1.25);
}

TEST_CASE("n-indexed clt report carries the mean gap", "[diagnostics]") {
  const auto rep = clt_report_at(FactorFamily::distinct_parts(), 400);
  REQUIRE(rep.mean_equivalent_gap.has_value());
  CHECK(*rep.mean_equivalent_gap == Catch::Approx(-3.136955744414726e-4).margin(1e-9));
}

TEST_CASE("a single-factor family saturates the variance ratio", "[diagnostics]") {
  const auto fam = FactorFamily::custom({{1, 1}});
  const auto rep = clt_report(fam, RadialParam::from_r(0.5));
  CHECK(rep.sup_var_ratio == 1.0);
  CHECK(std::isfinite(rep.strong_gaussian));
}

TEST_CASE("taylor remainder bound: pinned cases", "[diagnostics]") {
  const auto fam = FactorFamily::distinct_parts();
  const auto rp = RadialParam::from_r(0.1);
  const double sigma = std::sqrt(aggregate_moments(fam, rp).sigma2);
  const auto law = factor_law(fam, 5, rp);
  CHECK(taylor_remainder_check(law, sigma, 0.0));
  for (double theta : {0.1, 1.0, 5.0}) {
    CHECK(taylor_remainder_check(law, sigma, theta));
  }
  CHECK_THROWS_AS(taylor_remainder_check(law, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("taylor remainder bound: randomized finite laws", "[diagnostics][property]") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> n_atoms(2, 6);
  std::uniform_int_distribution<std::int64_t> value(0, 20);
  std::uniform_real_distribution<double> mass(0.05, 1.0);
  std::uniform_real_distribution<double> sig(0.5, 10.0);
  std::uniform_real_distribution<double> th(-5.0, 5.0);

  for (int trial = 0; trial < 1000; ++trial) {
    const int atoms = n_atoms(rng);
    FactorLaw law;
    law.index = 1;
    double norm = 0.0;
    for (int a = 0; a < atoms; ++a) {
      law.support.emplace_back(value(rng), mass(rng));
      norm += law.support.back().second;
    }
    for (auto& [v, p] : law.support) p /= norm;
    double mean = 0.0;
    for (const auto& [v, p] : law.support) mean += static_cast<double>(v) * p;
    double var = 0.0;
    for (const auto& [v, p] : law.support) {
      var += (static_cast<double>(v) - mean) * (static_cast<double>(v) - mean) * p;
    }
    law.mean = mean;
    law.variance = var;
    law.abs_central_3 = oracle::abs_third_central(law.support);
    REQUIRE(taylor_remainder_check(law, sig(rng), th(rng)));
  }
}

namespace {

// u_{n,t} = s 2^{-n} (1 - t): sup -> 0, sums to s(1-t) -> 0.
ProductLimitFamily scaled_dyadic(std::complex<double> s) {
  ProductLimitFamily fam;
  fam.name = "dyadic";
  fam.u = [s](std::int64_t n, double t) {
    return s * std::pow(2.0, -static_cast<double>(n)) * (1.0 - t);
  };
  fam.sum_closed_form = [s](double t) { return s * (1.0 - t); };
  fam.limit = {0.0, 0.0};
  fam.abs_sum_bound = std::abs(s);
  fam.sup_abs = [s](double t) { return 0.5 * std::abs(s) * (1.0 - t); };
  fam.tail_abs = [s](std::int64_t n, double t) {
    return std::abs(s) * (1.0 - t) * std::pow(2.0, -static_cast<double>(n));
  };
  return fam;
}

// u_{n,t} = S (1-t) t^{n-1}: sums to S exactly at every t, sup -> 0.
ProductLimitFamily spread_geometric(std::complex<double> S) {
  ProductLimitFamily fam;
  fam.name = "spread-geometric";
  fam.u = [S](std::int64_t n, double t) {
    return S * (1.0 - t) * std::pow(t, static_cast<double>(n - 1));
  };
  fam.sum_closed_form = [S](double) { return S; };
  fam.limit = S;
  fam.abs_sum_bound = std::abs(S);
  fam.sup_abs = [S](double t) { return std::abs(S) * (1.0 - t); };
  fam.tail_abs = [S](std::int64_t n, double t) {
    return std::abs(S) * std::pow(t, static_cast<double>(n));
  };
  return fam;
}

}  // namespace

TEST_CASE("product limit harness: synthetic families", "[diagnostics]") {
  const std::array<double, 4> grid = {0.9, 0.99, 0.999, 0.9999};

  SECTION("identically zero terms give the unit product") {
    auto fam = scaled_dyadic({0.0, 0.0});
    const auto rep = product_limit_check(fam, grid);
    CHECK(rep.pass);
    for (const auto& row : rep.rows) {
      CHECK(row.product == std::complex<double>(1.0, 0.0));
      CHECK(row.deviation == 0.0);
    }
  }
  SECTION("real dyadic family converges to 1") {
    const auto rep = product_limit_check(scaled_dyadic({0.7, 0.0}), grid);
    CHECK(rep.pass);
    CHECK(rep.final_deviation_to_limit <= 1e-3);
  }
  SECTION("complex dyadic family (imaginary scale) converges to 1") {
    // s = -i theta^2 with theta = 1.3
    const auto rep = product_limit_check(scaled_dyadic({0.0, -1.69}), grid);
    CHECK(rep.pass);
    CHECK(rep.final_deviation_to_limit <= 1e-3);
  }
  SECTION("mass-spreading family converges to e^S with S complex") {
    const auto rep = product_limit_check(spread_geometric({0.3, -0.2}), grid);
    CHECK(rep.pass);
    CHECK(rep.final_deviation_to_limit <= 1e-3);
    // Deviation from e^{S(t)} shrinks as t -> 1.
    double prev = 1e300;
    for (const auto& row : rep.rows) {
      CHECK(row.deviation < prev + 1e-15);
      prev = row.deviation;
    }
  }
}
