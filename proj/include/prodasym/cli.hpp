// Command execution behind the CLI front end: validated run configurations
// mapped to deterministic CSV streams.
#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "prodasym/asymptotics.hpp"
#include "prodasym/charfn.hpp"
#include "prodasym/csv.hpp"
#include "prodasym/diagnostics.hpp"
#include "prodasym/errors.hpp"
#include "prodasym/factor_family.hpp"
#include "prodasym/moments.hpp"
#include "prodasym/saddle.hpp"
#include "prodasym/series.hpp"

namespace prodasym {

struct RunConfig {
  enum class Command { Exact, Estimate, Compare, Saddle, CharFn, DiagnoseClt };

  Command command = Command::Exact;
  std::string family_spec = "distinct";  // distinct | geometric | custom:<path.json>

  std::int64_t n_max = 10;      // exact, compare
  std::int64_t n = 100;         // estimate, saddle
  std::string method = "closed";  // estimate: general | equivalents | closed
  bool exact_saddle = false;    // saddle: numeric solve instead of closed form
  std::int64_t start = 100;     // compare
  std::int64_t stride = 4;      // compare (geometric stride)
  double r = 0.1;               // charfn
  double theta_max = 2.0;       // charfn
  std::int64_t points = 65;     // charfn
  std::vector<double> r_grid = {0.5, 0.2, 0.1, 0.05, 0.02};  // diagnose clt

  double tol = 1e-12;
  double quad_tol = 1e-6;
  std::string out_path;  // empty = stdout

  void validate() const {
    if (!(tol > 0.0) || !(quad_tol > 0.0)) {
      throw std::invalid_argument("tolerances must be strictly positive");
    }
    switch (command) {
      case Command::Exact:
        if (n_max < 0) throw std::invalid_argument("n-max must be >= 0");
        break;
      case Command::Estimate:
        if (n < 1) throw std::invalid_argument("n must be >= 1");
        if (method != "general" && method != "equivalents" && method != "closed") {
          throw std::invalid_argument("method must be one of general|equivalents|closed");
        }
        break;
      case Command::Compare:
        if (start < 1 || stride < 2 || n_max < start) {
          throw std::invalid_argument("compare needs start >= 1, stride >= 2, n-max >= start");
        }
        break;
      case Command::Saddle:
        if (n < 1) throw std::invalid_argument("n must be >= 1");
        break;
      case Command::CharFn:
        if (!(r > 0.0)) throw std::invalid_argument("r must be > 0");
        if (!(theta_max > 0.0)) throw std::invalid_argument("theta-max must be > 0");
        if (points < 2) throw std::invalid_argument("points must be >= 2");
        break;
      case Command::DiagnoseClt:
        if (r_grid.empty()) throw std::invalid_argument("r-grid must be non-empty");
        for (double rr : r_grid) {
          if (!(rr > 0.0)) throw std::invalid_argument("r-grid entries must be > 0");
        }
        break;
    }
  }

  FactorFamily family() const {
    if (family_spec == "distinct") return FactorFamily::distinct_parts();
    if (family_spec == "geometric") return FactorFamily::geometric_parts();
    if (family_spec.rfind("custom:", 0) == 0) {
      return FactorFamily::load_custom(family_spec.substr(7));
    }
    throw std::invalid_argument("unknown family '" + family_spec +
                                "' (expect distinct|geometric|custom:<path.json>)");
  }
};

namespace detail {

inline std::string rational_cell(const mpq_class& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

inline double log_of_mpz(const mpz_class& z) {
  signed long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::numbers::ln2;
}

/// exp(log_value) as a CSV cell; empty above 1e300 per the output contract.
inline std::string estimate_cell(double log_value) {
  if (log_value > 300.0 * std::numbers::ln10) return "";
  return fmt17(std::exp(log_value));
}

inline const char* method_name(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::GeneralSaddle: return "general";
    case EstimateMethod::Equivalents: return "equivalents";
    case EstimateMethod::ClosedForm: return "closed";
  }
  return "?";
}

}  // namespace detail

/// Executes one command, writing the configuration comment, the header row,
/// and data rows to `out`. Deterministic: identical configs yield identical
/// bytes. Throws std::invalid_argument on usage errors and
/// prodasym::domain_error on numeric-domain failures.
inline void run(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  std::ostringstream config_line;
  config_line << "# config: family=" << cfg.family_spec << " tol=" << cfg.tol
              << " quad-tol=" << cfg.quad_tol;

  switch (cfg.command) {
    case RunConfig::Command::Exact: {
      const FactorFamily fam = cfg.family();
      out << config_line.str() << " command=exact n-max=" << cfg.n_max << "\n";
      out << "n,a_n\n";
      const CoefficientTable table = expand_product(fam, static_cast<std::size_t>(cfg.n_max));
      for (std::int64_t n = 0; n <= cfg.n_max; ++n) {
        out << n << "," << detail::rational_cell(table[static_cast<std::size_t>(n)]) << "\n";
      }
      break;
    }
    case RunConfig::Command::Estimate: {
      const FactorFamily fam = cfg.family();
      AsymptoticEstimate est;
      if (cfg.method == "general") {
        est = estimate_general(fam, cfg.n, 1e-9, cfg.tol);
      } else if (fam.kind != FactorKind::DistinctParts) {
        throw std::invalid_argument("method '" + cfg.method +
                                    "' uses closed-form scales available only for the distinct family");
      } else if (cfg.method == "equivalents") {
        est = estimate_equivalents(cfg.n, cfg.tol);
      } else {
        est = closed_form_q(cfg.n);
      }
      out << config_line.str() << " command=estimate n=" << cfg.n
          << " method=" << cfg.method << "\n";
      out << "n,method,log_estimate,estimate,r,t\n";
      out << est.n << "," << detail::method_name(est.method) << ","
          << fmt17(est.log_estimate) << "," << detail::estimate_cell(est.log_estimate)
          << "," << fmt17(est.saddle.rp.r) << "," << fmt17(est.saddle.rp.t) << "\n";
      break;
    }
    case RunConfig::Command::Compare: {
      out << config_line.str() << " command=compare start=" << cfg.start
          << " geometric-stride=" << cfg.stride << " n-max=" << cfg.n_max << "\n";
      out << "n,exact,estimate_closed,ratio\n";
      std::vector<std::int64_t> ns;
      for (std::int64_t n = cfg.start; n <= cfg.n_max; n *= cfg.stride) ns.push_back(n);
      const auto table = distinct_partition_table(static_cast<std::size_t>(ns.back()));
      for (std::int64_t n : ns) {
        const mpz_class& exact = table[static_cast<std::size_t>(n)];
        const AsymptoticEstimate est = closed_form_q(n);
        const double ratio = std::exp(detail::log_of_mpz(exact) - est.log_estimate);
        out << n << "," << exact.get_str() << "," << detail::estimate_cell(est.log_estimate)
            << "," << fmt17(ratio) << "\n";
      }
      break;
    }
    case RunConfig::Command::Saddle: {
      const FactorFamily fam = cfg.family();
      SaddleSolution sol;
      if (cfg.exact_saddle) {
        sol = solve_saddle(fam, cfg.n);
      } else if (fam.kind != FactorKind::DistinctParts) {
        throw std::invalid_argument(
            "closed-form saddle is defined for the distinct family; pass --exact");
      } else {
        sol = closed_form_saddle(cfg.n);
      }
      out << config_line.str() << " command=saddle n=" << cfg.n
          << " exact=" << (cfg.exact_saddle ? 1 : 0) << "\n";
      out << "n,method,r,t,m,residual\n";
      out << sol.n << ","
          << (sol.method == SaddleMethod::NumericExact ? "exact" : "closed") << ","
          << fmt17(sol.rp.r) << "," << fmt17(sol.rp.t) << "," << fmt17(sol.m_at_solution)
          << "," << fmt17(sol.residual) << "\n";
      break;
    }
    case RunConfig::Command::CharFn: {
      const FactorFamily fam = cfg.family();
      const PhiZEvaluator phi(fam, RadialParam::from_r(cfg.r), cfg.tol);
      out << config_line.str() << " command=charfn r=" << cfg.r
          << " theta-max=" << cfg.theta_max << " points=" << cfg.points << "\n";
      out << "theta,re,im,abs,gauss,abs_diff\n";
      for (std::int64_t i = 0; i < cfg.points; ++i) {
        const double theta = -cfg.theta_max +
                             2.0 * cfg.theta_max * static_cast<double>(i) /
                                 static_cast<double>(cfg.points - 1);
        const CharFnSample s = phi(theta);
        const double gauss = std::exp(-0.5 * theta * theta);
        out << fmt17(theta) << "," << fmt17(s.value.real()) << "," << fmt17(s.value.imag())
            << "," << fmt17(std::abs(s.value)) << "," << fmt17(gauss) << ","
            << fmt17(std::abs(s.value - gauss)) << "\n";
      }
      break;
    }
    case RunConfig::Command::DiagnoseClt: {
      const FactorFamily fam = cfg.family();
      std::vector<CltReport> reports;
      reports.reserve(cfg.r_grid.size());
      for (double rr : cfg.r_grid) {
        reports.push_back(clt_report(fam, RadialParam::from_r(rr), cfg.tol, cfg.quad_tol));
      }
      std::ostringstream grid_txt;
      for (std::size_t i = 0; i < cfg.r_grid.size(); ++i) {
        grid_txt << (i ? "," : "") << cfg.r_grid[i];
      }
      out << config_line.str() << " command=diagnose-clt r-grid=" << grid_txt.str() << "\n";
      out << "r,t,liapounov_ratio,sup_var_ratio,liapounov_scaled,mean_equivalent_gap,"
             "strong_gaussian\n";
      for (const CltReport& rep : reports) {
        out << fmt17(rep.rp.r) << "," << fmt17(rep.rp.t) << "," << fmt17(rep.liapounov_ratio)
            << "," << fmt17(rep.sup_var_ratio) << "," << fmt17(rep.liapounov_scaled) << ","
            << (rep.mean_equivalent_gap ? fmt17(*rep.mean_equivalent_gap) : "") << ","
            << fmt17(rep.strong_gaussian) << "\n";
      }
      break;
    }
  }
}

/// Wrapper used by the binary: routes output, maps failures to exit codes
/// (0 success, 1 usage error, 2 domain error) with one machine-parsable
/// reason line on stderr.
inline int run_main(const RunConfig& cfg) {
  try {
    if (cfg.out_path.empty()) {
      run(cfg, std::cout);
    } else {
      std::ofstream file(cfg.out_path);
      if (!file) throw std::invalid_argument("cannot open output file: " + cfg.out_path);
      run(cfg, file);
    }
    return 0;
  } catch (const domain_error& e) {
    std::cerr << "domain_error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage_error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace prodasym
