// prodasym: saddle-point coefficient asymptotics for infinite products.
//
// Subcommands emit deterministic CSV (one `# config:` comment, a header row,
// then data) to stdout or --out. Exit codes: 0 success, 1 usage error,
// 2 numeric-domain error.
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prodasym/cli.hpp"

namespace {

void add_common(CLI::App* cmd, prodasym::RunConfig& cfg) {
  cmd->add_option("--family", cfg.family_spec,
                  "distinct | geometric | custom:<path.json>");
  cmd->add_option("--tol", cfg.tol, "series truncation tolerance (relative)");
  cmd->add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance (absolute)");
  cmd->add_option("--out", cfg.out_path, "write CSV to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  using Command = prodasym::RunConfig::Command;
  prodasym::RunConfig cfg;

  CLI::App app{"Saddle-point asymptotics of power-series coefficients of infinite products"};
  app.require_subcommand(1);

  auto* exact = app.add_subcommand(
      "exact", "exact coefficients a_0..a_n of the truncated product (CSV: n,a_n)");
  exact->add_option("--n-max", cfg.n_max, "highest degree")->required();
  add_common(exact, cfg);

  auto* estimate = app.add_subcommand(
      "estimate", "asymptotic estimate of a_n (CSV: n,method,log_estimate,estimate,r,t)");
  estimate->add_option("--n", cfg.n, "target degree")->required();
  estimate->add_option("--method", cfg.method, "general | equivalents | closed");
  add_common(estimate, cfg);

  auto* compare = app.add_subcommand(
      "compare",
      "exact distinct-parts counts vs the closed-form law on a geometric n grid "
      "(CSV: n,exact,estimate_closed,ratio)");
  compare->add_option("--n-max", cfg.n_max, "largest n")->required();
  compare->add_option("--start", cfg.start, "first n");
  compare->add_option("--geometric-stride", cfg.stride, "multiplicative step between rows");
  add_common(compare, cfg);

  auto* saddle = app.add_subcommand(
      "saddle", "saddle radius for a target degree (CSV: n,method,r,t,m,residual)");
  saddle->add_option("--n", cfg.n, "target degree")->required();
  saddle->add_flag("--exact", cfg.exact_saddle, "solve m(t) = n numerically");
  add_common(saddle, cfg);

  auto* charfn = app.add_subcommand(
      "charfn",
      "normalized characteristic function samples (CSV: theta,re,im,abs,gauss,abs_diff)");
  charfn->add_option("--r", cfg.r, "radial parameter r = -ln t")->required();
  charfn->add_option("--theta-max", cfg.theta_max, "grid spans [-theta-max, theta-max]");
  charfn->add_option("--points", cfg.points, "number of grid points");
  add_common(charfn, cfg);

  auto* diagnose = app.add_subcommand("diagnose", "normal-limit diagnostics");
  diagnose->require_subcommand(1);
  auto* clt = diagnose->add_subcommand(
      "clt",
      "limit-condition report per radius (CSV: r,t,liapounov_ratio,sup_var_ratio,"
      "liapounov_scaled,mean_equivalent_gap,strong_gaussian)");
  std::string grid_txt = "0.5,0.2,0.1,0.05,0.02";
  clt->add_option("--r-grid", grid_txt, "comma-separated r values");
  add_common(clt, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (exact->parsed()) {
    cfg.command = Command::Exact;
  } else if (estimate->parsed()) {
    cfg.command = Command::Estimate;
  } else if (compare->parsed()) {
    cfg.command = Command::Compare;
  } else if (saddle->parsed()) {
    cfg.command = Command::Saddle;
  } else if (charfn->parsed()) {
    cfg.command = Command::CharFn;
  } else {
    cfg.command = Command::DiagnoseClt;
    cfg.r_grid.clear();
    std::stringstream ss(grid_txt);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        cfg.r_grid.push_back(std::stod(cell));
      } catch (const std::exception&) {
        std::cerr << "usage_error: bad r-grid entry '" << cell << "'\n";
        return 1;
      }
    }
  }

  return prodasym::run_main(cfg);
}
