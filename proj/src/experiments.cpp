#include "tauprec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tauprec/errors.hpp"
#include "tauprec/symbols.hpp"
#include "tauprec/tau.hpp"
#include "tauprec/toeplitz.hpp"

namespace tauprec {

void validate(const ExperimentSpec& spec) {
  if (!(spec.theta > 0.0)) throw std::invalid_argument("spec: theta must be positive");
  if (spec.sizes.empty()) throw std::invalid_argument("spec: sizes must be nonempty");
  for (std::size_t i = 0; i + 1 < spec.sizes.size(); ++i)
    if (spec.sizes[i] >= spec.sizes[i + 1])
      throw std::invalid_argument("spec: sizes must be strictly increasing");
  if (spec.sizes.front() < 1) throw std::invalid_argument("spec: sizes must be positive");
  if (!(spec.rel_tol > 0.0) || !(spec.rel_tol < 1.0))
    throw std::invalid_argument("spec: rel_tol must lie in (0, 1)");
  if (spec.max_iter < 1) throw std::invalid_argument("spec: max_iter must be >= 1");
}

int band_exponent(double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("band_exponent: theta must be positive");
  return std::max(1, static_cast<int>(std::floor(theta / 2.0 + 0.5)));
}

std::string format_sig6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

TableRow table_row(double theta, int n, double rel_tol, int max_iter, double threshold,
                   int dense_cap) {
  const Symbol f = Symbol::abs_pow(theta);
  const ToeplitzOperator T = build_toeplitz(f, n);
  const TauOperator P = build_tau(f, n);
  const BandedCholesky band(build_toeplitz(Symbol::laplace_pow(band_exponent(theta)), n));
  const Eigen::VectorXd rhs = Eigen::VectorXd::Ones(n);

  SolveConfig cfg;
  cfg.rel_tol = rel_tol;
  cfg.max_iter = max_iter;
  auto apply_T = [&T](const Eigen::VectorXd& x) { return T.apply(x); };

  TableRow row;
  row.n = n;
  const SolveResult with_band =
      pcg_solve(apply_T, [&band](const Eigen::VectorXd& r) { return band.solve(r); }, rhs, cfg);
  row.iter_band = with_band.iterations;
  row.band_converged = with_band.converged;
  const SolveResult with_tau =
      pcg_solve(apply_T, [&P](const Eigen::VectorXd& r) { return P.solve(r); }, rhs, cfg);
  row.iter_tau = with_tau.iterations;
  row.tau_converged = with_tau.converged;

  const Eigen::VectorXd eigs = preconditioned_spectrum(T, P, dense_cap);
  row.lambda_min = eigs[0];
  row.lambda_max = eigs[n - 1];
  row.outliers = outlier_count(eigs, threshold);
  int inside = 0;
  for (int i = 0; i < n; ++i)
    if (eigs[i] >= 0.9 && eigs[i] <= 1.1) ++inside;
  row.cluster_fraction = static_cast<double>(inside) / n;
  return row;
}

std::vector<TableRow> run_table(const ExperimentSpec& spec) {
  validate(spec);
  std::vector<TableRow> rows;
  rows.reserve(spec.sizes.size());
  for (int n : spec.sizes)
    rows.push_back(
        table_row(spec.theta, n, spec.rel_tol, spec.max_iter, spec.threshold, spec.dense_cap));
  return rows;
}

void write_table_csv(std::ostream& out, std::span<const TableRow> rows) {
  out << "n,iter_S,iter_tau,lambda_min,lambda_max,outliers_gt_2\n";
  for (const TableRow& r : rows)
    out << r.n << ',' << r.iter_band << ',' << r.iter_tau << ',' << format_sig6(r.lambda_min)
        << ',' << format_sig6(r.lambda_max) << ',' << r.outliers << '\n';
}

void write_table_json(std::ostream& out, double theta, std::span<const TableRow> rows) {
  out << "{\n  \"theta\": " << format_sig6(theta) << ",\n  \"rows\": [\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const TableRow& r = rows[i];
    out << "    {\"n\": " << r.n << ", \"iter_S\": " << r.iter_band
        << ", \"iter_tau\": " << r.iter_tau << ", \"lambda_min\": " << format_sig6(r.lambda_min)
        << ", \"lambda_max\": " << format_sig6(r.lambda_max) << ", \"outliers_gt_2\": " << r.outliers
        << ", \"band_converged\": " << (r.band_converged ? "true" : "false")
        << ", \"tau_converged\": " << (r.tau_converged ? "true" : "false") << "}"
        << (i + 1 < rows.size() ? "," : "") << '\n';
  }
  out << "  ]\n}\n";
}

std::vector<TableRow> parse_table_csv(std::istream& in) {
  std::vector<TableRow> rows;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      if (line != "n,iter_S,iter_tau,lambda_min,lambda_max,outliers_gt_2")
        throw std::runtime_error("parse_table_csv: unexpected header: " + line);
      saw_header = true;
      continue;
    }
    TableRow r;
    std::istringstream ss(line);
    char comma;
    if (!(ss >> r.n >> comma >> r.iter_band >> comma >> r.iter_tau >> comma >> r.lambda_min >>
          comma >> r.lambda_max >> comma >> r.outliers))
      throw std::runtime_error("parse_table_csv: malformed row: " + line);
    rows.push_back(r);
  }
  if (!saw_header) throw std::runtime_error("parse_table_csv: missing header");
  return rows;
}

FigureData run_figure(double theta, int n, double threshold, int dense_cap) {
  const Symbol f = Symbol::abs_pow(theta);
  FigureData fig;
  fig.theta = theta;
  fig.n = n;
  fig.threshold = threshold;
  fig.eigenvalues = preconditioned_spectrum(build_toeplitz(f, n), build_tau(f, n), dense_cap);
  return fig;
}

void write_figure_csv(std::ostream& out, const FigureData& fig) {
  out << "# theta," << format_sig6(fig.theta) << '\n';
  out << "# n," << fig.n << '\n';
  out << "# threshold," << format_sig6(fig.threshold) << '\n';
  out << "index,eigenvalue\n";
  for (int i = 0; i < fig.eigenvalues.size(); ++i)
    out << (i + 1) << ',' << format_sig6(fig.eigenvalues[i]) << '\n';
}

void write_figure_json(std::ostream& out, const FigureData& fig) {
  out << "{\n  \"theta\": " << format_sig6(fig.theta) << ",\n  \"n\": " << fig.n
      << ",\n  \"threshold\": " << format_sig6(fig.threshold) << ",\n  \"eigenvalues\": [";
  for (int i = 0; i < fig.eigenvalues.size(); ++i)
    out << (i ? ", " : "") << format_sig6(fig.eigenvalues[i]);
  out << "]\n}\n";
}

SolveSummary run_solve(double theta, int n, const std::string& preconditioner, double rel_tol,
                       int max_iter) {
  const Symbol f = Symbol::abs_pow(theta);
  const ToeplitzOperator T = build_toeplitz(f, n);
  const Eigen::VectorXd rhs = Eigen::VectorXd::Ones(n);
  SolveConfig cfg;
  cfg.rel_tol = rel_tol;
  cfg.max_iter = max_iter;
  cfg.record_history = true;
  auto apply_T = [&T](const Eigen::VectorXd& x) { return T.apply(x); };

  SolveResult res;
  if (preconditioner == "tau") {
    const TauOperator P = build_tau(f, n);
    res = pcg_solve(apply_T, [&P](const Eigen::VectorXd& r) { return P.solve(r); }, rhs, cfg);
  } else if (preconditioner == "band") {
    const BandedCholesky band(build_toeplitz(Symbol::laplace_pow(band_exponent(theta)), n));
    res = pcg_solve(apply_T, [&band](const Eigen::VectorXd& r) { return band.solve(r); }, rhs, cfg);
  } else if (preconditioner == "none") {
    res = cg_solve(apply_T, rhs, cfg);
  } else {
    throw std::invalid_argument("run_solve: preconditioner must be tau, band or none");
  }
  SolveSummary s;
  s.theta = theta;
  s.n = n;
  s.preconditioner = preconditioner;
  s.iterations = res.iterations;
  s.relative_residual = res.residual_history.empty() ? 0.0 : res.residual_history.back();
  s.converged = res.converged;
  return s;
}

void write_solve_text(std::ostream& out, const SolveSummary& s) {
  out << "theta=" << format_sig6(s.theta) << " n=" << s.n << " precond=" << s.preconditioner
      << " iterations=" << s.iterations << " relative_residual=" << format_sig6(s.relative_residual)
      << " converged=" << (s.converged ? "yes" : "no") << '\n';
}

void write_solve_json(std::ostream& out, const SolveSummary& s) {
  out << "{\"theta\": " << format_sig6(s.theta) << ", \"n\": " << s.n << ", \"precond\": \""
      << s.preconditioner << "\", \"iterations\": " << s.iterations
      << ", \"relative_residual\": " << format_sig6(s.relative_residual)
      << ", \"converged\": " << (s.converged ? "true" : "false") << "}\n";
}

void write_spectrum_csv(std::ostream& out, std::span<const SpectralReport> reports) {
  out << "theta,n,lambda_min,lambda_max,outliers_gt_threshold,cluster_fraction\n";
  for (const SpectralReport& r : reports)
    out << format_sig6(r.theta) << ',' << r.n << ',' << format_sig6(r.lambda_min) << ','
        << format_sig6(r.lambda_max) << ',' << r.outliers_above << ','
        << format_sig6(r.cluster_fraction) << '\n';
}

void write_spectrum_json(std::ostream& out, std::span<const SpectralReport> reports) {
  out << "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const SpectralReport& r = reports[i];
    out << "  {\"theta\": " << format_sig6(r.theta) << ", \"n\": " << r.n
        << ", \"lambda_min\": " << format_sig6(r.lambda_min)
        << ", \"lambda_max\": " << format_sig6(r.lambda_max)
        << ", \"outliers_gt_threshold\": " << r.outliers_above
        << ", \"cluster_fraction\": " << format_sig6(r.cluster_fraction) << "}"
        << (i + 1 < reports.size() ? "," : "") << '\n';
  }
  out << "]\n";
}

namespace {
void write_link_text(std::ostream& out, const ChainLink& link) {
  out << "  " << link.pair << ": interval [" << format_sig6(link.alpha) << ", "
      << format_sig6(link.beta) << "], outliers below/above " << link.outliers_below << "/"
      << link.outliers_above << '\n';
}
}  // namespace

void write_chain_report_text(std::ostream& out, const ChainReport& r) {
  out << "chain theta=" << format_sig6(r.theta) << " n=" << r.n << " (k=" << r.k
      << ", r=" << format_sig6(r.r) << ")\n";
  for (const ChainLink& link : r.links) write_link_text(out, link);
  out << "  composed budget: [" << format_sig6(r.budget.alpha) << ", " << format_sig6(r.budget.beta)
      << "], r-/r+ " << r.budget.r_minus << "/" << r.budget.r_plus << '\n';
  out << "  direct spectrum of P4^-1 P0: [" << format_sig6(r.direct_min) << ", "
      << format_sig6(r.direct_max) << "], below alpha " << r.direct_below_alpha << ", above beta "
      << r.direct_above_beta << ", above 2: " << r.direct_above_threshold << '\n';
  out << "  verdict: " << (r.pass ? "PASS" : "FAIL") << '\n';
}

void write_chain_report_json(std::ostream& out, const ChainReport& r) {
  out << "{\n  \"theta\": " << format_sig6(r.theta) << ",\n  \"n\": " << r.n
      << ",\n  \"k\": " << r.k << ",\n  \"r\": " << format_sig6(r.r) << ",\n  \"links\": [\n";
  for (std::size_t i = 0; i < r.links.size(); ++i) {
    const ChainLink& link = r.links[i];
    out << "    {\"pair\": \"" << link.pair << "\", \"alpha\": " << format_sig6(link.alpha)
        << ", \"beta\": " << format_sig6(link.beta) << ", \"outliers_below\": " << link.outliers_below
        << ", \"outliers_above\": " << link.outliers_above << "}"
        << (i + 1 < r.links.size() ? "," : "") << '\n';
  }
  out << "  ],\n  \"budget\": {\"alpha\": " << format_sig6(r.budget.alpha)
      << ", \"beta\": " << format_sig6(r.budget.beta) << ", \"r_minus\": " << r.budget.r_minus
      << ", \"r_plus\": " << r.budget.r_plus << "},\n  \"direct\": {\"min\": "
      << format_sig6(r.direct_min) << ", \"max\": " << format_sig6(r.direct_max)
      << ", \"below_alpha\": " << r.direct_below_alpha << ", \"above_beta\": " << r.direct_above_beta
      << ", \"above_2\": " << r.direct_above_threshold << "},\n  \"pass\": "
      << (r.pass ? "true" : "false") << "\n}\n";
}

}  // namespace tauprec
