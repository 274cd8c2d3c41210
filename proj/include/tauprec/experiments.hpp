#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tauprec/chain.hpp"
#include "tauprec/pcg.hpp"
#include "tauprec/spectral.hpp"

namespace tauprec {

struct ExperimentSpec {
  double theta = 1.0;
  std::vector<int> sizes = {256, 512, 1024, 2048, 4096};
  double rel_tol = 1e-7;
  double threshold = 2.0;
  int max_iter = 1000;
  unsigned seed = 0;
  int dense_cap = kDefaultDenseCap;
  std::string output_path;  // empty writes to stdout
  enum class Format { csv, json } format = Format::csv;
};

// Throws std::invalid_argument unless sizes is nonempty and strictly
// increasing and theta > 0.
void validate(const ExperimentSpec& spec);

// Band comparator exponent: the integer k >= 1 minimizing |2k - theta|,
// ties broken upward (overestimating the zero order is the safe side).
int band_exponent(double theta);

// One table row: PCG iteration counts for the band comparator (column S)
// and the sampled tau preconditioner, plus the preconditioned spectrum
// statistics. Right-hand side is the all-ones vector.
struct TableRow {
  int n = 0;
  int iter_band = 0;
  bool band_converged = false;
  int iter_tau = 0;
  bool tau_converged = false;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int outliers = 0;
  double cluster_fraction = 0.0;
};

TableRow table_row(double theta, int n, double rel_tol, int max_iter, double threshold,
                   int dense_cap);
std::vector<TableRow> run_table(const ExperimentSpec& spec);

// Header: n,iter_S,iter_tau,lambda_min,lambda_max,outliers_gt_2
// Floats use 6 significant digits; rows are newline terminated.
void write_table_csv(std::ostream& out, std::span<const TableRow> rows);
void write_table_json(std::ostream& out, double theta, std::span<const TableRow> rows);
std::vector<TableRow> parse_table_csv(std::istream& in);

// Full sorted spectrum as (index, eigenvalue) pairs for external plotting.
struct FigureData {
  double theta = 0.0;
  int n = 0;
  double threshold = 2.0;
  Eigen::VectorXd eigenvalues;
};
FigureData run_figure(double theta, int n, double threshold, int dense_cap = kDefaultDenseCap);
void write_figure_csv(std::ostream& out, const FigureData& fig);
void write_figure_json(std::ostream& out, const FigureData& fig);

// Single solve with the chosen preconditioner ("tau", "band" or "none").
struct SolveSummary {
  double theta = 0.0;
  int n = 0;
  std::string preconditioner;
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};
SolveSummary run_solve(double theta, int n, const std::string& preconditioner, double rel_tol,
                       int max_iter);
void write_solve_text(std::ostream& out, const SolveSummary& s);
void write_solve_json(std::ostream& out, const SolveSummary& s);

// Spectrum reports, one row per size:
// theta,n,lambda_min,lambda_max,outliers_gt_threshold,cluster_fraction
void write_spectrum_csv(std::ostream& out, std::span<const SpectralReport> reports);
void write_spectrum_json(std::ostream& out, std::span<const SpectralReport> reports);

void write_chain_report_text(std::ostream& out, const ChainReport& report);
void write_chain_report_json(std::ostream& out, const ChainReport& report);

// %.6g rendering used for every float that lands in a table artifact.
std::string format_sig6(double v);

}  // namespace tauprec
