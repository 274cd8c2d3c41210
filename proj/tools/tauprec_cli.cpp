// Experiment driver: builds ill-conditioned symmetric Toeplitz systems from
// |t|^theta symbols, preconditions them in the sine-transform algebra, and
// emits iteration tables, spectra and multi-step verification reports.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>

#include "tauprec/experiments.hpp"
#include "tauprec/symbols.hpp"

namespace {

using tauprec::ExperimentSpec;

struct OutputTarget {
  std::unique_ptr<std::ofstream> file;
  std::ostream& stream() { return file ? *file : std::cout; }
};

OutputTarget open_output(const std::string& path) {
  OutputTarget target;
  if (!path.empty()) {
    target.file = std::make_unique<std::ofstream>(path);
    if (!*target.file) throw std::runtime_error("cannot open output file: " + path);
  }
  return target;
}

int require_single_size(const std::vector<int>& sizes, const char* cmd) {
  if (sizes.size() != 1)
    throw CLI::ValidationError(std::string(cmd) + " expects exactly one entry in --sizes");
  return sizes.front();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tau-algebra preconditioning experiments for Toeplitz systems"};
  app.require_subcommand(1);

  double theta = 1.0;
  std::vector<int> sizes = {256, 512, 1024, 2048, 4096};
  double tol = 1e-7;
  double threshold = 2.0;
  std::string precond = "tau";
  unsigned seed = 0;
  std::string format = "csv";
  std::string output;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--theta", theta, "zero order of the symbol |t|^theta");
    cmd->add_option("--sizes", sizes, "comma separated matrix sizes")->delimiter(',');
    cmd->add_option("--tol", tol, "PCG relative residual tolerance");
    cmd->add_option("--threshold", threshold, "outlier counting threshold");
    cmd->add_option("--precond", precond, "preconditioner: tau, band or none")
        ->check(CLI::IsMember({"tau", "band", "none"}));
    cmd->add_option("--seed", seed, "seed for randomized diagnostics");
    cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", output, "output path (default stdout)");
  };

  CLI::App* cmd_table = app.add_subcommand("table", "iteration counts and spectrum statistics");
  CLI::App* cmd_figure = app.add_subcommand("figure", "full preconditioned spectrum as plot data");
  CLI::App* cmd_solve = app.add_subcommand("solve", "single PCG solve with the all-ones rhs");
  CLI::App* cmd_spectrum = app.add_subcommand("spectrum", "spectrum statistics per size");
  CLI::App* cmd_verify = app.add_subcommand("verify", "multi-step preconditioning verification");
  for (CLI::App* cmd : {cmd_table, cmd_figure, cmd_solve, cmd_spectrum, cmd_verify})
    add_common(cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentSpec spec;
    spec.theta = theta;
    spec.sizes = sizes;
    spec.rel_tol = tol;
    spec.threshold = threshold;
    spec.seed = seed;
    spec.output_path = output;
    spec.format = format == "json" ? ExperimentSpec::Format::json : ExperimentSpec::Format::csv;
    const bool json = spec.format == ExperimentSpec::Format::json;

    if (cmd_table->parsed()) {
      tauprec::validate(spec);
      const std::vector<tauprec::TableRow> rows = tauprec::run_table(spec);
      OutputTarget out = open_output(output);
      if (json)
        tauprec::write_table_json(out.stream(), theta, rows);
      else
        tauprec::write_table_csv(out.stream(), rows);
    } else if (cmd_figure->parsed()) {
      tauprec::validate(spec);
      const int n = require_single_size(sizes, "figure");
      const tauprec::FigureData fig = tauprec::run_figure(theta, n, threshold);
      OutputTarget out = open_output(output);
      if (json)
        tauprec::write_figure_json(out.stream(), fig);
      else
        tauprec::write_figure_csv(out.stream(), fig);
    } else if (cmd_solve->parsed()) {
      tauprec::validate(spec);
      OutputTarget out = open_output(output);
      for (int n : sizes) {
        const tauprec::SolveSummary s = tauprec::run_solve(theta, n, precond, tol, spec.max_iter);
        if (json)
          tauprec::write_solve_json(out.stream(), s);
        else
          tauprec::write_solve_text(out.stream(), s);
      }
    } else if (cmd_spectrum->parsed()) {
      tauprec::validate(spec);
      std::vector<tauprec::SpectralReport> reports;
      reports.reserve(sizes.size());
      for (int n : sizes) reports.push_back(tauprec::spectral_report(theta, n, threshold));
      OutputTarget out = open_output(output);
      if (json)
        tauprec::write_spectrum_json(out.stream(), reports);
      else
        tauprec::write_spectrum_csv(out.stream(), reports);
    } else if (cmd_verify->parsed()) {
      const int n = require_single_size(sizes, "verify");
      const tauprec::ChainReport report = tauprec::verify_chain(theta, n);
      OutputTarget out = open_output(output);
      if (json)
        tauprec::write_chain_report_json(out.stream(), report);
      else
        tauprec::write_chain_report_text(out.stream(), report);
      return report.pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
