#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tauprec/block_ops.hpp"
#include "tauprec/chain.hpp"
#include "tauprec/experiments.hpp"
#include "tauprec/pcg.hpp"
#include "tauprec/spectral.hpp"
#include "tauprec/symbols.hpp"
#include "tauprec/tau.hpp"
#include "tauprec/toeplitz.hpp"
#include "tauprec/transforms.hpp"

namespace py = pybind11;
using namespace tauprec;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Toeplitz systems from |t|^theta symbols and their sine-transform "
            "algebra preconditioners.";

  py::class_<Symbol>(m, "Symbol")
      .def_static("abs_pow", &Symbol::abs_pow, py::arg("theta"))
      .def_static("laplace_pow", &Symbol::laplace_pow, py::arg("k"))
      .def_static("zero", &Symbol::zero)
      .def("__call__", &Symbol::operator(), py::arg("t"))
      .def("__mul__", [](const Symbol& a, const Symbol& b) { return a * b; })
      .def("__rmul__", [](const Symbol& s, double c) { return c * s; })
      .def_property_readonly("zero_order", &Symbol::zero_order)
      .def_property_readonly("is_polynomial", &Symbol::is_polynomial)
      .def("__repr__", [](const Symbol& s) { return "Symbol(" + s.key() + ")"; });

  m.def("fourier_coeff", &fourier_coeff, py::arg("symbol"), py::arg("l"));
  m.def("fourier_coeffs", &fourier_coeffs, py::arg("symbol"), py::arg("n"));
  m.def("grid_samples", &grid_samples, py::arg("symbol"), py::arg("n"));
  m.def("dst1", &dst1, py::arg("x"));

  py::class_<ToeplitzOperator>(m, "ToeplitzOperator")
      .def_property_readonly("n", &ToeplitzOperator::size)
      .def_property_readonly("first_column", &ToeplitzOperator::first_column)
      .def_property_readonly("bandwidth",
                             [](const ToeplitzOperator& T) -> py::object {
                               if (T.bandwidth()) return py::int_(*T.bandwidth());
                               return py::none();
                             })
      .def("matvec", &ToeplitzOperator::apply, py::arg("x"))
      .def("dense", &ToeplitzOperator::dense, py::arg("cap") = kDefaultDenseCap);
  m.def("build_toeplitz", &build_toeplitz, py::arg("symbol"), py::arg("n"));
  m.def("band_solve", &band_solve, py::arg("T"), py::arg("b"));

  py::class_<TauOperator>(m, "TauOperator")
      .def_property_readonly("n", &TauOperator::size)
      .def_property_readonly("samples", &TauOperator::samples)
      .def_property_readonly("power", &TauOperator::power)
      .def_property_readonly("eigenvalues", &TauOperator::eigenvalues)
      .def("apply", &TauOperator::apply, py::arg("x"))
      .def("solve", &TauOperator::solve, py::arg("b"))
      .def("fractional", &TauOperator::fractional, py::arg("factor"))
      .def("dense", &TauOperator::dense, py::arg("cap") = kDefaultDenseCap);
  m.def("build_tau", &build_tau, py::arg("symbol"), py::arg("n"), py::arg("power") = 1.0);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("x", &SolveResult::x)
      .def_readonly("iterations", &SolveResult::iterations)
      .def_readonly("residual_history", &SolveResult::residual_history)
      .def_readonly("converged", &SolveResult::converged);

  m.def(
      "pcg_solve",
      [](const ToeplitzOperator& T, const TauOperator& P, const Eigen::VectorXd& b, double rel_tol,
         int max_iter, bool record_history) {
        return pcg_solve([&](const Eigen::VectorXd& x) { return T.apply(x); },
                         [&](const Eigen::VectorXd& r) { return P.solve(r); }, b,
                         SolveConfig{rel_tol, max_iter, record_history});
      },
      py::arg("T"), py::arg("P"), py::arg("b"), py::arg("rel_tol") = 1e-7,
      py::arg("max_iter") = 1000, py::arg("record_history") = false,
      "PCG on the Toeplitz operator with a tau preconditioner, all-zeros start.");
  m.def(
      "cg_solve",
      [](const ToeplitzOperator& T, const Eigen::VectorXd& b, double rel_tol, int max_iter,
         bool record_history) {
        return cg_solve([&](const Eigen::VectorXd& x) { return T.apply(x); }, b,
                        SolveConfig{rel_tol, max_iter, record_history});
      },
      py::arg("T"), py::arg("b"), py::arg("rel_tol") = 1e-7, py::arg("max_iter") = 1000,
      py::arg("record_history") = false);

  py::class_<SpectralReport>(m, "SpectralReport")
      .def_readonly("n", &SpectralReport::n)
      .def_readonly("theta", &SpectralReport::theta)
      .def_readonly("eigenvalues", &SpectralReport::eigenvalues)
      .def_readonly("lambda_min", &SpectralReport::lambda_min)
      .def_readonly("lambda_max", &SpectralReport::lambda_max)
      .def_readonly("threshold", &SpectralReport::threshold)
      .def_readonly("outliers_above", &SpectralReport::outliers_above)
      .def_readonly("cluster_fraction", &SpectralReport::cluster_fraction);
  m.def("preconditioned_spectrum", &preconditioned_spectrum, py::arg("T"), py::arg("P"),
        py::arg("dense_cap") = kDefaultDenseCap);
  m.def("spectral_report", &spectral_report, py::arg("theta"), py::arg("n"),
        py::arg("threshold") = 2.0, py::arg("dense_cap") = kDefaultDenseCap);
  m.def("rayleigh_lower_diag", &rayleigh_lower_diag, py::arg("theta"), py::arg("n"),
        py::arg("trials"), py::arg("seed") = 0);

  py::class_<EquivBounds>(m, "EquivBounds")
      .def_readonly("lower", &EquivBounds::lower)
      .def_readonly("upper", &EquivBounds::upper);
  m.def("equiv_bounds", &equiv_bounds, py::arg("k"));

  py::class_<ChainLink>(m, "ChainLink")
      .def_readonly("pair", &ChainLink::pair)
      .def_readonly("alpha", &ChainLink::alpha)
      .def_readonly("beta", &ChainLink::beta)
      .def_readonly("outliers_below", &ChainLink::outliers_below)
      .def_readonly("outliers_above", &ChainLink::outliers_above);
  py::class_<ChainBudget>(m, "ChainBudget")
      .def_readonly("alpha", &ChainBudget::alpha)
      .def_readonly("beta", &ChainBudget::beta)
      .def_readonly("r_minus", &ChainBudget::r_minus)
      .def_readonly("r_plus", &ChainBudget::r_plus);
  py::class_<ChainReport>(m, "ChainReport")
      .def_readonly("theta", &ChainReport::theta)
      .def_readonly("n", &ChainReport::n)
      .def_readonly("k", &ChainReport::k)
      .def_readonly("r", &ChainReport::r)
      .def_readonly("links", &ChainReport::links)
      .def_readonly("budget", &ChainReport::budget)
      .def_readonly("direct_min", &ChainReport::direct_min)
      .def_readonly("direct_max", &ChainReport::direct_max)
      .def_readonly("direct_above_threshold", &ChainReport::direct_above_threshold)
      .def_readonly("passed", &ChainReport::pass);
  m.def("verify_chain", &verify_chain, py::arg("theta"), py::arg("n"),
        py::arg("dense_cap") = kDefaultDenseCap);

  py::class_<TableRow>(m, "TableRow")
      .def_readonly("n", &TableRow::n)
      .def_readonly("iter_band", &TableRow::iter_band)
      .def_readonly("iter_tau", &TableRow::iter_tau)
      .def_readonly("band_converged", &TableRow::band_converged)
      .def_readonly("tau_converged", &TableRow::tau_converged)
      .def_readonly("lambda_min", &TableRow::lambda_min)
      .def_readonly("lambda_max", &TableRow::lambda_max)
      .def_readonly("outliers", &TableRow::outliers)
      .def_readonly("cluster_fraction", &TableRow::cluster_fraction);
  m.def(
      "table_row",
      [](double theta, int n, double rel_tol, double threshold) {
        return table_row(theta, n, rel_tol, 1000, threshold, kDefaultDenseCap);
      },
      py::arg("theta"), py::arg("n"), py::arg("rel_tol") = 1e-7, py::arg("threshold") = 2.0);
  m.def("band_exponent", &band_exponent, py::arg("theta"));
}
