#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dlab/cli/config.hpp"
#include "dlab/cli/run.hpp"
#include "dlab/errors.hpp"
#include "dlab/kdv/picard.hpp"
#include "dlab/lattice/arithmetic.hpp"
#include "dlab/lattice/count_table.hpp"
#include "dlab/lattice/divisor.hpp"
#include "dlab/strichartz/coefficients.hpp"
#include "dlab/weyl/weyl_sum.hpp"

namespace py = pybind11;
using dlab::cplx;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

// Python ints are unbounded, so counts past 2^64 go through their decimal text.
py::int_ to_pyint(dlab::u128 v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(dlab::to_decimal(v).c_str(), nullptr, 10));
}

dlab::FourierSeries series_from(const CArray& coeffs) {
  const auto n = coeffs.shape(0);
  if (coeffs.ndim() != 1 || n % 2 == 0) throw dlab::ConfigError("coefficients need odd length 2B+1 (modes -B..B)");
  const int band = static_cast<int>(n / 2);
  dlab::FourierSeries f(dlab::Torus::TwoPi, band);
  const cplx* src = coeffs.data();
  for (py::ssize_t i = 0; i < n; ++i) f.at(static_cast<int>(i) - band) = src[i];
  return f;
}

CArray array_from(const dlab::FourierSeries& f) {
  const auto c = f.coefficients();
  return CArray(static_cast<py::ssize_t>(c.size()), c.data());
}

dlab::NonlinearitySpec spec_from(std::vector<double> p1, std::vector<double> p2, bool mean_removed) {
  return {std::move(p1), std::move(p2), mean_removed};
}

py::dict summary(const dlab::PicardResult& r) {
  py::list states;
  for (const auto& s : r.states)
    states.append(py::dict(py::arg("j") = s.j, py::arg("diff_norm") = s.diff_norm,
                           py::arg("terms") = s.terms, py::arg("discarded_l2") = s.discarded_l2,
                           py::arg("pruned_bound") = s.pruned_bound));
  return py::dict(py::arg("states") = states, py::arg("contraction") = r.contraction,
                  py::arg("sampled") = r.sampled, py::arg("ratios") = dlab::contraction_ratios(r),
                  py::arg("report") = r.report);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Compiled core of dlab";

  static py::exception<dlab::ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
  static py::exception<dlab::BudgetExceeded> budget_error(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const dlab::ConfigError& e) {
      py::set_error(config_error, e.what());
    } catch (const dlab::DomainError& e) {
      py::set_error(config_error, e.what());
    } catch (const dlab::BudgetExceeded& e) {
      py::set_error(budget_error, e.what());
    }
  });

  m.def(
      "count_S",
      [](int d, int b, int N, unsigned threads) {
        dlab::LatticeBudget budget;
        budget.threads = threads;
        dlab::u128 v;
        {
          py::gil_scoped_release nogil;
          v = dlab::count_S({d, b, N}, budget);
        }
        return to_pyint(v);
      },
      py::arg("d"), py::arg("b"), py::arg("N"), py::arg("threads") = 0,
      "Number of solutions of the b-fold power-sum system over [-N, N].");

  m.def(
      "power_sum_distribution",
      [](int d, int b, int N) {
        const auto t = dlab::power_sum_distribution({d, b, N});
        py::dict out;
        for (const auto& e : t.entries()) out[py::make_tuple(e.A, e.B)] = e.value;
        return out;
      },
      py::arg("d"), py::arg("b"), py::arg("N"), "Map (A, B) -> number of b-tuples with those power sums.");

  m.def(
      "divisor_scan",
      [](int d, int N) {
        const auto s = dlab::divisor_scan(d, N);
        return py::dict(py::arg("solutions") = s.solutions, py::arg("violations") = s.violations,
                        py::arg("max_count") = s.max_count, py::arg("argmax") = py::make_tuple(s.argmax_A, s.argmax_B));
      },
      py::arg("d"), py::arg("N"));

  m.def(
      "even_norm",
      [](const CArray& a, int b, int d) {
        if (a.ndim() != 1 || a.shape(0) % 2 == 0) throw dlab::ConfigError("coefficients need odd length 2N+1");
        const int N = static_cast<int>(a.shape(0) / 2);
        dlab::CoefficientVector v(N, std::vector<cplx>(a.data(), a.data() + a.shape(0)), false);
        return dlab::even_norm(v, b, d);
      },
      py::arg("a"), py::arg("b"), py::arg("d"), "L^{2b} norm on the 2-torus of sum a_n e(nx + n^d t).");

  m.def("ramanujan_sum", [](std::int64_t q, std::int64_t n) { return dlab::ramanujan_sum(q, n); }, py::arg("q"),
        py::arg("n"));

  m.def(
      "weyl_sum", [](std::int64_t N, int d, double t) { return dlab::weyl_sum(N, d, t); }, py::arg("N"),
      py::arg("d"), py::arg("t"), "sum_{n=1}^N e(n^d t).");

  m.def(
      "linear_flow", [](const CArray& phi, double t) { return array_from(dlab::linear_flow(series_from(phi), t)); },
      py::arg("phi"), py::arg("t"));

  m.def(
      "first_iterate",
      [](const CArray& phi, double t, std::vector<double> p1, std::vector<double> p2, bool mean_removed) {
        const auto u = dlab::first_iterate(series_from(phi), spec_from(std::move(p1), std::move(p2), mean_removed));
        return array_from(u.at(t));
      },
      py::arg("phi"), py::arg("t"), py::arg("p1") = std::vector<double>{}, py::arg("p2") = std::vector<double>{},
      py::arg("mean_removed") = false, "Fourier coefficients of the first Picard iterate at time t.");

  m.def(
      "illposedness_scan",
      [](std::vector<double> p1, std::vector<double> p2, double s, double eps, double t, std::vector<int> Ns) {
        const auto fit = dlab::illposedness_scan(spec_from(std::move(p1), std::move(p2), false), s, eps, t, Ns);
        py::list rows;
        for (const auto& r : fit.rows)
          rows.append(py::dict(py::arg("N") = r.N, py::arg("norm") = r.norm, py::arg("dominance") = r.dominance));
        return py::dict(py::arg("slope") = fit.slope, py::arg("rows") = rows, py::arg("warning") = fit.warning);
      },
      py::arg("p1"), py::arg("p2"), py::arg("s"), py::arg("eps"), py::arg("t"), py::arg("Ns"));

  m.def(
      "picard_solve",
      [](const CArray& phi, std::vector<double> p1, std::vector<double> p2, double delta, int max_iter,
         int band_cap) {
        dlab::PicardOptions opt;
        opt.delta = delta;
        opt.max_iter = max_iter;
        opt.band_cap = band_cap;
        const auto f = series_from(phi);
        const auto spec = spec_from(std::move(p1), std::move(p2), false);
        dlab::PicardResult r;
        {
          py::gil_scoped_release nogil;
          r = dlab::picard_solve(f, spec, opt);
        }
        return summary(r);
      },
      py::arg("phi"), py::arg("p1") = std::vector<double>{}, py::arg("p2") = std::vector<double>{},
      py::arg("delta") = 1e-3, py::arg("max_iter") = 8, py::arg("band_cap") = 64,
      "Picard iteration summary: per-iterate diff norms, term counts and contraction flag.");

  m.def(
      "run",
      [](const std::string& command, const std::map<std::string, std::string>& params,
         const std::filesystem::path& out) {
        const auto cfg = dlab::cli::ExperimentConfig::resolve(command, {}, params, out);
        return py::module_::import("json").attr("loads")(dlab::cli::run(cfg).dump());
      },
      py::arg("command"), py::arg("params"), py::arg("out"),
      "Same as the dlab command line tool; returns the manifest.");
}
