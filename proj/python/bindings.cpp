#include "fracstep/analysis.hpp"
#include "fracstep/convergence.hpp"
#include "fracstep/gl_kernel.hpp"
#include "fracstep/models.hpp"
#include "fracstep/schemes.hpp"
#include "fracstep/validators.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fracstep;

namespace {

Scheme scheme_from(const std::string& s) { return parse_scheme(s); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "GL and NSFD solvers for Caputo fractional systems";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<GLWeights>(m, "GLWeights")
      .def_property_readonly("alpha", [](const GLWeights& w) { return w.alpha().value(); })
      .def_property_readonly("weights",
                             [](const GLWeights& w) { return std::vector<double>(w.weights().begin(), w.weights().end()); })
      .def_property_readonly("cumsum",
                             [](const GLWeights& w) { return std::vector<double>(w.cumsums().begin(), w.cumsums().end()); });

  m.def("gl_weights", [](double alpha, std::size_t n_max) { return gl_weights(FractionalOrder(alpha), n_max); },
        py::arg("alpha"), py::arg("n_max"));

  m.def(
      "discrete_caputo_gl",
      [](double t0, double h, const StateMatrix& values, double alpha, std::size_t k) {
        const SampledPath path(t0, h, values);
        return discrete_caputo_gl(path, gl_weights(FractionalOrder(alpha), k), k);
      },
      py::arg("t0"), py::arg("h"), py::arg("values"), py::arg("alpha"), py::arg("k"));

  py::class_<DecomposedSystem>(m, "DecomposedSystem")
      .def_readonly("name", &DecomposedSystem::name)
      .def_readonly("dim", &DecomposedSystem::dim)
      .def_readonly("params", &DecomposedSystem::params)
      .def("f_plus", [](const DecomposedSystem& s, const Vector& x) { return s.eval_plus(x); })
      .def("f_minus", [](const DecomposedSystem& s, const Vector& x) { return s.eval_minus(x); })
      .def("f", &DecomposedSystem::full)
      .def("jacobian", [](const DecomposedSystem& s, const Vector& x) -> Matrix {
        if (s.jacobian) return (*s.jacobian)(x);
        return jacobian_fd(s, x, 1e-6 * (1.0 + x.lpNorm<Eigen::Infinity>()));
      });

  m.def("make_model", &make_model, py::arg("name"), py::arg("params") = std::map<std::string, double>{});
  m.def("model_names", &model_names);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("passed", &ValidationReport::pass)
      .def_readonly("findings", &ValidationReport::findings)
      .def_readonly("max_consistency_error", &ValidationReport::max_consistency_error)
      .def_readonly("min_monotone_increment", &ValidationReport::min_monotone_increment);
  m.def("validate_decomposition", &validate_decomposition, py::arg("system"), py::arg("n_samples") = 1000,
        py::arg("box_max") = kDefaultBoxMax, py::arg("seed") = 42);
  m.def("check_quasi_monotone", &check_quasi_monotone, py::arg("system"), py::arg("n_samples") = 1000,
        py::arg("box_max") = kDefaultBoxMax, py::arg("seed") = 42);

  py::class_<Trajectory>(m, "Trajectory")
      .def_property_readonly("t", [](const Trajectory& tr) {
        Vector t(static_cast<Eigen::Index>(tr.size()));
        for (std::size_t n = 0; n < tr.size(); ++n) t[static_cast<Eigen::Index>(n)] = tr.grid.t(n);
        return t;
      })
      .def_readonly("states", &Trajectory::states)
      .def_property_readonly("scheme", [](const Trajectory& tr) { return std::string(to_string(tr.scheme)); })
      .def_property_readonly("alpha", [](const Trajectory& tr) { return tr.alpha.value(); })
      .def_property_readonly("negativity", [](const Trajectory& tr) {
        std::vector<std::tuple<std::size_t, int, double>> out;
        for (const auto& e : tr.negativity) out.emplace_back(e.step, e.component, e.value);
        return out;
      });

  m.def(
      "integrate",
      [](const DecomposedSystem& sys, const std::string& scheme, double alpha, const Vector& x0, double T,
         double h, double t0, bool gl_explicit, double newton_tol, int newton_max_iter) {
        SolverOptions opts;
        opts.gl_explicit = gl_explicit;
        opts.newton_tol = newton_tol;
        opts.newton_max_iter = newton_max_iter;
        py::gil_scoped_release release;
        return integrate(sys, scheme_from(scheme), FractionalOrder(alpha), x0, Grid::over(t0, T, h), opts);
      },
      py::arg("system"), py::arg("scheme"), py::arg("alpha"), py::arg("x0"), py::arg("T"), py::arg("h"),
      py::arg("t0") = 0.0, py::arg("gl_explicit") = false, py::arg("newton_tol") = 1e-12,
      py::arg("newton_max_iter") = 50);

  m.def("eig2", [](const Eigen::Matrix2d& a) {
    const auto l = eig2(a);
    return std::vector<Complex>{l[0], l[1]};
  });

  m.def(
      "predator_prey_equilibria",
      [](const std::map<std::string, double>& params) {
        const auto eq = predator_prey_equilibria(PredatorPreyParams::from_map(params));
        py::dict d;
        d["R0"] = eq.R0;
        d["P0"] = eq.P0;
        d["P1"] = eq.P1;
        d["P2"] = eq.P2 ? py::cast(*eq.P2) : py::none();
        d["reason"] = eq.p2_reason;
        d["residual"] = eq.p2_residual;
        return d;
      },
      py::arg("params") = std::map<std::string, double>{});

  m.def(
      "stability_report",
      [](const std::map<std::string, double>& params, const std::vector<double>& alphas) {
        std::vector<FractionalOrder> orders;
        for (double a : alphas) orders.emplace_back(a);
        const auto rep = stability_report(PredatorPreyParams::from_map(params), orders);
        py::list points;
        for (const auto& pt : rep.points) {
          py::dict d;
          d["label"] = pt.label;
          d["kind"] = std::string(to_string(pt.kind));
          d["exists"] = pt.exists;
          d["reason"] = pt.reason;
          if (pt.exists) {
            d["point"] = pt.point;
            d["eigenvalues"] = pt.stability.eigenvalues;
            d["marginal_alpha"] = pt.stability.marginal_alpha ? py::cast(*pt.stability.marginal_alpha) : py::none();
            d["pattern"] = pt.stability.real_sign_pattern();
            std::vector<std::string> verdicts;
            for (auto v : pt.verdicts) verdicts.emplace_back(to_string(v));
            d["verdicts"] = verdicts;
          }
          points.append(d);
        }
        py::dict out;
        out["R0"] = rep.R0;
        out["points"] = points;
        out["p1_consistent"] = rep.p1_consistent;
        return out;
      },
      py::arg("params") = std::map<std::string, double>{}, py::arg("alphas") = std::vector<double>{0.5, 0.75, 1.0});

  m.def(
      "rate_table",
      [](const DecomposedSystem& sys, double alpha, const Vector& x0, double T, const std::vector<double>& ladder,
         double h_star) {
        RateTable t = [&] {
          py::gil_scoped_release release;
          return rate_table(sys, FractionalOrder(alpha), x0, T, ladder, h_star);
        }();
        py::dict d;
        d["alpha"] = alpha;
        d["steps"] = t.steps;
        d["xi"] = t.xi;
        d["rho"] = t.rho;
        d["reference_h"] = t.reference_h;
        return d;
      },
      py::arg("system"), py::arg("alpha"), py::arg("x0"), py::arg("T"), py::arg("ladder"), py::arg("h_star"));
}
