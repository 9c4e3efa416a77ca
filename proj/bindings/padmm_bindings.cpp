#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "padmm/gravity.hpp"

namespace py = pybind11;
using namespace padmm;

namespace {

SubproblemStrategy strategy_from(const std::string& s) {
  if (s == "direct") return SubproblemStrategy::kDirect;
  if (s == "linearized") return SubproblemStrategy::kLinearized;
  throw std::invalid_argument("strategy must be 'direct' or 'linearized'");
}

RegScheme scheme_from(const std::string& s) {
  if (s == "general") return RegScheme::kGeneral;
  if (s == "simplified") return RegScheme::kSimplified;
  throw std::invalid_argument("scheme must be 'general' or 'simplified'");
}

py::list report_to_py(const Report& report) {
  py::list out;
  for (const auto& c : report.checks) {
    py::dict d;
    d["check"] = c.check;
    d["pass"] = c.pass;
    d["worst_violation"] = c.worst_violation;
    d["index"] = c.index;
    out.append(d);
  }
  return out;
}

py::dict fit_to_py(const RateFit& fit) {
  py::dict d;
  d["model"] = fit.model == RateModel::kGeometric ? "geometric" : "power";
  d["param"] = fit.param;
  d["r2"] = fit.r_squared;
  d["window"] = py::make_tuple(fit.window_begin, fit.window_end);
  d["exact_convergence"] = fit.exact_convergence;
  return d;
}

}  // namespace

PYBIND11_MODULE(_padmm, m) {
  m.doc() = "Proximal splitting toolkit: two-block solver, convergence "
            "diagnostics, and regularized inverse problems";

  py::class_<LinearMap>(m, "LinearMap")
      .def_static("dense", [](const Matrix& mat) { return LinearMap::dense(mat); })
      .def_static("diagonal", [](const Vector& d) { return LinearMap::diagonal(d); })
      .def_static("identity", &LinearMap::identity)
      .def_static("scaled_identity", &LinearMap::scaled_identity)
      .def_static("zero", &LinearMap::zero)
      .def_static("sum", &LinearMap::sum)
      .def_static("compose", &LinearMap::compose)
      .def_property_readonly("rows", &LinearMap::rows)
      .def_property_readonly("cols", &LinearMap::cols)
      .def("apply", &LinearMap::apply)
      .def("adjoint_apply", &LinearMap::adjoint_apply)
      .def("to_dense", &LinearMap::to_dense)
      .def("operator_norm", &LinearMap::operator_norm);

  py::class_<PsdMap>(m, "PsdMap")
      .def_static("zero", &PsdMap::zero)
      .def_static("diagonal", [](const Vector& d) { return PsdMap::diagonal(d); })
      .def_static("scaled_identity", &PsdMap::scaled_identity)
      .def_static("gram", &PsdMap::gram, py::arg("map"), py::arg("weight"))
      .def_static("shifted_gram", &PsdMap::shifted_gram, py::arg("tau"),
                  py::arg("weight"), py::arg("map"))
      .def_property_readonly("dim", &PsdMap::dim)
      .def("apply", &PsdMap::apply)
      .def("quad", &PsdMap::quad)
      .def("to_dense", &PsdMap::to_dense)
      .def("operator_norm", &PsdMap::operator_norm);

  py::class_<ProxFunction>(m, "ProxFunction")
      .def_static("quadratic", [](const Vector& c) { return ProxFunction::quadratic(c); })
      .def_static("l1", &ProxFunction::l1, py::arg("dim"), py::arg("weight"))
      .def_static("box", [](const Vector& lo, const Vector& hi) {
        return ProxFunction::box(lo, hi);
      })
      .def_static("nonneg", &ProxFunction::nonneg)
      .def_static("free", &ProxFunction::free)
      .def_static("zero", &ProxFunction::zero)
      .def_static("sum_separable", &ProxFunction::sum_separable)
      .def_property_readonly("dim", &ProxFunction::dim)
      .def_property_readonly("is_indicator", &ProxFunction::is_indicator)
      .def_property_readonly("convexity_modulus", &ProxFunction::convexity_modulus)
      .def("value", &ProxFunction::value)
      .def("prox", &ProxFunction::prox, py::arg("t"), py::arg("v"))
      .def("project", &ProxFunction::project)
      .def("subgradient_distance", &ProxFunction::subgradient_distance);

  py::class_<SeparableProblem>(m, "Problem")
      .def(py::init([](const LinearMap& A, const LinearMap& B, const Vector& c,
                       const ProxFunction& f, const ProxFunction& g, const PsdMap& P,
                       const PsdMap& Q, double rho, const std::string& x_strategy,
                       const std::string& y_strategy) {
             return SeparableProblem(A, B, c, f, g, P, Q, rho,
                                     strategy_from(x_strategy),
                                     strategy_from(y_strategy));
           }),
           py::arg("A"), py::arg("B"), py::arg("c"), py::arg("f"), py::arg("g"),
           py::arg("P"), py::arg("Q"), py::arg("rho"), py::arg("x_strategy") = "direct",
           py::arg("y_strategy") = "direct")
      .def_property_readonly("gamma", &SeparableProblem::gamma)
      .def_property_readonly("rho", &SeparableProblem::rho);

  py::class_<KktPoint>(m, "KktPoint")
      .def(py::init([](const Vector& x, const Vector& y, const Vector& lam) {
             return KktPoint{x, y, lam};
           }),
           py::arg("x"), py::arg("y"), py::arg("lam"))
      .def_readonly("x", &KktPoint::x)
      .def_readonly("y", &KktPoint::y)
      .def_readonly("lam", &KktPoint::lam);

  py::class_<IterationTrace>(m, "Trace")
      .def_readonly("du_G2", &IterationTrace::du_G2)
      .def_readonly("objective", &IterationTrace::objective)
      .def_readonly("feasibility", &IterationTrace::feasibility)
      .def_readonly("kkt_norm2", &IterationTrace::kkt_norm2)
      .def_readonly("dy_Q2", &IterationTrace::dy_Q2)
      .def_readonly("dist_ref", &IterationTrace::dist_ref)
      .def_readonly("dist_ref_G2", &IterationTrace::dist_ref_G2)
      .def_readonly("converged", &IterationTrace::converged)
      .def_readonly("xs", &IterationTrace::xs)
      .def_readonly("ys", &IterationTrace::ys)
      .def_readonly("lams", &IterationTrace::lams)
      .def_property_readonly("iterations", &IterationTrace::iterations);

  m.def(
      "solve",
      [](const SeparableProblem& p, size_t max_iter, double tol, bool store_iterates,
         const std::optional<KktPoint>& reference, const std::optional<Vector>& x0,
         const std::optional<Vector>& y0, const std::optional<Vector>& lam0) {
        RunOptions opts;
        opts.store_iterates = store_iterates;
        opts.reference = reference;
        PadmmState init =
            (x0 && y0 && lam0) ? PadmmState::initial(*x0, *y0, *lam0)
                               : PadmmState::zero(p);
        return run(p, init, StopRule{max_iter, tol}, opts);
      },
      py::arg("problem"), py::arg("max_iter") = 1000, py::arg("tol") = 1e-8,
      py::arg("store_iterates") = false, py::arg("reference") = std::nullopt,
      py::arg("x0") = std::nullopt, py::arg("y0") = std::nullopt,
      py::arg("lam0") = std::nullopt);

  m.def("ergodic_iterate", &ergodic_iterate, py::arg("trace"), py::arg("k"));

  m.def(
      "fit_rate",
      [](const std::vector<double>& series, const std::string& model, double window) {
        return fit_to_py(fit_rate(
            series, model == "geometric" ? RateModel::kGeometric : RateModel::kPower,
            window));
      },
      py::arg("series"), py::arg("model") = "geometric",
      py::arg("window_fraction") = 0.5);

  m.def(
      "check_monotonicity_suite",
      [](const IterationTrace& t, std::optional<double> gamma) {
        return report_to_py(check_monotonicity_suite(t, gamma));
      },
      py::arg("trace"), py::arg("gamma") = std::nullopt);

  py::class_<SourceCertificate>(m, "SourceCertificate")
      .def(py::init([](const Vector& lam, const Vector& mu, const Vector& nu) {
             return SourceCertificate{lam, mu, nu};
           }),
           py::arg("lam"), py::arg("mu"), py::arg("nu"))
      .def_readonly("lam", &SourceCertificate::lam_dag)
      .def_readonly("mu", &SourceCertificate::mu_dag)
      .def_readonly("nu", &SourceCertificate::nu_dag);

  py::class_<InverseProblemSpec>(m, "InverseProblem")
      .def(py::init([](const LinearMap& A, const LinearMap& L,
                       const ProxFunction& constraint, const ProxFunction& f,
                       double rho1, double rho2, double rho3, const PsdMap& Q,
                       const Vector& b_delta, double delta) {
             return InverseProblemSpec(A, L, constraint, f, rho1, rho2, rho3, Q, b_delta,
                                       delta);
           }),
           py::arg("A"), py::arg("L"), py::arg("constraint"), py::arg("f"),
           py::arg("rho1"), py::arg("rho2"), py::arg("rho3"), py::arg("Q"),
           py::arg("b_delta"), py::arg("delta"))
      .def_property_readonly("c0", &InverseProblemSpec::c0)
      .def_property_readonly("simplified_compatible",
                             &InverseProblemSpec::simplified_compatible);

  py::class_<RegTrace>(m, "RegTrace")
      .def_readonly("energy", &RegTrace::energy)
      .def_readonly("phi", &RegTrace::phi)
      .def_readonly("err_x", &RegTrace::err_x)
      .def_readonly("err_y", &RegTrace::err_y)
      .def_readonly("err_z", &RegTrace::err_z)
      .def_readonly("feas", &RegTrace::feas);

  py::class_<RegRun>(m, "RegRun").def_readonly("trace", &RegRun::trace);

  m.def(
      "run_regularized",
      [](const InverseProblemSpec& spec, const std::string& scheme, size_t iters,
         const std::optional<Vector>& x_true,
         const std::optional<SourceCertificate>& cert) {
        return run_regularized(spec, scheme_from(scheme), iters,
                               x_true ? &*x_true : nullptr, cert ? &*cert : nullptr);
      },
      py::arg("spec"), py::arg("scheme"), py::arg("iters"),
      py::arg("x_true") = std::nullopt, py::arg("certificate") = std::nullopt);

  m.def("a_priori_stop", &a_priori_stop, py::arg("delta"), py::arg("c_stop") = 1.0);
  m.def(
      "check_ip_bounds",
      [](const RegTrace& t, double rho1, double delta) {
        return report_to_py(check_ip_bounds(t, rho1, delta));
      },
      py::arg("trace"), py::arg("rho1"), py::arg("delta"));
  m.def("validate_certificate", &validate_certificate, py::arg("certificate"),
        py::arg("spec"), py::arg("x_true"), py::arg("tol") = 1e-8);

  m.def("gravity_kernel", &gravity_kernel, py::arg("s"), py::arg("t"), py::arg("depth"));
  m.def("trapezoid_weights", &trapezoid_weights);
  m.def("build_kernel_matrix", &build_kernel_matrix, py::arg("n"), py::arg("depth"));
  m.def("add_noise", &add_noise, py::arg("b"), py::arg("delta"), py::arg("seed"),
        py::arg("weights"));

  py::class_<GravityConfig>(m, "GravityConfig")
      .def(py::init<>())
      .def_readwrite("n", &GravityConfig::n)
      .def_readwrite("depth", &GravityConfig::depth)
      .def_readwrite("rho1", &GravityConfig::rho1)
      .def_readwrite("rho2", &GravityConfig::rho2)
      .def_readwrite("q_scale", &GravityConfig::q_scale)
      .def_readwrite("seed", &GravityConfig::seed)
      .def_readwrite("noise_levels", &GravityConfig::noise_levels)
      .def_readwrite("deep", &GravityConfig::deep);

  py::class_<Table1Row>(m, "TableRow")
      .def_readonly("delta", &Table1Row::delta)
      .def_readonly("err_min", &Table1Row::err_min)
      .def_readonly("iter_min", &Table1Row::iter_min)
      .def_readonly("ratio_half", &Table1Row::ratio_half)
      .def_readonly("ratio_quarter", &Table1Row::ratio_quarter)
      .def_readonly("complete", &Table1Row::complete);

  py::class_<GravityRun>(m, "GravityRun")
      .def_readonly("row", &GravityRun::row)
      .def_readonly("trace", &GravityRun::trace)
      .def_readonly("rel_err", &GravityRun::rel_err)
      .def_readonly("cap", &GravityRun::cap);

  py::class_<GravityProblem>(m, "GravityProblem")
      .def_readonly("weights", &GravityProblem::weights)
      .def_readonly("x_true", &GravityProblem::x_true)
      .def_readonly("b", &GravityProblem::b)
      .def_readonly("cert", &GravityProblem::cert)
      .def("noisy_data", &GravityProblem::noisy_data, py::arg("delta"), py::arg("seed"))
      .def("spec_for", &GravityProblem::spec_for, py::arg("b_delta"), py::arg("delta"));

  m.def("make_gravity_problem", &make_gravity_problem);
  m.def("run_gravity_level", &run_gravity_level, py::arg("problem"), py::arg("delta"),
        py::arg("level_index") = 0, py::arg("max_iter_override") = 0);
  m.def("run_table1", &run_table1);
  m.def("iteration_cap", &iteration_cap);
}
