#include "seqclass/commands.hpp"
#include "seqclass/montecarlo.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace seqclass;

namespace {

Dist to_dist(const std::vector<double>& v) { return Dist(v); }

ProblemInstance make_instance(const std::vector<double>& P0, const std::vector<double>& P1, double alpha,
                              double beta, double epsilon, const LambdaSpec& lam) {
  ProblemInstance inst{to_dist(P0), to_dist(P1), alpha, beta, EpsilonFloor(epsilon), lam};
  inst.validate();
  return inst;
}

py::dict report_dict(const ExponentReport& r) {
  py::dict d;
  d["renyi_term"] = r.renyi_term;
  d["kappa"] = r.kappa;
  d["mu"] = r.mu;
  d["nu"] = r.nu;
  d["e_fix"] = r.e_fix;
  d["e_seq"] = r.e_seq;
  d["e_semi1"] = r.e_semi1;
  d["e_semi2"] = r.e_semi2;
  d["kappa_status"] = to_string(r.kappa_status);
  return d;
}

}  // namespace

PYBIND11_MODULE(_seqclass, m) {
  m.doc() = "error exponents and two-phase tests for universal binary classification";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InsufficientData>(m, "InsufficientData", PyExc_RuntimeError);

  m.def("kl", [](const std::vector<double>& q, const std::vector<double>& p) { return kl(to_dist(q), to_dist(p)); });
  m.def("renyi_frac", [](const std::vector<double>& P, const std::vector<double>& Q, double alpha) {
    const auto r = renyi_frac(to_dist(P), to_dist(Q), alpha);
    return py::make_tuple(r.value, r.minimizer.to_vector());
  });
  m.def("gjs", [](const std::vector<double>& P, const std::vector<double>& Q, double alpha) {
    const auto r = gjs(to_dist(P), to_dist(Q), alpha);
    return py::make_tuple(r.value, r.minimizer.to_vector());
  });
  m.def("bht_tradeoff", [](const std::vector<double>& P0, const std::vector<double>& P1, double e0) {
    return bht_tradeoff(to_dist(P0), to_dist(P1), e0);
  });
  m.def("eta_n", &eta_n, py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("d"));

  py::class_<LambdaSpec>(m, "LambdaSpec")
      .def_static("constant", &LambdaSpec::constant, py::arg("lambda0"))
      .def_static("scaled_renyi", &LambdaSpec::scaled_renyi, py::arg("xi"), py::arg("offset") = 0.0)
      .def("describe", &LambdaSpec::describe)
      .def("certifies_infinite_kappa", &LambdaSpec::certifies_infinite_kappa)
      .def("__repr__", &LambdaSpec::describe);

  py::class_<ProblemInstance>(m, "ProblemInstance")
      .def(py::init(&make_instance), py::arg("P0"), py::arg("P1"), py::arg("alpha"), py::arg("beta"),
           py::arg("epsilon"), py::arg("lam"))
      .def_property_readonly("P0", [](const ProblemInstance& i) { return i.P0.to_vector(); })
      .def_property_readonly("P1", [](const ProblemInstance& i) { return i.P1.to_vector(); })
      .def_readonly("alpha", &ProblemInstance::alpha)
      .def_readonly("beta", &ProblemInstance::beta)
      .def("lambda_true", &ProblemInstance::lambda_true);

  m.def("report", [](const ProblemInstance& inst) { return report_dict(report(inst)); });
  m.def("kappa", [](const ProblemInstance& inst) { return kappa(inst); });
  m.def("mu", [](const ProblemInstance& inst) { return mu(inst); });
  m.def("nu", &nu);
  m.def("e_fix", [](const ProblemInstance& inst) { return e_fix(inst); });

  m.def(
      "run_trials",
      [](const std::string& setup, const ProblemInstance& inst, int theta, long n, long trials, std::uint64_t seed) {
        TrialReport r;
        {
          py::gil_scoped_release nogil;
          r = run_trials(setup_from_string(setup), inst, theta, n, trials, seed);
        }
        py::dict d;
        d["setup"] = to_string(r.setup);
        d["n"] = r.n;
        d["trials"] = r.trials;
        d["errors_theta0"] = r.errors_theta0;
        d["errors_theta1"] = r.errors_theta1;
        d["mean_tau"] = r.mean_tau();
        d["ci95_tau"] = r.ci95_tau;
        d["tau_hist"] = r.tau_hist;
        d["capped"] = r.capped;
        return d;
      },
      py::arg("setup"), py::arg("inst"), py::arg("theta"), py::arg("n"), py::arg("trials"), py::arg("seed"));

  m.def("preset_exponents_json", [](const std::string& name) { return exponents_json(preset_config(name)); });
  m.def("curve", [](const std::string& preset) {
    const auto rows = compute_curve(preset_config(preset));
    std::vector<std::vector<double>> out;
    for (const auto& r : rows) {
      const auto v = r.values();
      out.emplace_back(v.begin(), v.end());
    }
    return out;
  });
  m.attr("CURVE_COLUMNS") = std::vector<std::string>(CurveRow::columns().begin(), CurveRow::columns().end());
}
