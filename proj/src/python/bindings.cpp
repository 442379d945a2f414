#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "maser/errors.hpp"
#include "maser/explorer.hpp"
#include "maser/fcs.hpp"
#include "maser/fcs_oracle.hpp"
#include "maser/params.hpp"
#include "maser/qtur.hpp"
#include "maser/steady_state.hpp"
#include "maser/tur.hpp"

namespace py = pybind11;
using namespace maser;

namespace {

Model parse_model(const std::string& name) {
    if (name == "quantum") return Model::quantum;
    if (name == "classical") return Model::classical;
    throw ConfigError("model must be 'quantum' or 'classical', got '" + name + "'");
}

py::dict sweep_columns(const std::vector<SweepRow>& rows) {
    std::vector<double> x, q, q_cl, b, mean, var, sigma, re, im;
    std::vector<std::string> status;
    for (const SweepRow& r : rows) {
        x.push_back(r.x);
        q.push_back(r.point.q);
        q_cl.push_back(r.point.q_classical);
        b.push_back(r.point.bound);
        mean.push_back(r.point.mean);
        var.push_back(r.point.variance);
        sigma.push_back(r.point.sigma);
        re.push_back(r.point.rho_ul_re);
        im.push_back(r.point.rho_ul_im);
        status.push_back(r.point.ok() ? (r.point.bound_error.empty() ? "ok" : r.point.bound_error) : r.point.error);
    }
    py::dict d;
    d["x"] = x;
    d["q"] = q;
    d["q_cl"] = q_cl;
    d["b"] = b;
    d["mean"] = mean;
    d["variance"] = var;
    d["sigma"] = sigma;
    d["rho_ul_re"] = re;
    d["rho_ul_im"] = im;
    d["status"] = status;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Three-level maser: counting statistics and uncertainty relations";

    auto base = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    (void)base;

    py::class_<EngineParams>(m, "Params")
        .def(py::init([](double gamma_u, double gamma_l, double n_u, double n_l, double epsilon, double delta) {
                 EngineParams p{gamma_u, gamma_l, n_u, n_l, epsilon, delta};
                 validate(p);
                 return p;
             }),
             py::kw_only(), py::arg("gamma_u") = 2.0, py::arg("gamma_l") = 0.1, py::arg("n_u") = 0.027,
             py::arg("n_l") = 5.0, py::arg("epsilon") = 0.15, py::arg("delta") = 0.0)
        .def_readwrite("gamma_u", &EngineParams::gamma_u)
        .def_readwrite("gamma_l", &EngineParams::gamma_l)
        .def_readwrite("n_u", &EngineParams::n_u)
        .def_readwrite("n_l", &EngineParams::n_l)
        .def_readwrite("epsilon", &EngineParams::epsilon)
        .def_readwrite("delta", &EngineParams::delta)
        .def("rescaled", &rescaled, py::arg("factor"))
        .def("__repr__", [](const EngineParams& p) {
            return "Params(gamma_u=" + py::repr(py::float_(p.gamma_u)).cast<std::string>() +
                   ", gamma_l=" + py::repr(py::float_(p.gamma_l)).cast<std::string>() +
                   ", n_u=" + py::repr(py::float_(p.n_u)).cast<std::string>() +
                   ", n_l=" + py::repr(py::float_(p.n_l)).cast<std::string>() +
                   ", epsilon=" + py::repr(py::float_(p.epsilon)).cast<std::string>() +
                   ", delta=" + py::repr(py::float_(p.delta)).cast<std::string>() + ")";
        });

    py::class_<SteadyState>(m, "SteadyState")
        .def_readonly("rho_xx", &SteadyState::rho_xx)
        .def_readonly("rho_uu", &SteadyState::rho_uu)
        .def_readonly("rho_ll", &SteadyState::rho_ll)
        .def_readonly("rho_ul_re", &SteadyState::rho_ul_re)
        .def_readonly("rho_ul_im", &SteadyState::rho_ul_im)
        .def_property_readonly("rho_ul", &SteadyState::rho_ul);

    py::class_<Cumulants>(m, "Cumulants")
        .def_readonly("mean", &Cumulants::mean)
        .def_readonly("variance", &Cumulants::variance)
        .def_readonly("fano", &Cumulants::fano)
        .def_readonly("fano_pop", &Cumulants::fano_pop)
        .def_readonly("fano_tr", &Cumulants::fano_tr);

    py::class_<EigenvalueCumulants>(m, "EigenvalueCumulants")
        .def_readonly("mean", &EigenvalueCumulants::mean)
        .def_readonly("variance", &EigenvalueCumulants::variance)
        .def_readonly("mean_error", &EigenvalueCumulants::mean_error)
        .def_readonly("variance_error", &EigenvalueCumulants::variance_error);

    py::class_<TurReport>(m, "TurReport")
        .def_readonly("sigma", &TurReport::sigma)
        .def_readonly("q", &TurReport::q)
        .def_readonly("q_pop", &TurReport::q_pop)
        .def_readonly("q_tr", &TurReport::q_tr)
        .def_readonly("q_cl", &TurReport::q_classical)
        .def_readonly("q_tr_cl", &TurReport::q_tr_classical)
        .def_readonly("advantage", &TurReport::advantage)
        .def_readonly("mean", &TurReport::mean_rate)
        .def_readonly("variance", &TurReport::variance_rate);

    py::class_<BoundComponents>(m, "Bound")
        .def_readonly("upsilon", &BoundComponents::upsilon)
        .def_readonly("psi", &BoundComponents::psi)
        .def_readonly("h_prime", &BoundComponents::h_prime)
        .def_readonly("sigma", &BoundComponents::sigma)
        .def_readonly("b", &BoundComponents::bound);

    m.def("steady_state", &steady_state_closed_form, py::arg("params"));
    m.def(
        "fano", [](const EngineParams& p, const std::string& model) { return fano(p, parse_model(model)); },
        py::arg("params"), py::arg("model") = "quantum");
    m.def(
        "oracle_cumulants",
        [](const EngineParams& p, const std::string& model) { return cumulants_via_eigenvalue(p, parse_model(model)); },
        py::arg("params"), py::arg("model") = "quantum");
    m.def(
        "tur",
        [](const EngineParams& p, const std::string& model) { return thermodynamic_uncertainty(p, parse_model(model)); },
        py::arg("params"), py::arg("model") = "quantum");
    m.def("bound", &quantum_bound, py::arg("params"));

    m.def(
        "sweep",
        [](const EngineParams& base, const std::string& axis, double lo, double hi, int points, bool log,
           bool with_bound, int workers) {
            SweepSpec spec{base, parse_axis(axis), {lo, hi, points, log}, with_bound};
            std::vector<SweepRow> rows;
            {
                py::gil_scoped_release release;
                rows = sweep(spec, workers);
            }
            return sweep_columns(rows);
        },
        py::arg("params"), py::arg("axis"), py::arg("lo"), py::arg("hi"), py::arg("points"), py::arg("log") = false,
        py::arg("with_bound") = true, py::arg("workers") = 0);

    m.def(
        "monte_carlo",
        [](std::uint64_t samples, std::uint64_t seed, bool with_bound, int workers) {
            McSpec spec;
            spec.samples = samples;
            spec.seed = seed;
            spec.with_bound = with_bound;
            McResult r;
            {
                py::gil_scoped_release release;
                r = monte_carlo(spec, workers);
            }
            py::dict d;
            d["accepted"] = r.accepted;
            d["q_below_two"] = r.q_below_two;
            d["q_cl_violations"] = r.q_classical_violations;
            d["q_pop_violations"] = r.q_pop_violations;
            d["q_cl_above_pop"] = r.q_classical_above_pop;
            d["sign_law_exceptions"] = r.sign_law_exceptions;
            d["q_min"] = r.q_range.min;
            d["q_max"] = r.q_range.max;
            d["q_cl_min"] = r.q_classical_range.min;
            d["q_cl_max"] = r.q_classical_range.max;
            d["bound_violations"] = r.bound_violations;
            d["hist_edges"] = r.q_hist.edges();
            d["q_hist"] = r.q_hist.counts();
            d["q_cl_hist"] = r.q_classical_hist.counts();
            return d;
        },
        py::arg("samples") = 100'000, py::arg("seed") = 0, py::arg("with_bound") = false, py::arg("workers") = 0);
}
