#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bekenstein/chiralnet.hpp"
#include "bekenstein/errors.hpp"
#include "bekenstein/experiment.hpp"
#include "bekenstein/formcalc.hpp"
#include "bekenstein/modular_entropy.hpp"
#include "bekenstein/stdsubspace.hpp"

namespace py = pybind11;
using namespace bk;

namespace {

py::dict modular_dict(const ModularData& md) {
    py::dict d;
    d["spectrum"] = md.spectrum;
    d["delta"] = md.delta.matrix();
    d["j"] = md.j.c;  // J v = j @ conj(v)
    d["s"] = md.s.c;
    d["condition"] = md.condition;
    return d;
}

py::list records_list(const RunResult& r) {
    py::list out;
    for (const auto& e : r.records) {
        py::dict d;
        d["suite"] = e.suite;
        d["N"] = e.n;
        d["R"] = e.r;
        d["alpha"] = e.alpha;
        d["sample_id"] = e.sample_id;
        d["quantity"] = e.quantity;
        d["lhs"] = e.lhs;
        d["rhs"] = e.rhs;
        d["margin"] = e.margin;
        d["tol"] = e.tol;
        d["pass"] = e.pass;
        out.append(d);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Modular operators, relative entropy and the chiral entropy-energy checks";

    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
    py::register_exception<numerical_error>(m, "NumericalError", PyExc_ArithmeticError);

    m.def("kernel_log", &kernel_log, py::arg("lam"));
    m.def(
        "log_form",
        [](const cvec& xi, const cmat& a) { return quad_form_log(xi, HermitianOperator(a)).to_double(); },
        py::arg("xi"), py::arg("a"), "(xi, log A xi); -inf when xi reaches the kernel of A");
    m.def(
        "log_form_kernel", [](const cvec& xi, const cmat& a) { return log_via_kernel(xi, HermitianOperator(a)); },
        py::arg("xi"), py::arg("a"));
    m.def(
        "log_form_limit", [](const cvec& xi, const cmat& a) { return log_limit(xi, HermitianOperator(a)); },
        py::arg("xi"), py::arg("a"));

    m.def(
        "modular_data",
        [](const cmat& basis) { return modular_dict(StandardSubspace(RealSubspace::from_columns(basis)).modular()); },
        py::arg("basis"), "Tomita data of the real span of the columns of basis");

    m.def(
        "relative_entropy",
        [](const cmat& phi, const cmat& omega) { return relative_entropy(DensityMatrix(phi), DensityMatrix(omega)).to_double(); },
        py::arg("phi"), py::arg("omega"));

    m.def("tol_for", &tol_for, py::arg("n"));
    m.def(
        "dilation_residual", [](int n) { return halfline_dilation_residual(chiral_model(n)).max_residual; }, py::arg("n"));

    m.def(
        "run",
        [](const std::string& command, const std::string& suite, std::vector<int> n, std::vector<double> r,
           std::vector<double> alpha, int samples, std::uint64_t seed) {
            ExperimentConfig c;
            c.suite = suite;
            c.n = std::move(n);
            c.r = std::move(r);
            c.alpha = std::move(alpha);
            c.samples = samples;
            c.seed = seed;
            RunResult res;
            {
                py::gil_scoped_release nogil;
                if (command == "verify")
                    res = run_verify(c);
                else if (command == "sweep")
                    res = run_sweep(c);
                else if (command == "bound")
                    res = run_bound(c);
                else if (command == "converge")
                    res = run_convergence(c).result;
                else
                    throw config_error("unknown command '" + command + "'");
            }
            return records_list(res);
        },
        py::arg("command"), py::arg("suite") = "formcalc", py::arg("n") = std::vector<int>{},
        py::arg("r") = std::vector<double>{}, py::arg("alpha") = std::vector<double>{}, py::arg("samples") = 0,
        py::arg("seed") = 20240601);

    m.attr("csv_schema_version") = csv_schema_version;
}
