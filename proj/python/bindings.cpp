#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "ldphase/erg.hpp"
#include "ldphase/errors.hpp"
#include "ldphase/graphon.hpp"
#include "ldphase/graphs.hpp"
#include "ldphase/hypergraph.hpp"
#include "ldphase/minorant.hpp"
#include "ldphase/phase.hpp"
#include "ldphase/rate_fn.hpp"
#include "ldphase/sampler.hpp"

namespace py = pybind11;
using namespace ldphase;

namespace {

SmallGraph graph_by_name(const std::string& name) {
    if (auto g = named_graph(name)) return *g;
    throw PreconditionError("unknown graph name '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Upper-tail phase diagrams for subgraph counts in G(n, p)";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<SearchExhaustedError>(m, "SearchExhaustedError", PyExc_RuntimeError);

    m.def("entropy", &entropy, py::arg("u"));
    m.def("rate", &rate, py::arg("u"), py::arg("p"));
    m.def("logit", &logit, py::arg("u"));
    m.def("logistic", &logistic, py::arg("b"));
    m.def("p0", &p0, py::arg("gamma"));

    py::class_<DoubleTangent>(m, "DoubleTangent")
        .def_readonly("q_lo", &DoubleTangent::q_lo)
        .def_readonly("q_hi", &DoubleTangent::q_hi)
        .def_readonly("slope", &DoubleTangent::slope)
        .def_readonly("intercept", &DoubleTangent::intercept);

    m.def("double_tangent", [](double p, double gamma) { return double_tangent(GammaCurve(p, gamma)); },
          py::arg("p"), py::arg("gamma"));
    m.def("minorant_value", [](double p, double gamma, double x) { return minorant_value(GammaCurve(p, gamma), x); },
          py::arg("p"), py::arg("gamma"), py::arg("x"));
    m.def("d2_boundary_p", &d2_boundary_p, py::arg("r"));
    m.def(
        "boundary_curve",
        [](double gamma, const std::vector<double>& r) {
            std::vector<std::pair<double, double>> out;
            for (const auto& pt : boundary_curve(gamma, r)) out.emplace_back(pt.r, pt.p_critical);
            return out;
        },
        py::arg("gamma"), py::arg("r_grid"));

    m.def(
        "classify_upper_tail",
        [](int d, double p, double r) { return std::string(to_string(classify_upper_tail(d, p, r).verdict)); },
        py::arg("d"), py::arg("p"), py::arg("r"));
    m.def(
        "break_witness",
        [](const std::string& graph, double p, double r) {
            const auto w = build_break_witness(graph_by_name(graph), p, r);
            py::dict out;
            out["weights"] = std::vector<double>(w.graphon.weights().begin(), w.graphon.weights().end());
            out["values"] = std::vector<double>(w.graphon.values().begin(), w.graphon.values().end());
            out["epsilon"] = w.epsilon;
            out["t_value"] = w.t_value;
            out["target_t"] = w.target_t;
            out["hp_value"] = w.hp_value;
            out["target_hp"] = w.target_hp;
            return out;
        },
        py::arg("graph"), py::arg("p"), py::arg("r"));
    m.def(
        "hom_density_graph",
        [](const std::string& h, const std::string& g) { return hom_density_graph(graph_by_name(h), graph_by_name(g)); },
        py::arg("h"), py::arg("g"));

    m.def(
        "erg_classify",
        [](const std::string& graph, double alpha, double beta1, double beta2) {
            const auto c = classify(ErgModel(graph_by_name(graph), alpha, beta1, beta2));
            py::dict out;
            out["kind"] = std::string(to_string(c.kind));
            out["u_star"] = c.u_star;
            out["breaking_interval"] = c.breaking_interval;
            return out;
        },
        py::arg("graph"), py::arg("alpha"), py::arg("beta1"), py::arg("beta2"));
    m.def("critical_beta2", &critical_beta2, py::arg("beta1"), py::arg("gamma"));
    m.def(
        "scalar_maximize", [](double b1, double b2, double g) { return scalar_maximize(b1, b2, g).maximizers; },
        py::arg("beta1"), py::arg("beta2"), py::arg("gamma"));

    m.def(
        "hyper_classify", [](int d, int k, double p, double r) { return std::string(to_string(classify_upper_tail_hyper(d, k, p, r))); },
        py::arg("d"), py::arg("k"), py::arg("p"), py::arg("r"));

    m.def(
        "sample_erg",
        [](int n, double alpha, double beta1, double beta2, std::int64_t steps, std::uint64_t seed) {
            McmcRun run;
            run.n = n;
            run.alpha = alpha;
            run.beta1 = beta1;
            run.beta2 = beta2;
            run.steps = steps;
            run.seed = seed;
            std::vector<std::tuple<std::int64_t, double, double>> rows;
            for (const auto& row : erg_glauber(run).trajectory) rows.emplace_back(row.step, row.edge_density, row.hom_density);
            return rows;
        },
        py::arg("n"), py::arg("alpha"), py::arg("beta1"), py::arg("beta2"), py::arg("steps"), py::arg("seed"));
}
