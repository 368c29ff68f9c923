#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinscale/config.hpp"
#include "spinscale/estimates.hpp"
#include "spinscale/picard.hpp"
#include "spinscale/rng.hpp"

namespace py = pybind11;
using namespace spinscale;

PYBIND11_MODULE(_spinscale, m) {
    m.doc() = "Spin dynamics on random point configurations in a scale of weighted spaces";

    py::class_<Configuration, std::shared_ptr<Configuration>>(m, "Configuration")
        .def_property_readonly("dim", &Configuration::dim)
        .def_property_readonly("box_halfwidth", &Configuration::box_halfwidth)
        .def("__len__", &Configuration::site_count)
        .def("position",
             [](const Configuration& c, int i) {
                 auto p = c.position(i);
                 return std::vector<double>(p.begin(), p.end());
             })
        .def("radius", &Configuration::radius)
        .def("distance", &Configuration::distance)
        .def("to_json", &Configuration::to_json)
        .def_static("from_json", [](const std::string& s) {
            return std::make_shared<Configuration>(Configuration::from_json(s));
        });

    m.def("sample_poisson", &sample_poisson, py::arg("dim"), py::arg("box_halfwidth"),
          py::arg("intensity"), py::arg("seed"));
    m.def("sample_hardcore", &sample_hardcore, py::arg("dim"), py::arg("box_halfwidth"),
          py::arg("intensity"), py::arg("hc_radius"), py::arg("seed"));
    m.def("lattice_configuration", &lattice_configuration, py::arg("dim"),
          py::arg("box_halfwidth"), py::arg("spacing"));

    py::class_<NeighborStructure>(m, "NeighborStructure")
        .def_readonly("r", &NeighborStructure::r)
        .def_readonly("adjacency", &NeighborStructure::adjacency)
        .def_readonly("n", &NeighborStructure::n)
        .def_readonly("big_n", &NeighborStructure::big_n);
    m.def("build_neighbors", &build_neighbors, py::arg("config"), py::arg("r"));

    py::class_<RegularityFit>(m, "RegularityFit")
        .def_readonly("q", &RegularityFit::q)
        .def_readonly("a_fit", &RegularityFit::a_fit)
        .def_readonly("c_log_fit", &RegularityFit::c_log_fit)
        .def_readonly("worst_site", &RegularityFit::worst_site);
    m.def(
        "regularity_fit",
        [](const NeighborStructure& ns, const ConfigPtr& cfg, double q) {
            return regularity_fit(ns, *cfg, q);
        },
        py::arg("neighbors"), py::arg("config"), py::arg("q"));

    m.def("hat_L", &hat_L, py::arg("p"), py::arg("L"), py::arg("T"));
    m.def("a_T", &a_T, py::arg("p"), py::arg("L"), py::arg("T"));
    m.def(
        "e_series",
        [](double t, double eps, double theta, double p, double tail_tol) {
            auto res = e_series(t, eps, theta, p, tail_tol);
            return py::make_tuple(res.value, res.terms);
        },
        py::arg("t"), py::arg("eps"), py::arg("theta"), py::arg("p"),
        py::arg("tail_tol") = 1e-12);
    m.def("picard_bound", &picard_bound, py::arg("n"), py::arg("p"), py::arg("q"),
          py::arg("delta"), py::arg("L"), py::arg("T"));
    m.def("growth_bound", &growth_bound, py::arg("p"), py::arg("q"), py::arg("L"), py::arg("T"),
          py::arg("delta"), py::arg("u0_norm"), py::arg("tail_tol") = 1e-12);

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("pass_", &CheckResult::pass)
        .def_readonly("measured", &CheckResult::measured)
        .def_readonly("bound", &CheckResult::bound)
        .def_readonly("note", &CheckResult::note);
    py::class_<RunArtifact>(m, "RunArtifact")
        .def_readonly("manifest", &RunArtifact::manifest)
        .def_readonly("tables", &RunArtifact::tables)
        .def_readonly("checks", &RunArtifact::checks)
        .def_readonly("all_pass", &RunArtifact::all_pass);
    m.def(
        "run_experiment",
        [](const std::string& config_json) { return run_experiment(parse_config(config_json)); },
        py::arg("config_json"),
        "Run the selected suite from a JSON config string; returns the artifact.");

    py::register_exception<ConfigError>(m, "ConfigError");
}
