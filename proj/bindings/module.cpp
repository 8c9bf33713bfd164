#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "dcd/harness.hpp"

namespace py = pybind11;
using namespace dcd;

namespace {

DirectedGraph graph_from_file(const std::string& path, int base,
                              bool drop_self_loops) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return from_edge_list(in, base, drop_self_loops);
}

DirectedGraph graph_from_edges(
    NodeId n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    return DirectedGraph(n, std::vector<std::pair<NodeId, NodeId>>(edges));
}

PipelineResult run_named(const DirectedGraph& g, int k,
                         const std::string& algorithm,
                         const std::string& approach, std::uint64_t seed) {
    const AlgorithmSpec spec = AlgorithmSpec::parse(algorithm);
    switch (approach_from_name(approach)) {
        case Approach::entire:
            return run_entire(g, k, spec, seed);
        case Approach::intersection_attach:
            return run_intersection_attach(g, k, spec, seed);
        case Approach::core_only:
            return run_core_only(g, k, spec, seed);
    }
    throw ValidationError("unreachable approach");
}

}  // namespace

PYBIND11_MODULE(_dcd, m) {
    m.doc() = "Spectral community detection for directed networks";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError",
                                            PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError",
                                           PyExc_ArithmeticError);

    py::class_<DirectedGraph>(m, "DirectedGraph")
        .def(py::init(&graph_from_edges), py::arg("n"), py::arg("edges"))
        .def_property_readonly("num_nodes", &DirectedGraph::num_nodes)
        .def_property_readonly("num_edges", &DirectedGraph::num_edges)
        .def("has_edge", &DirectedGraph::has_edge)
        .def("out_neighbors",
             [](const DirectedGraph& g, NodeId v) {
                 return std::vector<NodeId>(g.out_neighbors(v).begin(),
                                            g.out_neighbors(v).end());
             })
        .def("in_neighbors",
             [](const DirectedGraph& g, NodeId v) {
                 return std::vector<NodeId>(g.in_neighbors(v).begin(),
                                            g.in_neighbors(v).end());
             })
        .def("edge_list", &DirectedGraph::edge_list);

    py::class_<DcbmParams>(m, "DcbmParams")
        .def_readwrite("K", &DcbmParams::K)
        .def_readwrite("B", &DcbmParams::B)
        .def_readwrite("theta", &DcbmParams::theta)
        .def_readwrite("delta", &DcbmParams::delta)
        .def_readwrite("labels", &DcbmParams::labels)
        .def_property_readonly("n", &DcbmParams::n);

    py::class_<PipelineResult>(m, "PipelineResult")
        .def_readonly("labels", &PipelineResult::labels)
        .def_readonly("warnings", &PipelineResult::warnings)
        .def_readonly("features", &PipelineResult::features)
        .def_property_readonly(
            "core", [](const PipelineResult& r) { return r.core.members(); })
        .def_property_readonly("attached", [](const PipelineResult& r) {
            return r.attached.members();
        });

    py::class_<EvalReport>(m, "EvalReport")
        .def_readonly("misclustered", &EvalReport::misclustered)
        .def_readonly("rate", &EvalReport::rate)
        .def_readonly("matching", &EvalReport::matching);

    m.def("load_graph", &graph_from_file, py::arg("path"), py::arg("base") = 0,
          py::arg("drop_self_loops") = true);
    m.def("params_from_json",
          [](const std::string& text) { return params_from_json(text); });
    m.def("params_to_json",
          [](const DcbmParams& p) { return params_to_json(p); });
    m.def("sample_adjacency", &sample_adjacency, py::arg("params"),
          py::arg("seed"), py::arg("include_diagonal") = true);
    m.def("expected_matrix", &expected_matrix);
    m.def(
        "theoretical_svd",
        [](const DcbmParams& p) {
            const TheoreticalSvd t = theoretical_svd(p);
            return py::make_tuple(t.U, t.sigma, t.V);
        },
        "Exact (U, sigma, V) of the expected adjacency matrix");
    m.def("scenario_params",
          [](const std::string& scenario, NodeId n, std::uint64_t seed) {
              return scenario_params(scenario_from_name(scenario), n, seed);
          });
    m.def("run_pipeline", &run_named, py::arg("graph"), py::arg("k"),
          py::arg("algorithm") = "dscore", py::arg("approach") = "entire",
          py::arg("seed") = 0);
    m.def(
        "misclustering",
        [](const std::vector<int>& pred, const std::vector<int>& truth, int k) {
            return misclustering(pred, truth, k);
        },
        py::arg("pred"), py::arg("truth"), py::arg("k"));
    m.def(
        "run_simulation",
        [](const std::string& config_json) {
            const ExperimentReport report =
                run_simulation(ExperimentConfig::from_json(config_json));
            return py::make_tuple(report.to_csv(), report.to_json());
        },
        "Run a synthetic experiment config; returns (csv, json)");
    m.def(
        "run_real",
        [](const std::string& config_json) {
            const ExperimentReport report =
                run_real(ExperimentConfig::from_json(config_json));
            return py::make_tuple(report.to_csv(), report.to_json());
        },
        "Run a real-data experiment config; returns (csv, json)");
}
