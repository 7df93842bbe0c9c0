#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "netdef/cascade.hpp"
#include "netdef/defense.hpp"
#include "netdef/error.hpp"
#include "netdef/graph.hpp"
#include "netdef/load.hpp"
#include "netdef/sweep.hpp"

namespace py = pybind11;
using namespace netdef;

namespace {

AliveMask alive_or_all(const Graph& g, const std::optional<AliveMask>& alive) {
    if (!alive) return g.all_alive();
    if (alive->size() != g.node_count()) throw py::value_error("alive mask length must equal node_count");
    return *alive;
}

Graph graph_from_edges(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) throw py::index_error("edge endpoint out of range");
    }
    return Graph::from_edges(n, edges);
}

}  // namespace

PYBIND11_MODULE(netdef, m) {
    m.doc() = "Cascading-failure networks under cost-based attacks";

    auto base_error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", base_error.ptr());
    py::register_exception<NoCrossoverError>(m, "NoCrossoverError", base_error.ptr());

    py::enum_<GraphModel>(m, "GraphModel")
        .value("BA", GraphModel::BarabasiAlbert)
        .value("ER", GraphModel::ErdosRenyi);

    py::class_<GeneratorConfig>(m, "GeneratorConfig")
        .def(py::init([](GraphModel model, std::size_t n, double mean_degree, std::uint64_t seed) {
                 return GeneratorConfig{model, n, mean_degree, seed};
             }),
             py::arg("model") = GraphModel::BarabasiAlbert, py::arg("n") = 1000, py::arg("mean_degree") = 4.0,
             py::arg("seed") = 0)
        .def_readwrite("model", &GeneratorConfig::model)
        .def_readwrite("n", &GeneratorConfig::n)
        .def_readwrite("mean_degree", &GeneratorConfig::mean_degree)
        .def_readwrite("seed", &GeneratorConfig::seed);

    py::class_<Graph, std::shared_ptr<Graph>>(m, "Graph")
        .def(py::init(&graph_from_edges), py::arg("n"), py::arg("edges"))
        .def_property_readonly("node_count", &Graph::node_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def_property_readonly("mean_degree", &Graph::mean_degree)
        .def("degree", &Graph::degree)
        .def("neighbors", [](const Graph& g, NodeId v) {
            auto nb = g.neighbors(v);
            return std::vector<NodeId>(nb.begin(), nb.end());
        })
        .def("has_edge", &Graph::has_edge)
        .def("edges", &Graph::edges)
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "<Graph N=" + std::to_string(g.node_count()) + " M=" + std::to_string(g.edge_count()) + ">";
        });

    py::class_<LoadedGraph>(m, "LoadedGraph")
        .def_property_readonly("graph", [](const LoadedGraph& l) { return std::make_shared<Graph>(l.graph); })
        .def_readonly("original_ids", &LoadedGraph::original_ids)
        .def_readonly("duplicates_dropped", &LoadedGraph::duplicates_dropped)
        .def_readonly("self_loops_dropped", &LoadedGraph::self_loops_dropped);

    m.def("generate", [](const GeneratorConfig& c) { return std::make_shared<Graph>(generate(c)); }, py::arg("config"));
    m.def("load_edge_list", &load_edge_list, py::arg("path"));
    m.def("parse_edge_list", &parse_edge_list, py::arg("text"), py::arg("source") = "<string>");
    m.def("giant_component", [](const Graph& g) { return std::make_shared<Graph>(giant_component(g)); });
    m.def("largest_component_size", [](const Graph& g, std::optional<AliveMask> alive) {
        return largest_component_size(g, alive_or_all(g, alive));
    }, py::arg("graph"), py::arg("alive") = py::none());
    m.def("serialize", &serialize);

    py::enum_<LoadConvention>(m, "LoadConvention")
        .value("COUNT", LoadConvention::Count)
        .value("FRACTIONAL", LoadConvention::Fractional);

    m.def(
        "compute_load",
        [](const Graph& g, std::optional<AliveMask> alive, LoadConvention convention, bool endpoints,
           unsigned workers) {
            const auto mask = alive_or_all(g, alive);
            py::gil_scoped_release release;
            return compute_load(g, mask, {convention, endpoints, workers});
        },
        py::arg("graph"), py::arg("alive") = py::none(), py::arg("convention") = LoadConvention::Count,
        py::arg("include_endpoints") = false, py::arg("workers") = 1);
    m.def(
        "oracle_load",
        [](const Graph& g, std::optional<AliveMask> alive, LoadConvention convention, bool endpoints) {
            return oracle_load(g, alive_or_all(g, alive), convention, endpoints);
        },
        py::arg("graph"), py::arg("alive") = py::none(), py::arg("convention") = LoadConvention::Count,
        py::arg("include_endpoints") = false);

    py::class_<CapacityProfile, std::shared_ptr<CapacityProfile>>(m, "CapacityProfile")
        .def(py::init([](std::vector<double> capacity) {
                 auto cap = std::make_shared<CapacityProfile>();
                 cap->initial_load.assign(capacity.size(), 0.0);
                 cap->capacity = std::move(capacity);
                 return cap;
             }),
             py::arg("capacity"))
        .def_readonly("capacity", &CapacityProfile::capacity)
        .def_readonly("initial_load", &CapacityProfile::initial_load)
        .def_readonly("alpha", &CapacityProfile::alpha)
        .def_property_readonly("total", &CapacityProfile::total)
        .def("__len__", &CapacityProfile::size);

    m.def(
        "assign_capacity",
        [](const Graph& g, double alpha, LoadConvention convention, bool endpoints) {
            return std::make_shared<CapacityProfile>(assign_capacity(g, alpha, {convention, endpoints, 1}));
        },
        py::arg("graph"), py::arg("alpha"), py::arg("convention") = LoadConvention::Count,
        py::arg("include_endpoints") = false);

    py::class_<CascadeResult>(m, "CascadeResult")
        .def_readonly("attacked", &CascadeResult::attacked)
        .def_readonly("overloaded", &CascadeResult::overloaded)
        .def_readonly("rounds", &CascadeResult::rounds)
        .def_readonly("G", &CascadeResult::G)
        .def_readonly("B", &CascadeResult::B)
        .def_readonly("M", &CascadeResult::M)
        .def("removed", &CascadeResult::removed);

    m.def(
        "run_cascade",
        [](const Graph& g, const CapacityProfile& cap, const std::vector<NodeId>& attacked, unsigned workers) {
            py::gil_scoped_release release;
            return run_cascade(g, cap, attacked, workers);
        },
        py::arg("graph"), py::arg("capacity"), py::arg("attacked"), py::arg("workers") = 1);

    py::class_<DefenseAllocation>(m, "DefenseAllocation")
        .def_readonly("beta", &DefenseAllocation::beta)
        .def_readonly("p", &DefenseAllocation::p)
        .def_readonly("R", &DefenseAllocation::R)
        .def_readonly("normalizer", &DefenseAllocation::normalizer);
    m.def("allocate_defense", &allocate_defense, py::arg("capacity"), py::arg("beta"),
          py::arg("capacity_floor") = 0.0);

    py::enum_<Strategy>(m, "Strategy").value("CA", Strategy::CA).value("DA", Strategy::DA);

    py::class_<AttackPlan>(m, "AttackPlan")
        .def_readonly("strategy", &AttackPlan::strategy)
        .def_readonly("targets", &AttackPlan::targets)
        .def_readonly("cost_per_target", &AttackPlan::cost_per_target)
        .def_readonly("E", &AttackPlan::E)
        .def_property_readonly("n_prime", &AttackPlan::n_prime);

    m.def(
        "build_ca",
        [](const DefenseAllocation& a, const CapacityProfile& c, std::size_t k, std::optional<std::uint64_t> seed) {
            return build_ca(a, c, k, seed);
        },
        py::arg("allocation"), py::arg("capacity"), py::arg("k") = 1, py::arg("tie_seed") = py::none());
    m.def(
        "build_da",
        [](const DefenseAllocation& a, const CapacityProfile& c, double budget, std::optional<std::uint64_t> seed) {
            return build_da(a, c, budget, seed);
        },
        py::arg("allocation"), py::arg("capacity"), py::arg("budget"), py::arg("tie_seed") = py::none());

    py::enum_<Measure>(m, "Measure").value("G", Measure::G).value("B", Measure::B);

    py::class_<SweepRecord>(m, "SweepRecord")
        .def_readonly("beta", &SweepRecord::beta)
        .def_readonly("strategy", &SweepRecord::strategy)
        .def_readonly("network_seed", &SweepRecord::network_seed)
        .def_readonly("attack_seed", &SweepRecord::attack_seed)
        .def_readonly("G", &SweepRecord::G)
        .def_readonly("B", &SweepRecord::B)
        .def_readonly("E", &SweepRecord::E)
        .def_readonly("rho_g", &SweepRecord::rho_g)
        .def_readonly("rho_b", &SweepRecord::rho_b);

    m.def(
        "evaluate_pair",
        [](const Graph& g, const CapacityProfile& cap, double beta, std::size_t k, std::optional<std::uint64_t> seed,
           double floor) { return evaluate_pair(g, cap, beta, k, seed, floor); },
        py::arg("graph"), py::arg("capacity"), py::arg("beta"), py::arg("k_ca") = 1,
        py::arg("attack_seed") = py::none(), py::arg("capacity_floor") = 0.0);

    py::class_<SweepConfig>(m, "SweepConfig")
        .def(py::init<>())
        .def_property(
            "network",
            [](const SweepConfig& c) -> py::object {
                if (const auto* gen = std::get_if<GeneratorConfig>(&c.network)) return py::cast(*gen);
                return py::cast(std::const_pointer_cast<Graph>(std::get<std::shared_ptr<const Graph>>(c.network)));
            },
            [](SweepConfig& c, py::object value) {
                if (py::isinstance<GeneratorConfig>(value)) {
                    c.network = value.cast<GeneratorConfig>();
                } else {
                    c.network = std::shared_ptr<const Graph>(value.cast<std::shared_ptr<Graph>>());
                }
            })
        .def_readwrite("alpha", &SweepConfig::alpha)
        .def_readwrite("betas", &SweepConfig::betas)
        .def_readwrite("k_ca", &SweepConfig::k_ca)
        .def_readwrite("network_realizations", &SweepConfig::network_realizations)
        .def_readwrite("attack_realizations", &SweepConfig::attack_realizations)
        .def_readwrite("master_seed", &SweepConfig::master_seed)
        .def_readwrite("capacity_floor", &SweepConfig::capacity_floor)
        .def_readwrite("load_convention", &SweepConfig::load_convention)
        .def_readwrite("load_endpoints", &SweepConfig::load_endpoints)
        .def_readwrite("workers", &SweepConfig::workers);

    m.def(
        "sweep",
        [](const SweepConfig& c) {
            py::gil_scoped_release release;
            return sweep(c);
        },
        py::arg("config"));

    py::class_<CurvePoint>(m, "CurvePoint")
        .def_readonly("beta", &CurvePoint::beta)
        .def_readonly("ca", &CurvePoint::ca)
        .def_readonly("da", &CurvePoint::da);

    py::class_<CrossoverResult>(m, "CrossoverResult")
        .def_readonly("measure", &CrossoverResult::measure)
        .def_readonly("beta_star", &CrossoverResult::beta_star)
        .def_readonly("bracket", &CrossoverResult::bracket)
        .def_readonly("curve", &CrossoverResult::curve);

    m.def("find_crossover", &find_crossover, py::arg("ca"), py::arg("da"),
          py::arg("bracket") = std::make_pair(0.0, 3.0), py::arg("tol") = 0.01, py::arg("measure") = Measure::B);

    py::class_<MeanDamage>(m, "MeanDamage")
        .def_readonly("beta", &MeanDamage::beta)
        .def_readonly("ca", &MeanDamage::ca)
        .def_readonly("da", &MeanDamage::da)
        .def_readonly("delta_stderr", &MeanDamage::delta_stderr);

    py::class_<Ensemble>(m, "Ensemble")
        .def(py::init<SweepConfig>(), py::arg("config"), py::call_guard<py::gil_scoped_release>())
        .def_property_readonly("cell_count", &Ensemble::cell_count)
        .def("sweep", &Ensemble::sweep, py::arg("betas"), py::call_guard<py::gil_scoped_release>())
        .def("mean_damage", &Ensemble::mean_damage, py::arg("beta"), py::arg("measure"),
             py::call_guard<py::gil_scoped_release>())
        .def("find_crossover", &Ensemble::find_crossover, py::arg("measure"),
             py::arg("bracket") = std::make_pair(0.0, 3.0), py::arg("tol") = 0.01,
             py::call_guard<py::gil_scoped_release>());

    py::enum_<TrendAxis>(m, "TrendAxis")
        .value("N", TrendAxis::N)
        .value("ALPHA", TrendAxis::Alpha)
        .value("MEAN_DEGREE", TrendAxis::MeanDegree)
        .value("GAMMA", TrendAxis::GammaProxy);

    py::class_<TrendPoint>(m, "TrendPoint")
        .def_readonly("value", &TrendPoint::value)
        .def_readonly("beta_b", &TrendPoint::beta_b)
        .def_readonly("beta_stderr", &TrendPoint::beta_stderr)
        .def_readonly("note", &TrendPoint::note);

    m.def("parameter_study", &parameter_study, py::arg("base"), py::arg("axis"), py::arg("values"),
          py::arg("bracket") = std::make_pair(0.0, 3.0), py::arg("tol") = 0.01,
          py::call_guard<py::gil_scoped_release>());
}
