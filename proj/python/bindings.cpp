// Python bindings for the verification toolkit: parsing, the classical
// verifier, oracle compilation, Grover search, and the qubit estimators.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qnv/classical.hpp"
#include "qnv/grover.hpp"
#include "qnv/netmodel.hpp"
#include "qnv/oracle.hpp"
#include "qnv/resources.hpp"

namespace py = pybind11;
using namespace qnv;

namespace {

InitSpec make_init(const std::string& kind, double p) {
  if (kind == "uniform") return InitSpec::uniform();
  if (kind == "biased") return InitSpec::biased(p);
  throw ConfigError("init must be 'uniform' or 'biased'");
}

GroverPlan make_plan(const CompiledOracle& oracle, std::optional<int> iterates,
                     std::optional<std::uint64_t> k_hint,
                     const std::string& init, double p, std::uint64_t shots,
                     std::uint64_t seed) {
  GroverPlan plan;
  plan.oracle = oracle;
  plan.iterates = iterates;
  plan.k_hint = k_hint;
  plan.init = make_init(init, p);
  plan.shots = shots;
  plan.seed = seed;
  return plan;
}

}  // namespace

PYBIND11_MODULE(qnv, m) {
  m.doc() =
      "Network verification as unstructured search: classical verifier, "
      "phase-oracle compilation, Grover on a dense state-vector simulator, "
      "and qubit-count estimation.";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<CircuitError>(m, "CircuitError", PyExc_ValueError);
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError",
                                             PyExc_RuntimeError);

  py::class_<DataPlaneNetwork>(m, "DataPlaneNetwork")
      .def_readonly("header_width", &DataPlaneNetwork::header_width)
      .def_readonly("routers", &DataPlaneNetwork::routers)
      .def("router_index", &DataPlaneNetwork::router_index)
      .def("__repr__", [](const DataPlaneNetwork& n) {
        return "<DataPlaneNetwork " + std::to_string(n.router_count()) +
               " routers, width " + std::to_string(n.header_width) + ">";
      });

  py::class_<ControlPlaneNetwork>(m, "ControlPlaneNetwork")
      .def_readonly("routers", &ControlPlaneNetwork::routers)
      .def_property_readonly("edge_count", &ControlPlaneNetwork::edge_count)
      .def("router_index", &ControlPlaneNetwork::router_index)
      .def("__repr__", [](const ControlPlaneNetwork& n) {
        return "<ControlPlaneNetwork " + std::to_string(n.router_count()) +
               " routers, " + std::to_string(n.edge_count()) + " edges>";
      });

  py::class_<Property>(m, "Property")
      .def_static("reach_within", &Property::reach_within, py::arg("src"),
                  py::arg("dst"), py::arg("k"))
      .def_static("exceeds_hops", &Property::exceeds_hops, py::arg("src"),
                  py::arg("k"))
      .def_static("avoids_waypoint", &Property::avoids_waypoint,
                  py::arg("src"), py::arg("dst"), py::arg("waypoint"),
                  py::arg("max_failures"))
      .def_static("disconnected", &Property::disconnected, py::arg("src"),
                  py::arg("dst"), py::arg("max_failures"))
      .def("describe", &Property::describe)
      .def("__repr__",
           [](const Property& p) { return "<Property " + p.describe() + ">"; });

  m.def("parse_dataplane", &parse_dataplane, py::arg("text"),
        "Parse a data-plane network from a JSON document.");
  m.def("parse_controlplane", &parse_controlplane, py::arg("text"),
        "Parse a control-plane network from a JSON document.");
  m.def("parse_property", &parse_property, py::arg("text"),
        "Parse a property from a JSON document.");
  m.def("serialize",
        py::overload_cast<const DataPlaneNetwork&>(&serialize));
  m.def("serialize",
        py::overload_cast<const ControlPlaneNetwork&>(&serialize));
  m.def("serialize", py::overload_cast<const Property&>(&serialize));
  m.def("format_bits", &format_bits, py::arg("value"), py::arg("width"));

  py::class_<Verifier>(m, "Verifier")
      .def(py::init<DataPlaneNetwork, Property>(), py::arg("network"),
           py::arg("property"))
      .def(py::init<ControlPlaneNetwork, Property>(), py::arg("network"),
           py::arg("property"))
      .def_property_readonly("input_bits", &Verifier::input_bits)
      .def("evaluate", &Verifier::evaluate, py::arg("instance"))
      .def("__repr__", [](const Verifier& v) {
        return "<Verifier over " + std::to_string(v.input_bits()) +
               "-bit instances>";
      });

  m.def("brute_force", &brute_force, py::arg("verifier"),
        py::arg("limit") = kBruteForceLimit,
        "Exact ascending solution set of the verifier.");

  py::class_<CompiledOracle>(m, "CompiledOracle")
      .def_property_readonly("backend",
                             [](const CompiledOracle& o) {
                               return o.backend == OracleBackend::Diagonal
                                          ? "diagonal"
                                          : "gate";
                             })
      .def_readonly("input_bits", &CompiledOracle::input_bits)
      .def_readonly("total_qubits", &CompiledOracle::total_qubits)
      .def("marks", &CompiledOracle::marks, py::arg("instance"))
      .def("marked_set", &CompiledOracle::marked_set)
      .def("circuit_dump",
           [](const CompiledOracle& o) { return o.circuit.dump(); },
           "Line-per-gate dump of the compiled circuit (gate backend).")
      .def("__repr__", [](const CompiledOracle& o) {
        return std::string("<CompiledOracle ") +
               (o.backend == OracleBackend::Diagonal ? "diagonal"
                                                     : "gate-level") +
               ", " + std::to_string(o.total_qubits) + " qubits>";
      });

  m.def(
      "compile_diagonal",
      [](const Verifier& v, const std::set<std::uint64_t>& exclusions,
         int limit) {
        return compile_diagonal(v, ExclusionSet{exclusions}, limit);
      },
      py::arg("verifier"), py::arg("exclusions") = std::set<std::uint64_t>{},
      py::arg("limit") = kBruteForceLimit);
  m.def(
      "compile_gate",
      [](const Verifier& v, bool midcircuit_reset, int max_qubits) {
        CompileOptions options;
        options.midcircuit_reset = midcircuit_reset;
        options.max_qubits = max_qubits;
        if (v.is_dataplane()) {
          return compile_gate_dataplane(
              std::get<DataPlaneNetwork>(v.network), v.property, options);
        }
        return compile_gate_controlplane(
            std::get<ControlPlaneNetwork>(v.network), v.property, options);
      },
      py::arg("verifier"), py::arg("midcircuit_reset") = true,
      py::arg("max_qubits") = kMaxSimQubits);
  m.def(
      "add_exclusion",
      [](const CompiledOracle& oracle, const std::set<std::uint64_t>& seen) {
        return add_exclusion(oracle, ExclusionSet{seen});
      },
      py::arg("oracle"), py::arg("seen"));

  py::class_<SearchResult>(m, "SearchResult")
      .def_readonly("histogram", &SearchResult::histogram)
      .def_readonly("confirmed", &SearchResult::confirmed)
      .def_readonly("success_fraction", &SearchResult::success_fraction)
      .def_readonly("exact_success", &SearchResult::exact_success)
      .def_readonly("iterates", &SearchResult::iterates)
      .def_readonly("iterates_floored", &SearchResult::iterates_floored)
      .def("__repr__", [](const SearchResult& r) {
        return "<SearchResult " + std::to_string(r.confirmed.size()) +
               " confirmed, exact success " +
               std::to_string(r.exact_success) + ">";
      });

  m.def(
      "search",
      [](const CompiledOracle& oracle, std::optional<int> iterates,
         std::optional<std::uint64_t> k_hint, const std::string& init,
         double p, std::uint64_t shots, std::uint64_t seed) {
        return search(make_plan(oracle, iterates, k_hint, init, p, shots,
                                seed));
      },
      py::arg("oracle"), py::arg("iterates") = std::nullopt,
      py::arg("k_hint") = std::nullopt, py::arg("init") = "uniform",
      py::arg("p") = 0.5, py::arg("shots") = 10000, py::arg("seed") = 0);
  m.def(
      "bbht_search",
      [](const CompiledOracle& oracle, const std::string& init, double p,
         std::uint64_t shots, std::uint64_t seed) {
        return bbht_search(make_plan(oracle, std::nullopt, std::nullopt, init,
                                     p, shots, seed));
      },
      py::arg("oracle"), py::arg("init") = "uniform", py::arg("p") = 0.5,
      py::arg("shots") = 10000, py::arg("seed") = 0);
  m.def(
      "find_all",
      [](const Verifier& verifier, int budget, std::uint64_t shots,
         std::uint64_t seed, const std::string& init, double p) {
        FindAllOptions options;
        options.budget = budget;
        options.shots = shots;
        options.seed = seed;
        options.init = make_init(init, p);
        return find_all(verifier, options);
      },
      py::arg("verifier"), py::arg("budget"), py::arg("shots") = 1000,
      py::arg("seed") = 0, py::arg("init") = "uniform", py::arg("p") = 0.5);

  m.def("optimal_iterates", &optimal_iterates, py::arg("n"), py::arg("k"));
  m.def("success_probability", &success_probability, py::arg("n"),
        py::arg("k"), py::arg("iterates"));

  m.def(
      "dataplane_qubits",
      [](std::uint64_t headers, std::uint64_t wildcards, std::uint64_t ports,
         std::uint64_t max_hops, std::uint64_t iterates, bool reset) {
        DataPlaneParams params;
        params.headers = headers;
        params.wildcards = wildcards;
        params.ports = ports;
        params.max_hops = max_hops;
        params.iterates = iterates;
        return dataplane_qubits(params, reset);
      },
      py::arg("headers"), py::arg("wildcards"), py::arg("ports"),
      py::arg("max_hops"), py::arg("iterates"), py::arg("reset") = false);
  m.def(
      "controlplane_qubits",
      [](std::uint64_t routers, std::uint64_t edges,
         std::optional<std::uint64_t> diameter,
         std::optional<std::uint64_t> iterates, bool reset) {
        ControlPlaneParams params =
            ControlPlaneParams::conventional(routers, edges);
        if (diameter) params.diameter = *diameter;
        if (iterates) params.iterates = *iterates;
        return controlplane_qubits(params, reset);
      },
      py::arg("routers"), py::arg("edges"), py::arg("diameter") = std::nullopt,
      py::arg("iterates") = std::nullopt, py::arg("reset") = false);
  m.def(
      "sweep_controlplane_edges",
      [](std::uint64_t from, std::uint64_t to, std::uint64_t routers,
         bool reset) {
        std::vector<std::tuple<std::uint64_t, std::uint64_t, std::string>> out;
        for (const SweepRow& row :
             sweep_controlplane_edges(from, to, routers, reset)) {
          out.emplace_back(row.x, row.qubits, row.variant);
        }
        return out;
      },
      py::arg("edges_from"), py::arg("edges_to"), py::arg("routers"),
      py::arg("reset") = false);
  m.def(
      "sweep_dataplane_headers",
      [](int from, int to, std::uint64_t routers, std::uint64_t rules,
         std::uint64_t iterates, bool reset) {
        std::vector<std::tuple<std::uint64_t, std::uint64_t, std::string>> out;
        for (const SweepRow& row : sweep_dataplane_headers(
                 from, to, routers, rules, iterates, reset)) {
          out.emplace_back(row.x, row.qubits, row.variant);
        }
        return out;
      },
      py::arg("exponent_from"), py::arg("exponent_to"), py::arg("routers"),
      py::arg("rules_per_router"), py::arg("iterates") = 5,
      py::arg("reset") = false);
}
