#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "multinet/config.hpp"
#include "multinet/detection.hpp"
#include "multinet/io.hpp"
#include "multinet/metrics.hpp"
#include "multinet/pipeline.hpp"
#include "multinet/rng.hpp"
#include "multinet/version.hpp"

namespace py = pybind11;
using namespace multinet;

namespace {

AspectOrdering ordering_from_string(const std::string& name) {
  if (name == "ordered") return AspectOrdering::ordered;
  if (name == "unordered") return AspectOrdering::unordered;
  throw std::invalid_argument("ordering must be 'ordered' or 'unordered'");
}

MoveRule rule_from_string(const std::string& name) {
  if (name == "max_gain") return MoveRule::max_gain;
  if (name == "proportional_gain") return MoveRule::proportional_gain;
  throw std::invalid_argument("rule must be 'max_gain' or 'proportional_gain'");
}

CouplingTopology topology_from_string(const std::string& name) {
  if (name == "ordinal") return CouplingTopology::ordinal;
  if (name == "categorical") return CouplingTopology::categorical;
  throw std::invalid_argument("coupling must be 'ordinal' or 'categorical'");
}

}  // namespace

PYBIND11_MODULE(_multinet, m) {
  m.doc() = "multilayer community benchmark toolkit (C++ core)";
  m.attr("__version__") = version();

  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<MultilayerShape>(m, "Shape")
      .def(py::init([](int nodes,
                       const std::vector<std::pair<int, std::string>>& aspects) {
             std::vector<AspectSpec> specs;
             specs.reserve(aspects.size());
             for (const auto& [size, ordering] : aspects) {
               specs.push_back({size, ordering_from_string(ordering)});
             }
             return MultilayerShape(nodes, std::move(specs));
           }),
           py::arg("nodes"), py::arg("aspects"),
           "aspects: list of (size, 'ordered'|'unordered') pairs")
      .def_property_readonly("nodes", &MultilayerShape::node_count)
      .def_property_readonly("layers", &MultilayerShape::layer_count)
      .def_property_readonly("state_nodes", &MultilayerShape::state_node_count)
      .def("flatten_layer",
           [](const MultilayerShape& shape, const std::vector<int>& coords) {
             return shape.flatten_layer(coords);
           })
      .def("unflatten_layer", &MultilayerShape::unflatten_layer)
      .def("__eq__", [](const MultilayerShape& a, const MultilayerShape& b) {
        return a == b;
      });

  py::class_<MultilayerPartition>(m, "Partition")
      .def(py::init<MultilayerShape, std::vector<int>>(), py::arg("shape"),
           py::arg("labels"))
      .def_property_readonly("shape", &MultilayerPartition::shape)
      .def_property_readonly("labels", &MultilayerPartition::labels)
      .def("induced", &MultilayerPartition::induced_partition,
           py::arg("layer"), "labels of one layer, by node")
      .def("__eq__", [](const MultilayerPartition& a,
                        const MultilayerPartition& b) { return a == b; });

  py::class_<MultilayerNetwork>(m, "Network")
      .def_property_readonly("shape", &MultilayerNetwork::shape)
      .def_property_readonly("directed", &MultilayerNetwork::directed)
      .def_property_readonly("edge_count", &MultilayerNetwork::edge_count)
      .def_property_readonly("intralayer_edge_count",
                             &MultilayerNetwork::intralayer_edge_count)
      .def("edges", [](const MultilayerNetwork& network) {
        std::vector<std::tuple<int, int, double>> out;
        out.reserve(network.edge_count());
        for (const MultilayerEdge& e : network.edges()) {
          out.emplace_back(e.a, e.b, e.weight);
        }
        return out;
      });

  m.def(
      "generate",
      [](const std::string& config_json) {
        const GeneratedBenchmark bench =
            generate_benchmark(parse_benchmark_config(config_json));
        return py::make_tuple(bench.partition, bench.network);
      },
      py::arg("config_json"),
      "benchmark instance (partition, network) from a config document");

  m.def(
      "sweep",
      [](const std::string& config_json) {
        const SweepConfig config = parse_sweep_config(config_json);
        return sweep_csv(nmi_sweep(config.base, config.grid));
      },
      py::arg("config_json"),
      "detection sweep from a config document, as CSV text");

  m.def(
      "nmi",
      [](const std::vector<int>& a, const std::vector<int>& b) {
        return nmi_joint(a, b);
      },
      py::arg("a"), py::arg("b"),
      "joint-entropy normalized mutual information of two labelings");

  m.def(
      "mean_nmi",
      [](const MultilayerPartition& planted, const MultilayerPartition& found) {
        return per_layer_mean_nmi(planted, found).mean;
      },
      py::arg("planted"), py::arg("found"),
      "per-layer NMI averaged over layers");

  m.def("pairwise_layer_nmi", &pairwise_layer_nmi, py::arg("partition"),
        "layer-by-layer NMI matrix of one partition");

  m.def(
      "genlouvain",
      [](const MultilayerNetwork& network, double omega,
         const std::string& coupling, const std::string& rule,
         std::uint64_t seed) {
        ModularityConfig config;
        config.omega = omega;
        config.topology = topology_from_string(coupling);
        RngStream rng(seed);
        return genlouvain(network, config, rule_from_string(rule), rng);
      },
      py::arg("network"), py::arg("omega") = 1.0,
      py::arg("coupling") = "ordinal", py::arg("rule") = "max_gain",
      py::arg("seed") = 0,
      "two-phase multilayer modularity maximization");

  m.def(
      "modularity",
      [](const MultilayerPartition& partition, const MultilayerNetwork& network,
         double omega, const std::string& coupling) {
        ModularityConfig config;
        config.omega = omega;
        config.topology = topology_from_string(coupling);
        return multilayer_modularity(partition, network, config);
      },
      py::arg("partition"), py::arg("network"), py::arg("omega") = 1.0,
      py::arg("coupling") = "ordinal");

  m.def("format_partition", &format_partition, py::arg("partition"));
  m.def(
      "parse_partition",
      [](const std::string& text) { return parse_partition(text); },
      py::arg("text"), "partition from file text, shape inferred");
  m.def("format_network", &format_network, py::arg("network"));
  m.def(
      "parse_network",
      [](const std::string& text, const MultilayerShape& shape) {
        return parse_network(text, shape);
      },
      py::arg("text"), py::arg("shape"));
}
