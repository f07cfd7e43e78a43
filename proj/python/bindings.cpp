#include <accx/algorithms.hpp>
#include <accx/cli.hpp>
#include <accx/fusion.hpp>
#include <accx/graph.hpp>
#include <accx/reference.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace accx;

namespace {

EngineConfig make_config(unsigned workers, std::size_t threshold, bool deterministic, const std::string& filter,
                         double alpha) {
  EngineConfig cfg;
  cfg.worker_count = workers;
  cfg.overflow_threshold = threshold;
  cfg.deterministic = deterministic;
  cfg.filter = parse_filter_mode(filter);
  cfg.direction_alpha = alpha;
  cfg.validate();
  return cfg;
}

template <class T>
py::tuple result(AlgoRun<T>&& r) {
  return py::make_tuple(std::move(r.values), stats_json(r.stats, -1));
}

#define ACCX_ENGINE_ARGS                                                                                      \
  py::arg("workers") = 1, py::arg("threshold") = kDefaultOverflowThreshold, py::arg("deterministic") = false, \
  py::arg("filter") = "jit", py::arg("alpha") = 20.0

CsrGraph from_edges(const std::vector<std::tuple<VertexId, VertexId, Weight>>& edges, bool directed, bool reverse,
                    bool weighted, std::uint64_t vertex_count) {
  EdgeList el;
  el.directed = directed;
  el.weighted = weighted;
  for (const auto& [s, d, w] : edges) {
    el.edges.push_back({s, d, w});
    el.vertex_count = std::max<std::uint64_t>(el.vertex_count, std::max(s, d) + std::uint64_t{1});
  }
  el.vertex_count = std::max(el.vertex_count, vertex_count);
  return build_csr(el, reverse && directed);
}

}  // namespace

PYBIND11_MODULE(_accx, m) {
  m.doc() = "Frontier-managed graph engine";

  py::register_exception<Error>(m, "AccxError", PyExc_RuntimeError);

  py::class_<CsrGraph>(m, "Graph")
      .def_property_readonly("vertex_count", &CsrGraph::vertex_count)
      .def_property_readonly("edge_count", &CsrGraph::edge_count)
      .def_property_readonly("directed", &CsrGraph::directed)
      .def_property_readonly("weighted", &CsrGraph::weighted)
      .def_property_readonly("has_reverse", &CsrGraph::has_reverse)
      .def("out_neighbors",
           [](const CsrGraph& g, VertexId v) {
             if (v >= g.vertex_count()) throw py::index_error("vertex out of range");
             auto s = g.out_neighbors(v);
             return std::vector<VertexId>(s.begin(), s.end());
           })
      .def("arcs",
           [](const CsrGraph& g) {
             std::vector<std::tuple<VertexId, VertexId, Weight>> out;
             for (const auto& e : g.arcs()) out.emplace_back(e.src, e.dst, e.weight);
             return out;
           })
      .def("with_reverse", &CsrGraph::with_reverse)
      .def("save", [](const CsrGraph& g, const std::string& path) { write_binary_file(g, path); })
      .def("__eq__", [](const CsrGraph& a, const CsrGraph& b) { return a == b; })
      .def("__repr__", [](const CsrGraph& g) {
        std::ostringstream os;
        os << "Graph(V=" << g.vertex_count() << ", E=" << g.edge_count() << (g.directed() ? ", directed" : "") << ")";
        return os.str();
      });

  m.def("from_edges", &from_edges, py::arg("edges"), py::arg("directed") = false, py::arg("reverse") = false,
        py::arg("weighted") = false, py::arg("vertex_count") = 0);
  m.def("load_edge_list",
        [](const std::string& path, bool directed, bool reverse) {
          return build_csr(load_edge_list_file(path, directed), reverse && directed);
        },
        py::arg("path"), py::arg("directed") = false, py::arg("reverse") = false);
  m.def("read_binary", &read_binary_file, py::arg("path"));
  m.def("generate_rmat",
        [](unsigned scale, double edge_factor, std::uint64_t seed, bool directed, bool reverse) {
          return build_csr(generate_rmat(scale, edge_factor, seed, directed), reverse && directed);
        },
        py::arg("scale"), py::arg("edge_factor") = 16.0, py::arg("seed") = 1, py::arg("directed") = false,
        py::arg("reverse") = false);
  m.def("generate_weights",
        [](const CsrGraph& g, std::uint64_t seed, double lo, double hi, bool integer) {
          return generate_weights(g, seed, lo, hi, integer ? WeightKind::integer : WeightKind::real);
        },
        py::arg("graph"), py::arg("seed"), py::arg("lo") = 1.0, py::arg("hi") = 10.0, py::arg("integer") = false);

  m.def("bfs",
        [](const CsrGraph& g, VertexId source, unsigned w, std::size_t t, bool d, const std::string& f, double a) {
          return result(bfs(g, source, make_config(w, t, d, f, a)));
        },
        py::arg("graph"), py::arg("source"), ACCX_ENGINE_ARGS);
  m.def("sssp",
        [](const CsrGraph& g, VertexId source, std::optional<double> delta, unsigned w, std::size_t t, bool d,
           const std::string& f, double a) { return result(sssp(g, source, delta, make_config(w, t, d, f, a))); },
        py::arg("graph"), py::arg("source"), py::arg("delta") = py::none(), ACCX_ENGINE_ARGS);
  m.def("kcore",
        [](const CsrGraph& g, std::uint64_t k, unsigned w, std::size_t t, bool d, const std::string& f, double a) {
          auto r = kcore(g, k, make_config(w, t, d, f, a));
          std::vector<bool> alive;
          std::vector<std::uint64_t> counts;
          for (const auto& m : r.values) {
            alive.push_back(m.alive);
            counts.push_back(m.count);
          }
          return py::make_tuple(alive, counts, stats_json(r.stats, -1));
        },
        py::arg("graph"), py::arg("k") = kDefaultK, ACCX_ENGINE_ARGS);
  m.def("pagerank",
        [](const CsrGraph& g, double damping, std::optional<double> epsilon, std::uint32_t max_iterations,
           unsigned w, std::size_t t, bool d, const std::string& f, double a) {
          return result(pagerank(g, {damping, epsilon, max_iterations}, make_config(w, t, d, f, a)));
        },
        py::arg("graph"), py::arg("damping") = 0.85, py::arg("epsilon") = py::none(),
        py::arg("max_iterations") = 1000, ACCX_ENGINE_ARGS);
  m.def("belief_propagation",
        [](const CsrGraph& g, const std::vector<double>& priors, std::uint32_t iterations, unsigned w,
           std::size_t t, bool d, const std::string& f, double a) {
          return result(belief_propagation(g, priors, iterations, make_config(w, t, d, f, a)));
        },
        py::arg("graph"), py::arg("priors"), py::arg("iterations") = kDefaultBpIterations, ACCX_ENGINE_ARGS);

  auto ref = m.def_submodule("reference", "Sequential oracles");
  ref.def("bfs", &reference::bfs);
  ref.def("dijkstra", &reference::dijkstra);
  ref.def("kcore_alive", [](const CsrGraph& g, std::uint64_t k) {
    auto p = reference::kcore(g, k);
    return std::vector<bool>(p.alive.begin(), p.alive.end());
  });
  ref.def("pagerank", [](const CsrGraph& g, double d) { return reference::pagerank(g, d); }, py::arg("graph"),
          py::arg("damping") = 0.85);
  ref.def("belief_propagation", [](const CsrGraph& g, const std::vector<double>& priors, std::uint32_t it) {
    return reference::belief_propagation(g, priors, it);
  });

  m.def("max_resident_ctas",
        [](std::uint64_t regs_per_smx, std::uint64_t smx, std::uint64_t threads_per_cta, std::uint64_t regs) {
          return max_resident_ctas({"custom", regs_per_smx, smx, threads_per_cta}, {"kernel", regs, {}});
        },
        py::arg("registers_per_smx"), py::arg("smx_count"), py::arg("threads_per_cta"),
        py::arg("registers_per_thread"));
  m.def("simulate_barrier",
        [](std::uint64_t launched, std::uint64_t capacity, std::uint64_t rounds) {
          const auto r = simulate_barrier(launched, capacity, rounds);
          return r.completed ? std::string("completed") : "deadlocked at round " + std::to_string(r.deadlock_round);
        },
        py::arg("launched_ctas"), py::arg("resident_capacity"), py::arg("barrier_rounds") = 1);
  m.def("plan_launch_count",
        [](const std::string& phases, const std::string& strategy) {
          const auto p = parse_phase_trace(phases);
          return plan_fusion(p, parse_fusion_strategy(strategy)).launch_count;
        },
        py::arg("phases"), py::arg("strategy"));

  m.def("cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::main(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
