#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "netlab/acceptance.hpp"
#include "netlab/cli.hpp"
#include "netlab/errors.hpp"
#include "netlab/generators.hpp"
#include "netlab/graph.hpp"
#include "netlab/inference.hpp"
#include "netlab/predict.hpp"
#include "netlab/sampling.hpp"
#include "netlab/statistics.hpp"

namespace py = pybind11;
using namespace netlab;

namespace {

std::vector<std::pair<Vertex, Vertex>> edge_pairs(const SimpleGraph& g) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

SimpleGraph make_simple(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<Edge> e;
  for (const auto& [a, b] : edges) e.emplace_back(a, b);
  return SimpleGraph(n, std::move(e));
}

std::map<std::string, double> to_dict(const EstimateReport& r) {
  std::map<std::string, double> out(r.values.begin(), r.values.end());
  out["n"] = static_cast<double>(r.n);
  out["clipped"] = r.clipped ? 1.0 : 0.0;
  return out;
}

py::dict observation_dict(const Observation& o) {
  py::dict d;
  std::visit([&](const auto& g) { d["graph"] = g; }, o.graph);
  d["mechanism"] = o.mechanism;
  d["provenance"] = o.provenance;
  d["label_map"] = o.label_map;
  return d;
}

PredictiveQuery make_query(const std::string& mechanism, double p, std::size_t n_pop,
                           const std::vector<std::pair<Vertex, Vertex>>& observed,
                           std::pair<Vertex, Vertex> target, std::size_t size, double rho) {
  PredictiveQuery q;
  q.mechanism = parse_predict_mechanism(mechanism);
  q.prior = ErSpec{p};
  q.n_pop = n_pop;
  q.sample_size = size;
  q.rho = rho;
  q.observed.clear();
  for (const auto& [a, b] : observed) q.observed.emplace_back(a, b);
  q.target = Edge(target.first, target.second);
  return q;
}

}  // namespace

PYBIND11_MODULE(_netlab, m) {
  m.doc() = "Statistical network models, sampling mechanisms and estimators";

  static py::exception<Error> base(m, "NetlabError");
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<ConditioningError>(m, "ConditioningError", base.ptr());
  py::register_exception<FitError>(m, "FitError", base.ptr());

  py::class_<SimpleGraph>(m, "SimpleGraph")
      .def(py::init(&make_simple), py::arg("n"), py::arg("edges") = std::vector<std::pair<Vertex, Vertex>>{})
      .def_property_readonly("n", &SimpleGraph::num_vertices)
      .def_property_readonly("num_edges", &SimpleGraph::num_edges)
      .def_property_readonly("edges", &edge_pairs)
      .def("has_edge", &SimpleGraph::has_edge)
      .def("degree", &SimpleGraph::degree)
      .def("__eq__", [](const SimpleGraph& a, const SimpleGraph& b) { return a == b; })
      .def("__repr__", [](const SimpleGraph& g) {
        return "SimpleGraph(n=" + std::to_string(g.num_vertices()) +
               ", edges=" + std::to_string(g.num_edges()) + ")";
      });

  py::class_<Multigraph>(m, "Multigraph")
      .def_property_readonly("num_edges", &Multigraph::num_edges)
      .def_property_readonly("pairs", [](const Multigraph& g) {
        std::vector<std::pair<VertexName, VertexName>> out;
        for (const NamedPair& p : g.pairs()) out.emplace_back(p.a, p.b);
        return out;
      })
      .def("project", [](const Multigraph& g) { return project(g); })
      .def("__repr__", [](const Multigraph& g) {
        return "Multigraph(pairs=" + std::to_string(g.num_edges()) + ")";
      });

  m.def("restrict", py::overload_cast<const SimpleGraph&, std::size_t>(&restrict), py::arg("g"),
        py::arg("m"));
  m.def(
      "relabel",
      [](const SimpleGraph& g, std::vector<Vertex> images) {
        return relabel(g, Permutation(std::move(images)));
      },
      py::arg("g"), py::arg("images"));
  m.def(
      "degree_profile", [](const SimpleGraph& g) { return degree_profile(g).counts; }, py::arg("g"));

  m.def(
      "generate",
      [](const std::string& spec, std::optional<std::size_t> size, Seed seed) -> py::object {
        const ParsedModel pm = parse_model_spec(spec);
        const AnyGraph g = generate(pm.spec, size ? size : pm.size, seed);
        return std::visit([](const auto& x) { return py::cast(x); }, g);
      },
      py::arg("spec"), py::arg("size") = py::none(), py::arg("seed") = 0);
  m.def("gen_er", &gen_er, py::arg("p"), py::arg("n"), py::arg("seed") = 0);

  m.def("vertex_sample", [](const SimpleGraph& g, std::size_t n, Seed s) {
    return observation_dict(vertex_sample(g, n, s));
  }, py::arg("g"), py::arg("n"), py::arg("seed") = 0);
  m.def("edge_sample", [](const SimpleGraph& g, std::size_t k, Seed s) {
    return observation_dict(edge_sample(g, k, s));
  }, py::arg("g"), py::arg("k"), py::arg("seed") = 0);
  m.def("snowball_chain", [](const SimpleGraph& g, std::size_t n, Seed s) {
    return observation_dict(snowball_chain(g, n, s));
  }, py::arg("g"), py::arg("n"), py::arg("seed") = 0);
  m.def("thin", &thin, py::arg("g"), py::arg("rho"), py::arg("seed") = 0);

  m.def("edge_density", &edge_density, py::arg("g"));
  m.def(
      "fit_power_law",
      [](const std::map<std::size_t, std::size_t>& counts, std::size_t k_min) {
        DegreeProfile d;
        d.counts = counts;
        for (const auto& [k, n] : counts) d.num_vertices += n;
        const PowerLawFit f = fit_power_law(d, k_min);
        return std::map<std::string, double>{{"gamma_hat", f.gamma_hat},
                                             {"k_min", static_cast<double>(f.k_min)},
                                             {"k_max", static_cast<double>(f.k_max)},
                                             {"r2", f.r2}};
      },
      py::arg("counts"), py::arg("k_min") = 2);

  m.def(
      "mle_thinned_er",
      [](const SimpleGraph& g, std::optional<double> rho) { return to_dict(mle_thinned_er(g, rho)); },
      py::arg("g"), py::arg("rho") = py::none());
  m.def(
      "estimate_reparam",
      [](const SimpleGraph& g, const std::string& f, std::optional<double> rho) {
        return to_dict(estimate_reparam(g, named_bijection(f), rho));
      },
      py::arg("g"), py::arg("f") = "theta-over-2-minus-theta", py::arg("rho") = py::none());

  const std::vector<std::pair<Vertex, Vertex>> default_observed{{1, 2}, {2, 3}};
  m.def(
      "predict_exact",
      [](const std::string& mechanism, double p, std::size_t n_pop,
         const std::vector<std::pair<Vertex, Vertex>>& observed, std::pair<Vertex, Vertex> target,
         std::size_t size, double rho) {
        return predict_exact(make_query(mechanism, p, n_pop, observed, target, size, rho)).probability;
      },
      py::arg("mechanism"), py::arg("p"), py::arg("n_pop") = 3, py::arg("observed") = default_observed,
      py::arg("target") = std::pair<Vertex, Vertex>{1, 3}, py::arg("size") = 0, py::arg("rho") = 3.0);
  m.def(
      "predict_mc",
      [](const std::string& mechanism, double p, std::size_t reps, Seed seed, std::size_t n_pop,
         const std::vector<std::pair<Vertex, Vertex>>& observed, std::pair<Vertex, Vertex> target) {
        McPrediction r;
        {
          py::gil_scoped_release release;
          r = predict_mc(make_query(mechanism, p, n_pop, observed, target, 0, 3.0), reps, seed);
        }
        py::dict d;
        d["probability"] = r.probability;
        d["se"] = r.standard_error;
        d["hits"] = r.hits;
        d["abstained"] = r.abstained;
        return d;
      },
      py::arg("mechanism"), py::arg("p"), py::arg("reps") = 100'000, py::arg("seed") = 0,
      py::arg("n_pop") = 3, py::arg("observed") = default_observed,
      py::arg("target") = std::pair<Vertex, Vertex>{1, 3});

  m.def(
      "run_suite",
      [](const std::string& name, Seed seed) {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const CriterionResult& r : run_suite(name, seed)) out.emplace_back(r.id, r.pass, r.detail);
        return out;
      },
      py::arg("name"), py::arg("seed") = 0);

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return std::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
