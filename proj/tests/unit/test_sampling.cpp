#include <doctest.h>

#include <cmath>
#include <set>

#include "netlab/errors.hpp"
#include "netlab/exact_law.hpp"
#include "netlab/generators.hpp"
#include "netlab/sampling.hpp"
#include "netlab/statistics.hpp"
#include "support.hpp"

using namespace netlab;
using netlab::test::graph_law_pvalue;
using netlab::test::kAlpha;
using netlab::test::Moments;
using netlab::test::within_binomial;

namespace {

const SimpleGraph& observed(const Observation& o) { return std::get<SimpleGraph>(o.graph); }

SimpleGraph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 1; v < n; ++v) e.emplace_back(v, v + 1);
  return SimpleGraph(n, e);
}

SimpleGraph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex v = 2; v <= leaves + 1; ++v) e.emplace_back(1, v);
  return SimpleGraph(leaves + 1, e);
}

// label_map is injective onto 1..k and the observed edges are the population
// edges among sampled units.
void check_induced(const SimpleGraph& g, const Observation& o) {
  std::set<Vertex> labels;
  for (const auto& [id, label] : o.label_map) labels.insert(label);
  CHECK(labels.size() == o.label_map.size());
  CHECK(observed(o).num_vertices() == o.label_map.size());
  for (const auto& [a, la] : o.label_map) {
    for (const auto& [b, lb] : o.label_map) {
      if (a < b) {
        CHECK(observed(o).has_edge(la, lb) ==
              g.has_edge(static_cast<Vertex>(a), static_cast<Vertex>(b)));
      }
    }
  }
}

}  // namespace

TEST_CASE("canonical") {
  const Observation o = canonical(SimpleGraph::complete(4), 2);
  CHECK(observed(o) == SimpleGraph(2, {{1, 2}}));
  CHECK(observed(canonical(SimpleGraph(5), 3)) == SimpleGraph(3));
  const SimpleGraph p3 = path_graph(3);
  CHECK(observed(canonical(observed(canonical(p3, 3)), 2)) == observed(canonical(p3, 2)));
  CHECK(o.provenance == std::vector<std::uint64_t>{1, 2});
  CHECK_THROWS_AS(canonical(p3, 4), RangeError);

  const Multigraph m({{4, 9}, {9, 2}, {4, 9}});
  CHECK(std::get<Multigraph>(canonical(m, 2).graph) == Multigraph({{4, 9}, {9, 2}}));
  CHECK_THROWS_AS(canonical(m, 4), RangeError);
}

TEST_CASE("vertex_sample") {
  SUBCASE("full sample is a relabeled copy") {
    const SimpleGraph g(5, {{1, 2}, {2, 3}, {3, 5}, {1, 4}});
    for (Seed s = 0; s < 20; ++s) {
      const Observation o = vertex_sample(g, 5, s);
      CHECK(observed(o).num_edges() == g.num_edges());
      check_induced(g, o);
    }
  }
  SUBCASE("empty population") {
    for (Seed s = 0; s < 10; ++s) CHECK(observed(vertex_sample(SimpleGraph(8), 4, s)).empty());
  }
  SUBCASE("ER population gives ER observations") {
    Moments density;
    double edge_hits = 0;
    const std::size_t reps = 4000;
    for (Seed s = 0; s < reps; ++s) {
      const SimpleGraph pop = gen_er(0.3, 100, s);
      const Observation o = vertex_sample(pop, 10, s);
      check_induced(pop, o);
      density.add(edge_density(observed(o)));
      edge_hits += observed(vertex_sample(pop, 2, s + 7)).num_edges();
    }
    CHECK(density.within(0.3));
    CHECK(within_binomial(edge_hits, reps, 0.3));
  }
  SUBCASE("labels are a uniform bijection") {
    // Population vertex 1 receives label 1 in a third of the 3-of-3 samples.
    double hits = 0;
    for (Seed s = 0; s < 30'000; ++s) hits += vertex_sample(SimpleGraph(3), 3, s).label_map.at(1) == 1;
    CHECK(within_binomial(hits, 30'000, 1.0 / 3.0));
  }
  CHECK_THROWS_AS(vertex_sample(SimpleGraph(3), 4, 0), RangeError);
}

TEST_CASE("edge_sample") {
  SUBCASE("single edge drawn twice") {
    const Observation o = edge_sample(SimpleGraph(2, {{1, 2}}), 2, 3);
    CHECK(observed(o) == SimpleGraph(2, {{1, 2}}));
    CHECK(o.edge_sequence.size() == 2);
  }
  SUBCASE("triangle, one draw") {
    for (Seed s = 0; s < 10; ++s) {
      CHECK(observed(edge_sample(SimpleGraph::complete(3), 1, s)) == SimpleGraph(2, {{1, 2}}));
    }
  }
  SUBCASE("path 1-2-3, two draws: distinct adjacent edges with probability 1/2") {
    double hits = 0;
    const std::size_t reps = 40'000;
    for (Seed s = 0; s < reps; ++s) hits += observed(edge_sample(path_graph(3), 2, s)).num_edges() == 2;
    CHECK(within_binomial(hits, reps, 0.5));
  }
  SUBCASE("first edge endpoints are ordered uniformly") {
    double hits = 0;
    for (Seed s = 0; s < 20'000; ++s) hits += edge_sample(SimpleGraph(2, {{1, 2}}), 1, s).label_map.at(1) == 1;
    CHECK(within_binomial(hits, 20'000, 0.5));
  }
  SUBCASE("labels follow discovery") {
    const Observation o = edge_sample(gen_er(0.2, 30, 1), 10, 5);
    CHECK(o.provenance.size() == observed(o).num_vertices());
    for (std::size_t k = 0; k < o.provenance.size(); ++k) {
      CHECK(o.label_map.at(o.provenance[k]) == k + 1);
    }
  }
  CHECK_THROWS_AS(edge_sample(SimpleGraph(4), 1, 0), PreconditionError);
}

TEST_CASE("snowball_full") {
  SUBCASE("quota 1") {
    const Observation o = snowball_full(path_graph(5), 1, 2);
    CHECK(observed(o) == SimpleGraph(1));
  }
  SUBCASE("star from the centre") {
    const Observation o = snowball_full(star(4), 5, 2, Vertex{1});
    CHECK(observed(o).num_edges() == 4);
    check_induced(star(4), o);
  }
  SUBCASE("path 1..5 from vertex 3 with quota 3") {
    for (Seed s = 0; s < 10; ++s) {
      const Observation o = snowball_full(path_graph(5), 3, s, Vertex{3});
      CHECK(o.provenance == std::vector<std::uint64_t>{3, 2, 4});
      CHECK(observed(o) == SimpleGraph(3, {{1, 2}, {1, 3}}));
    }
  }
  SUBCASE("overflowing frontier is cut uniformly") {
    double hits = 0;
    for (Seed s = 0; s < 20'000; ++s) {
      const Observation o = snowball_full(star(4), 3, s, Vertex{1});
      CHECK(o.provenance.size() == 3);
      hits += o.label_map.count(2);
    }
    CHECK(within_binomial(hits, 20'000, 0.5));
  }
  SUBCASE("exhausted component restarts") {
    const SimpleGraph two_parts(4, {{1, 2}, {3, 4}});
    const Observation o = snowball_full(two_parts, 4, 1, Vertex{1});
    CHECK(o.provenance.size() == 4);
    CHECK(observed(o).num_edges() == 2);
  }
  CHECK_THROWS_AS(snowball_full(path_graph(3), 4, 0), RangeError);
  CHECK_THROWS_AS(snowball_full(path_graph(3), 2, 0, Vertex{9}), RangeError);
}

TEST_CASE("snowball_chain") {
  CHECK(observed(snowball_chain(path_graph(4), 1, 0)) == SimpleGraph(1));
  SUBCASE("triangle") {
    for (Seed s = 0; s < 10; ++s) {
      const Observation o = snowball_chain(SimpleGraph::complete(3), 3, s);
      CHECK(observed(o) == SimpleGraph::complete(3));
      CHECK(o.fallbacks == 0);
      CHECK(o.edge_sequence == std::vector<Edge>{{1, 2}, {2, 3}});
    }
  }
  SUBCASE("empty graph uses the fallback every step") {
    const Observation o = snowball_chain(SimpleGraph(3), 3, 4);
    CHECK(observed(o).empty());
    CHECK(o.fallbacks == 2);
    CHECK(o.edge_sequence.empty());
  }
  SUBCASE("complete graph never falls back") {
    const Observation o = snowball_chain(SimpleGraph::complete(12), 12, 9);
    CHECK(o.fallbacks == 0);
    std::set<std::uint64_t> distinct(o.provenance.begin(), o.provenance.end());
    CHECK(distinct.size() == 12);
  }
  SUBCASE("second vertex is a uniform neighbour") {
    double hits = 0, trials = 0;
    for (Seed s = 0; s < 30'000; ++s) {
      const Observation o = snowball_chain(star(3), 2, s);
      if (o.provenance[0] != 1) continue;
      trials += 1;
      hits += o.provenance[1] == 2;
    }
    CHECK(within_binomial(hits, trials, 1.0 / 3.0));
  }
  CHECK_THROWS_AS(snowball_chain(path_graph(3), 5, 0), RangeError);
}

TEST_CASE("thin") {
  const SimpleGraph g = gen_er(0.5, 15, 3);
  CHECK(thin(g, 1.0, 4) == g);
  CHECK(thin(SimpleGraph(6), 3.0, 4) == SimpleGraph(6));
  SUBCASE("complete graph on 20 at rho 2 keeps 95 edges on average") {
    Moments kept;
    for (Seed s = 0; s < 10'000; ++s) kept.add(thin(SimpleGraph::complete(20), 2.0, s).num_edges());
    CHECK(kept.within(95.0));
    CHECK(thin(SimpleGraph::complete(20), 2.0, 1).num_vertices() == 20);
  }
  SUBCASE("thinning composes multiplicatively") {
    Moments twice;
    Moments once;
    const SimpleGraph k = SimpleGraph::complete(10);
    for (Seed s = 0; s < 10'000; ++s) {
      twice.add(thin(thin(k, 2.0, s), 1.5, s + 1'000'000).num_edges());
      once.add(thin(k, 3.0, s + 2'000'000).num_edges());
    }
    CHECK(twice.within(15.0));
    CHECK(once.within(15.0));
  }
  CHECK_THROWS_AS(thin(g, 0.5, 1), ValidationError);
}

TEST_CASE("path_sample") {
  SUBCASE("single edge") {
    const PathObservation p = path_sample(SimpleGraph(2, {{1, 2}}), 1, 3);
    REQUIRE(p.paths.size() == 1);
    const auto& path = p.paths[0];
    CHECK((path == std::vector<Vertex>{1, 2} || path == std::vector<Vertex>{2, 1}));
  }
  SUBCASE("leaves of a star route through the hub") {
    CHECK(shortest_path(star(3), 2, 4) == std::vector<Vertex>{2, 1, 4});
    const PathObservation p = path_sample(star(3), 20, 1);
    for (std::size_t r = 0; r < p.paths.size(); ++r) {
      if (p.requests[r].first != 1 && p.requests[r].second != 1) CHECK(p.paths[r].size() == 3);
    }
  }
  SUBCASE("path graph") {
    CHECK(shortest_path(path_graph(3), 1, 3) == std::vector<Vertex>{1, 2, 3});
  }
  SUBCASE("lexicographic tie-break on a 4-cycle") {
    const SimpleGraph c4(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
    CHECK(shortest_path(c4, 1, 3) == std::vector<Vertex>{1, 2, 3});
  }
  SUBCASE("unreachable pairs are recorded") {
    const SimpleGraph split(4, {{1, 2}, {3, 4}});
    const PathObservation p = path_sample(split, 50, 2);
    CHECK(p.requests.size() == 50);
    CHECK(p.paths.size() + p.unreachable == 50);
    CHECK(p.unreachable > 0);
    CHECK(shortest_path(split, 1, 3).empty());
  }
  SUBCASE("union of paths") {
    const SimpleGraph g = gen_er(0.2, 25, 4);
    const PathObservation p = path_sample(g, 8, 5);
    const Observation o = to_observation(p);
    for (const auto& path : p.paths) {
      for (std::size_t i = 1; i < path.size(); ++i) CHECK(g.has_edge(path[i - 1], path[i]));
    }
    for (const Edge& e : observed(o).edges()) {
      CHECK(g.has_edge(static_cast<Vertex>(o.provenance[e.u - 1]),
                       static_cast<Vertex>(o.provenance[e.v - 1])));
    }
  }
}

TEST_CASE("universal_embed") {
  SUBCASE("one vertex") {
    CHECK(universal_embed(GraphLaw(1, {1.0}), 0.5, 3) == SimpleGraph(1));
  }
  SUBCASE("two-vertex target with edge mass 0.3") {
    const GraphLaw mu(2, {0.7, 0.3});
    double hits = 0;
    const std::size_t reps = 100'000;
    for (Seed s = 0; s < reps; ++s) hits += universal_embed(mu, 0.5, s).num_edges();
    CHECK(within_binomial(hits, reps, 0.3));
  }
  SUBCASE("ERGM target on 3 vertices") {
    const GraphLaw mu = ergm_law({{ErgmStat::edges, ErgmStat::triangles}, {-1.0, 0.5}, 3});
    const double pv =
        graph_law_pvalue(mu, 100'000, [&](std::size_t r) { return universal_embed(mu, 0.5, r); });
    CHECK(pv >= kAlpha);
  }
  SUBCASE("embedding is an induced subgraph of the population") {
    const GraphLaw mu = er_law(0.7, 4);
    for (Seed s = 0; s < 20; ++s) {
      const Observation o = universal_sample(mu, 0.3, s);
      CHECK(o.provenance.size() == 4);
      for (std::size_t k = 1; k < o.provenance.size(); ++k) CHECK(o.provenance[k - 1] < o.provenance[k]);
    }
  }
  CHECK_THROWS_AS(universal_embed(er_law(0.5, 6), 0.5, 1), ValidationError);
  CHECK_THROWS_AS(universal_embed(er_law(0.5, 2), 1.0, 1), ValidationError);
  CHECK_THROWS_AS(GraphLaw(2, {0.8, 0.3}), ValidationError);
}
