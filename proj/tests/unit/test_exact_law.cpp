#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "netlab/errors.hpp"
#include "netlab/exact_law.hpp"

using namespace netlab;

namespace {

std::vector<Permutation> symmetric_group(std::size_t n) {
  std::vector<Vertex> images(n);
  std::iota(images.begin(), images.end(), Vertex{1});
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

// Every set partition of [n] as canonical block-id vectors.
std::vector<Partition> set_partitions(std::size_t n) {
  std::vector<Partition> out;
  std::vector<std::int64_t> ids(n, 1);
  auto rec = [&](auto& self, std::size_t pos, std::int64_t used) -> void {
    if (pos == n) {
      out.emplace_back(std::span<const std::int64_t>(ids));
      return;
    }
    for (std::int64_t b = 1; b <= used + 1; ++b) {
      ids[pos] = b;
      self(self, pos + 1, std::max(used, b));
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace

TEST_CASE("GraphLaw validation") {
  CHECK_THROWS_AS(GraphLaw(2, {0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(GraphLaw(2, {-0.1, 1.1}), ValidationError);
  CHECK_THROWS_AS(GraphLaw(2, {1.0}), ValidationError);
  CHECK_THROWS_AS(GraphLaw(7, std::vector<double>(1, 1.0)), CapacityError);
  CHECK_NOTHROW(GraphLaw(2, {0.3, 0.7}));
  CHECK_NOTHROW(GraphLaw(1, {1.0}));
  const GraphLaw w = GraphLaw::from_weights(2, {1.0, 3.0});
  CHECK(w[1] == doctest::Approx(0.75));
  CHECK_THROWS_AS(GraphLaw::from_weights(2, {0.0, 0.0}), ValidationError);
}

TEST_CASE("marginals, relabeling and sampling") {
  const GraphLaw law = er_law(0.3, 4);
  CHECK(max_abs_difference(law.marginal(3), er_law(0.3, 3)) < 1e-15);
  CHECK(max_abs_difference(law.marginal(2), er_law(0.3, 2)) < 1e-15);
  CHECK(law.edge_probability(2, 4) == doctest::Approx(0.3));
  CHECK_THROWS_AS(law.marginal(5), RangeError);

  const GraphLaw point = GraphLaw::point_mass(SimpleGraph(3, {{1, 2}}));
  const GraphLaw moved = point.relabeled(Permutation::from_cycles(3, "(13)"));
  CHECK(moved.probability(SimpleGraph(3, {{2, 3}})) == 1.0);
  CHECK(moved.edge_probability(1, 2) == 0.0);

  const GraphLaw two(2, {0.25, 0.75});
  CHECK(two.sample_code(0.0) == 0);
  CHECK(two.sample_code(0.2499) == 0);
  CHECK(two.sample_code(0.25) == 1);
  CHECK(two.sample_code(0.9999999) == 1);
  CHECK(total_variation(two, GraphLaw(2, {0.5, 0.5})) == doctest::Approx(0.25));
}

TEST_CASE("exchangeable families are invariant under all relabelings of [3]") {
  const GridGraphon h(2, {0.9, 0.1, 0.1, 0.9});
  const ErgmSpec ergm{{ErgmStat::edges, ErgmStat::triangles, ErgmStat::two_stars},
                      {-1.0, 0.5, 0.2}, 3};
  for (const GraphLaw& law : {er_law(0.37, 3), graphon_law(h, 3), ergm_law(ergm)}) {
    for (const Permutation& s : symmetric_group(3)) {
      CHECK(max_abs_difference(law.relabeled(s), law) < 1e-15);
    }
  }
}

TEST_CASE("graphon law has marginal edge probability rho") {
  const GridGraphon h(2, {0.9, 0.1, 0.1, 0.9});
  const GraphLaw law = graphon_law(h, 3);
  CHECK(law.edge_probability(1, 2) == doctest::Approx(0.5).epsilon(1e-12));
  // Triangle mass: average over the 8 block assignments of the cell products.
  const double tri = (2 * 0.9 * 0.9 * 0.9 + 6 * 0.9 * 0.1 * 0.1) / 8;
  CHECK(law.probability(SimpleGraph::complete(3)) == doctest::Approx(tri).epsilon(1e-12));
}

TEST_CASE("SBM label equivariance") {
  for (const Partition& b : set_partitions(3)) {
    for (const Permutation& s : symmetric_group(3)) {
      const GraphLaw lhs = sbm_law(0.8, 0.1, b, 3).relabeled(s);
      const GraphLaw rhs = sbm_law(0.8, 0.1, relabel(b, s), 3);
      CHECK(max_abs_difference(lhs, rhs) < 1e-15);
    }
  }
}

TEST_CASE("SBM relative exchangeability") {
  const auto parts = set_partitions(4);
  CHECK(parts.size() == 15);
  for (const Partition& b : parts) {
    for (const Partition& c : parts) {
      if (!(b.restrict(3) == c.restrict(3))) continue;
      const GraphLaw lb = sbm_law(0.8, 0.1, b, 4).marginal(3);
      const GraphLaw lc = sbm_law(0.8, 0.1, c, 4).marginal(3);
      CHECK(max_abs_difference(lb, lc) < 1e-12);
    }
  }
}

TEST_CASE("beta model is sampling consistent") {
  const std::vector<double> b3{0.4, -1.2, 0.9};
  const std::vector<double> b2{0.4, -1.2};
  CHECK(max_abs_difference(beta_law(b3).marginal(2), beta_law(b2)) < 1e-12);
  const BetaSpec spec{b3};
  CHECK(max_abs_difference(exact_law(spec, 2), beta_law(b2)) < 1e-12);
  CHECK_THROWS_AS(exact_law(spec, 4), RangeError);
}

TEST_CASE("ERGM with triangles is not sampling consistent") {
  const ErgmSpec three{{ErgmStat::edges, ErgmStat::triangles}, {-1.0, 0.5}, 3};
  const ErgmSpec two{{ErgmStat::edges, ErgmStat::triangles}, {-1.0, 0.5}, 2};
  const double tv = total_variation(ergm_law(three).marginal(2), ergm_law(two));
  CHECK(tv > 1e-6);
}

TEST_CASE("indicator measure and rel-exch laws") {
  CHECK(indicator_measure([](double u) { return u <= 0.3; }) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(indicator_measure([](double u) { return u > 0.71; }) == doctest::Approx(0.29).epsilon(1e-12));
  CHECK(indicator_measure([](double) { return false; }) == 0.0);
  CHECK(indicator_measure([](double) { return true; }) == 1.0);

  const std::vector<double> pq{0.8, 0.1};
  for (const Partition& b : set_partitions(3)) {
    CHECK(max_abs_difference(rel_exch_law(pq, b, sbm_kernel(), 3), sbm_law(0.8, 0.1, b, 3)) <
          1e-12);
  }
  Kernel reads_u0{"u0", [](const KernelArgs& a) { return a.u0 < 0.5; }, false};
  CHECK_THROWS_AS(rel_exch_law({}, Partition{}, reads_u0, 3), UnsupportedError);
}

TEST_CASE("exact_law dispatch") {
  CHECK(max_abs_difference(exact_law(ErSpec{0.2}, 3), er_law(0.2, 3)) < 1e-15);
  const ErgmSpec ergm{{ErgmStat::edges}, {0.0}, 4};
  CHECK(exact_law(ergm, 2).num_vertices() == 2);
  CHECK_THROWS_AS(exact_law(PaSpec{0.0}, 3), UnsupportedError);
  CHECK_THROWS_AS(exact_law(EdgeExchSpec{}, 3), UnsupportedError);
  CHECK_THROWS_AS(er_law(0.5, 7), CapacityError);
}

TEST_CASE("law table text") {
  const ErgmSpec spec{{ErgmStat::edges, ErgmStat::triangles}, {-1.0, 0.5}, 3};
  const GraphLaw law = ergm_law(spec);
  std::stringstream io;
  write_law_table(io, law);
  const GraphLaw back = read_law_table(io);
  CHECK(max_abs_difference(law, back) < 1e-15);

  std::istringstream weights("# comment\nlaw n=2\n0 7\n1 3\n");
  CHECK(read_law_table(weights)[1] == doctest::Approx(0.3));

  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_law_table(in);
  };
  CHECK_THROWS_AS(parse(""), FormatError);
  CHECK_THROWS_AS(parse("law m=2\n"), FormatError);
  CHECK_THROWS_AS(parse("law n=2\n2 1\n"), FormatError);
  CHECK_THROWS_AS(parse("law n=2\n0 -1\n"), FormatError);
  CHECK_THROWS_AS(parse("law n=2\n0 x\n"), FormatError);
  CHECK_THROWS_AS(parse("law n=2\n"), FormatError);
  CHECK_THROWS_AS(parse("law n=7\n"), FormatError);
}
