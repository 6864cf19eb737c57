#include <doctest.h>

#include <cmath>

#include "netlab/errors.hpp"
#include "netlab/exact_law.hpp"
#include "netlab/generators.hpp"
#include "netlab/inference.hpp"
#include "netlab/sampling.hpp"
#include "support.hpp"

using namespace netlab;
using netlab::test::Moments;

namespace {

SimpleGraph first_edges(std::size_t n, std::size_t e) {
  std::vector<Edge> edges;
  for (Vertex j = 2; j <= n && edges.size() < e; ++j) {
    for (Vertex i = 1; i < j && edges.size() < e; ++i) edges.emplace_back(i, j);
  }
  return SimpleGraph(n, edges);
}

}  // namespace

TEST_CASE("mle_thinned_er") {
  SUBCASE("9 edges of 45 clips at one") {
    const EstimateReport r = mle_thinned_er(first_edges(10, 9));
    CHECK(r.value("p_hat") == doctest::Approx(0.2));
    CHECK(r.value("theta_hat") == 1.0);
    CHECK(r.clipped);
    CHECK(r.n == 10);
  }
  SUBCASE("empty observation") {
    const EstimateReport r = mle_thinned_er(SimpleGraph(12));
    CHECK(r.value("theta_hat") == 0.0);
    CHECK_FALSE(r.clipped);
  }
  SUBCASE("explicit rho") {
    const EstimateReport r = mle_thinned_er(first_edges(10, 9), 2.0);
    CHECK(r.value("theta_hat") == doctest::Approx(0.4));
    CHECK_FALSE(r.clipped);
  }
  SUBCASE("closed form maximizes the likelihood on [3]") {
    for (const SimpleGraph& g : enumerate_graphs(3)) {
      const double e = static_cast<double>(g.num_edges());
      double best_theta = 0.0;
      double best = -INFINITY;
      for (int step = 0; step <= 10'000; ++step) {
        const double theta = step * 1e-4;
        const double q = theta / 3.0;
        const double ll = (e > 0 ? e * std::log(q) : 0.0) + (3.0 - e) * std::log1p(-q);
        if (ll > best) {
          best = ll;
          best_theta = theta;
        }
      }
      CHECK(std::abs(best_theta - mle_thinned_er(g).value("theta_hat")) <= 1e-3);
    }
  }
  CHECK_THROWS_AS(mle_thinned_er(SimpleGraph(1)), PreconditionError);
  CHECK_THROWS_AS(mle_thinned_er(SimpleGraph(4), 0.5), ValidationError);
  CHECK_THROWS_AS(mle_thinned_er(SimpleGraph(4)).value("nope"), RangeError);
}

TEST_CASE("estimate_reparam") {
  const Bijection f = theta_over_two_minus_theta();
  CHECK(f.f(0.5) == doctest::Approx(1.0 / 3.0));
  CHECK(f.inverse(1.0 / 3.0) == doctest::Approx(0.5));
  CHECK(f.inverse(0.0) == 0.0);
  CHECK(f.inverse(1.0) == 1.0);

  SUBCASE("identity reproduces the MLE bit for bit") {
    for (Seed s = 0; s < 20; ++s) {
      const SimpleGraph g = gen_er(0.05, 40, s);
      CHECK(estimate_reparam(g, identity_bijection()).value("theta_tilde") ==
            mle_thinned_er(g).value("theta_hat"));
    }
  }
  SUBCASE("empty observation maps to f^-1(0)") {
    CHECK(estimate_reparam(SimpleGraph(8), f).value("theta_tilde") == f.inverse(0.0));
  }
  SUBCASE("bad inverse is rejected") {
    const Bijection broken{"broken", [](double t) { return t; }, [](double y) { return y / 2; }};
    CHECK_THROWS_AS(estimate_reparam(SimpleGraph(4), broken), ValidationError);
  }
  CHECK(named_bijection("identity").name == "identity");
  CHECK(named_bijection("theta-over-2-minus-theta").inverse(0.5) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(named_bijection("square"), ValidationError);
}

TEST_CASE("thinned ER Monte Carlo") {
  // Smaller than the acceptance run; checks the centring of both estimators.
  const std::size_t n = 1000;
  const Bijection f = theta_over_two_minus_theta();
  Moments mle_direct, mle_raw, tilde;
  for (Seed s = 0; s < 30; ++s) {
    const SimpleGraph direct = thin(gen_er(0.6, n, s), static_cast<double>(n), s + 500);
    mle_direct.add(mle_thinned_er(direct).value("theta_hat"));
    const SimpleGraph shifted = thin(gen_er(f.f(0.5), n, s + 1000), static_cast<double>(n), s + 1500);
    mle_raw.add(mle_thinned_er(shifted).value("theta_hat"));
    tilde.add(estimate_reparam(shifted, f).value("theta_tilde"));
  }
  CHECK(mle_direct.within(0.6));
  CHECK(mle_raw.within(1.0 / 3.0));
  CHECK(tilde.within(0.5));
  CHECK(tilde.mean() - mle_raw.mean() > 0.1);
}

TEST_CASE("mle_sbm_rates") {
  CHECK_THROWS_AS(mle_sbm_rates(SimpleGraph(3), Partition::singletons(3)), DegenerateDesignError);
  CHECK_THROWS_AS(mle_sbm_rates(SimpleGraph(3), Partition::one_block(3)), DegenerateDesignError);
  CHECK_THROWS_AS(mle_sbm_rates(SimpleGraph(3), Partition{1, 1, 2, 2}), ValidationError);

  const EstimateReport full = mle_sbm_rates(SimpleGraph::complete(5), Partition{1, 2, 1, 2, 2});
  CHECK(full.value("p_hat") == 1.0);
  CHECK(full.value("q_hat") == 1.0);

  const EstimateReport exact = mle_sbm_rates(SimpleGraph(4, {{1, 2}, {1, 3}}), Partition{1, 1, 2, 2});
  CHECK(exact.value("p_hat") == doctest::Approx(0.5));
  CHECK(exact.value("q_hat") == doctest::Approx(0.25));

  SUBCASE("concentration at n=200") {
    std::vector<std::int64_t> ids(200);
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i < 100 ? 1 : 2;
    const Partition b{std::span<const std::int64_t>(ids)};
    std::size_t close = 0;
    for (Seed s = 0; s < 200; ++s) {
      const EstimateReport r = mle_sbm_rates(gen_sbm(0.8, 0.1, b, s), b);
      close += std::abs(r.value("p_hat") - 0.8) <= 0.03 && std::abs(r.value("q_hat") - 0.1) <= 0.03;
    }
    CHECK(close >= 190);
  }
}

TEST_CASE("identifiability") {
  const IdentifiabilityReport er = identifiability_check("er", 2);
  CHECK(er.completely_identifiable);
  CHECK(er.verdict() == "completely-identifiable");
  CHECK(er.witness >= 0.1 - 1e-12);

  const IdentifiabilityReport sbm = identifiability_check("sbm", 3);
  CHECK_FALSE(sbm.completely_identifiable);
  CHECK(sbm.verdict() == "not-completely-identifiable");
  CHECK(sbm.witness <= 1e-12);

  SUBCASE("p = q makes every partition give the same law") {
    const GraphLaw ref = er_law(0.4, 3);
    for (const Partition& b : {Partition{1, 1, 1}, Partition{1, 2, 3}, Partition{1, 2, 1}}) {
      CHECK(max_abs_difference(sbm_law(0.4, 0.4, b, 3), ref) < 1e-15);
    }
  }
  CHECK_THROWS_AS(identifiability_check("pa", 2), UnsupportedError);
  CHECK_THROWS_AS(identifiability_check("er", 4), RangeError);
  CHECK_THROWS_AS(identifiability_check("er", 1), RangeError);
}
