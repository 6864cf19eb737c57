#include <doctest.h>

#include <cmath>

#include "netlab/errors.hpp"
#include "netlab/generators.hpp"
#include "netlab/statistics.hpp"
#include "support.hpp"

using namespace netlab;

namespace {

DegreeProfile profile_from(const std::vector<std::pair<std::size_t, double>>& counts) {
  DegreeProfile d;
  for (const auto& [k, n] : counts) {
    const auto c = static_cast<std::size_t>(std::llround(n));
    if (c == 0) continue;
    d.counts[k] = c;
    d.num_vertices += c;
  }
  return d;
}

}  // namespace

TEST_CASE("edge_density") {
  CHECK(edge_density(SimpleGraph::complete(7)) == 1.0);
  CHECK(edge_density(SimpleGraph(5)) == 0.0);
  CHECK(edge_density(SimpleGraph(3, {{1, 2}, {2, 3}})) == doctest::Approx(2.0 / 3.0));
  const SimpleGraph g(5, {{1, 2}, {2, 5}, {3, 4}});
  CHECK(edge_density(relabel(g, Permutation::from_cycles(5, "(15)(234)"))) == edge_density(g));
  CHECK_THROWS_AS(edge_density(SimpleGraph(1)), PreconditionError);
}

TEST_CASE("sparsity_trace") {
  const std::vector<std::size_t> sizes{10, 50, 200};
  SUBCASE("ER stream stays near p") {
    const SimpleGraph g = gen_er(0.3, 200, 11);
    const SparsityTrace t = sparsity_trace(g, sizes);
    REQUIRE(t.densities.size() == 3);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const double pairs = sizes[i] * (sizes[i] - 1) / 2.0;
      CHECK(test::within_binomial(t.densities[i] * pairs, pairs, 0.3));
    }
  }
  SUBCASE("empty stream") {
    const SparsityTrace t = sparsity_trace(SimpleGraph(200), sizes);
    for (double d : t.densities) CHECK(d == 0.0);
    CHECK_FALSE(t.strictly_decreasing());
  }
  SUBCASE("projected edge-exchangeable prefixes thin out") {
    const std::vector<std::size_t> m{1000, 10'000, 100'000};
    std::size_t decreasing = 0;
    for (Seed s = 0; s < 5; ++s) {
      decreasing += sparsity_trace(gen_edge_exch(0.6, 1.0, 100'000, 100'000, s), m).strictly_decreasing();
    }
    CHECK(decreasing >= 4);
  }
  SUBCASE("multigraph prefix densities") {
    const Multigraph g({{1, 2}, {1, 2}, {3, 4}});
    const std::vector<std::size_t> m{1, 2, 3};
    const SparsityTrace t = sparsity_trace(g, m);
    CHECK(t.densities == std::vector<double>{1.0, 1.0, 2.0 / 6.0});
  }
  const std::vector<std::size_t> bad{5, 5};
  CHECK_THROWS_AS(sparsity_trace(SimpleGraph(10), bad), ValidationError);
}

TEST_CASE("fit_power_law") {
  SUBCASE("exact k^-2 profile") {
    std::vector<std::pair<std::size_t, double>> c;
    for (std::size_t k = 1; k <= 100; ++k) c.emplace_back(k, 1e6 / (k * k));
    const DegreeProfile d = profile_from(c);
    const PowerLawFit fit = fit_power_law(d, 1);
    CHECK(fit.gamma_hat == doctest::Approx(2.0).epsilon(0.025));
    CHECK(fit.k_min == 1);
    CHECK(fit.k_max == 100);
    CHECK(fit.r2 > 0.999);
    CHECK_FALSE(fit.low_fit());
    CHECK(fit_power_law(d).gamma_hat == doctest::Approx(2.0).epsilon(0.025));
  }
  SUBCASE("geometric profile fits poorly") {
    std::vector<std::pair<std::size_t, double>> c;
    for (std::size_t k = 1; k <= 200; ++k) c.emplace_back(k, 1e6 * std::pow(0.8, k));
    const PowerLawFit fit = fit_power_law(profile_from(c), 2);
    CHECK(fit.r2 == doctest::Approx(0.8635).epsilon(1e-3));
    CHECK(fit.low_fit());
  }
  SUBCASE("scale equivariance") {
    std::vector<std::pair<std::size_t, double>> c, scaled;
    for (std::size_t k = 1; k <= 40; ++k) {
      const double n = std::round(5e4 * std::pow(k, -1.7) + 3 * (k % 3));
      c.emplace_back(k, n);
      scaled.emplace_back(k, 7 * n);
    }
    const PowerLawFit a = fit_power_law(profile_from(c), 2);
    const PowerLawFit b = fit_power_law(profile_from(scaled), 2);
    REQUIRE(a.k_max == b.k_max);
    CHECK(std::abs(a.gamma_hat - b.gamma_hat) < 1e-10);
    CHECK(a.intercept == doctest::Approx(b.intercept));
  }
  SUBCASE("tail cutoff") {
    const DegreeProfile d = profile_from({{2, 100}, {3, 50}, {4, 20}, {5, 10}, {6, 6}, {7, 4}, {8, 9}});
    const PowerLawFit fit = fit_power_law(d, 2);
    CHECK(fit.k_max == 8);
    CHECK(fit.points == 6);
  }
  SUBCASE("insufficient support") {
    CHECK_THROWS_AS(fit_power_law(profile_from({{1, 100}, {2, 50}, {3, 20}, {4, 3}}), 1), FitError);
    CHECK_THROWS_AS(fit_power_law(DegreeProfile{}, 2), FitError);
    std::vector<std::pair<std::size_t, double>> c;
    for (std::size_t k = 1; k <= 10; ++k) c.emplace_back(k, 100.0);
    CHECK_THROWS_AS(fit_power_law(profile_from(c), 0), FitError);
  }
}

TEST_CASE("density_martingale_check") {
  const std::vector<std::size_t> sizes{3, 10, 30};
  SUBCASE("ER(0.3)") {
    const MartingaleReport r = density_martingale_check(ErSpec{0.3}, sizes, 10'000, 1);
    CHECK(r.pass);
    for (double m : r.means) CHECK(m == doctest::Approx(0.3).epsilon(0.05));
  }
  SUBCASE("two-block graphon") {
    const MartingaleReport r =
        density_martingale_check(GraphonSpec{GridGraphon(2, {0.9, 0.1, 0.1, 0.9})}, sizes, 10'000, 2);
    CHECK(r.pass);
    for (double m : r.means) CHECK(m == doctest::Approx(0.5).epsilon(0.05));
  }
  SUBCASE("ER(0)") {
    const MartingaleReport r = density_martingale_check(ErSpec{0.0}, sizes, 100, 3);
    CHECK(r.pass);
    for (double m : r.means) CHECK(m == 0.0);
  }
  SUBCASE("exact ERGM") {
    const std::vector<std::size_t> small{2, 3, 4};
    const ErgmSpec spec{{ErgmStat::edges, ErgmStat::triangles}, {-0.5, 0.3}, 4};
    CHECK(density_martingale_check(spec, small, 20'000, 4).pass);
  }
  SUBCASE("non-exchangeable models are rejected") {
    CHECK_THROWS_AS(density_martingale_check(SbmSpec{0.8, 0.1, Partition{1, 1, 2}}, sizes, 100, 0),
                    ValidationError);
    CHECK_THROWS_AS(density_martingale_check(PaSpec{0.0}, sizes, 100, 0), ValidationError);
  }
}

TEST_CASE("chi_square_pvalue") {
  const std::vector<double> half{0.5, 0.5};
  const std::vector<double> even{50, 50};
  const std::vector<double> skew{60, 40};
  CHECK(chi_square_pvalue(even, half) == doctest::Approx(1.0));
  // Statistic 4 on one degree of freedom.
  CHECK(chi_square_pvalue(skew, half) == doctest::Approx(0.0455003).epsilon(1e-5));
  const std::vector<double> zero_cell{0.0, 1.0};
  const std::vector<double> hit{3, 7};
  CHECK(chi_square_pvalue(hit, zero_cell) == 0.0);
  const std::vector<double> three{1, 2, 3};
  CHECK_THROWS_AS(chi_square_pvalue(three, half), ValidationError);
}
