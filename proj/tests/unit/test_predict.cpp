#include <doctest.h>

#include <cmath>

#include "netlab/errors.hpp"
#include "netlab/predict.hpp"

using namespace netlab;

namespace {

PredictiveQuery query(PredictMechanism m, double p) {
  PredictiveQuery q;
  q.mechanism = m;
  q.prior = ErSpec{p};
  return q;
}

double closed_form(PredictMechanism m, double p) {
  switch (m) {
    case PredictMechanism::vertex:
      return p;
    case PredictMechanism::edge:
      return 4 * p / (9 - 5 * p);
    case PredictMechanism::snowball_chain:
      return p / (2 - p);
    case PredictMechanism::thin:
      return 2 * p / (3 - p);
  }
  return NAN;
}

constexpr PredictMechanism kAll[] = {PredictMechanism::vertex, PredictMechanism::edge,
                                     PredictMechanism::snowball_chain, PredictMechanism::thin};

}  // namespace

TEST_CASE("closed forms on three vertices") {
  CHECK(predict_exact(query(PredictMechanism::vertex, 0.5)).probability ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(predict_exact(query(PredictMechanism::edge, 0.5)).probability ==
        doctest::Approx(0.307692307692).epsilon(1e-12));
  CHECK(predict_exact(query(PredictMechanism::snowball_chain, 0.5)).probability ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(predict_exact(query(PredictMechanism::thin, 0.5)).probability ==
        doctest::Approx(0.4).epsilon(1e-12));
  for (PredictMechanism m : kAll) {
    for (int i = 1; i < 20; ++i) {
      const double p = i / 20.0;
      CAPTURE(to_string(m));
      CAPTURE(p);
      const ExactPrediction e = predict_exact(query(m, p));
      CHECK(std::abs(e.probability - closed_form(m, p)) < 1e-12);
      CHECK(e.joint_probability <= e.event_probability);
      CHECK_FALSE(e.boundary_limit);
    }
  }
}

TEST_CASE("degenerate priors") {
  for (PredictMechanism m : kAll) {
    CAPTURE(to_string(m));
    const ExactPrediction zero = predict_exact(query(m, 0.0));
    CHECK(zero.probability == doctest::Approx(0.0).epsilon(1e-12));
    const ExactPrediction one = predict_exact(query(m, 1.0));
    CHECK(one.probability == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Observing two edges is impossible under an empty population.
  CHECK(predict_exact(query(PredictMechanism::vertex, 0.0)).boundary_limit);
}

TEST_CASE("mechanisms disagree at p = 0.5") {
  std::vector<double> v;
  for (PredictMechanism m : kAll) v.push_back(predict_exact(query(m, 0.5)).probability);
  for (std::size_t a = 0; a < v.size(); ++a) {
    for (std::size_t b = a + 1; b < v.size(); ++b) CHECK(std::abs(v[a] - v[b]) > 0.02);
  }
}

TEST_CASE("predictions are nondecreasing in p") {
  for (PredictMechanism m : kAll) {
    double last = -1.0;
    for (int i = 0; i <= 50; ++i) {
      const double now = predict_exact(query(m, i / 50.0)).probability;
      CHECK(now >= last - 1e-12);
      last = now;
    }
  }
}

TEST_CASE("snowball observation order matters") {
  PredictiveQuery q = query(PredictMechanism::snowball_chain, 0.5);
  q.observed = {{1, 2}, {1, 3}};
  q.target = {2, 3};
  // The chain only reveals (1,2) and (2,3); {1,3} cannot be a traversal.
  CHECK_THROWS_AS(predict_exact(q), ConditioningError);
  const McPrediction mc = predict_mc(q, 20'000, 1);
  CHECK(mc.abstained);
  CHECK(mc.hits == 0);
}

TEST_CASE("Monte Carlo agrees with enumeration") {
  for (PredictMechanism m : kAll) {
    CAPTURE(to_string(m));
    const PredictiveQuery q = query(m, 0.5);
    const McPrediction mc = predict_mc(q, 1'000'000, 42);
    REQUIRE_FALSE(mc.abstained);
    const double exact = predict_exact(q).probability;
    CHECK(std::abs(mc.probability - exact) <= 3 * mc.standard_error);
  }
  SUBCASE("p = 1 gives exactly one") {
    const McPrediction mc = predict_mc(query(PredictMechanism::edge, 1.0), 10'000, 3);
    CHECK(mc.probability == 1.0);
    CHECK(mc.standard_error == 0.0);
  }
  SUBCASE("four-vertex population under edge sampling") {
    PredictiveQuery q = query(PredictMechanism::edge, 0.5);
    q.n_pop = 4;
    const ExactPrediction exact = predict_exact(q);
    CHECK(exact.probability > 0.0);
    CHECK(exact.probability < 1.0);
    const McPrediction mc = predict_mc(q, 1'000'000, 7);
    REQUIRE_FALSE(mc.abstained);
    CHECK(mc.standard_error > 0.0);
    CHECK(std::abs(mc.probability - exact.probability) <= 3 * mc.standard_error);
  }
  SUBCASE("four-vertex population, every mechanism") {
    for (PredictMechanism m : kAll) {
      CAPTURE(to_string(m));
      PredictiveQuery q = query(m, 0.4);
      q.n_pop = 4;
      if (m == PredictMechanism::vertex || m == PredictMechanism::snowball_chain) q.sample_size = 3;
      const McPrediction mc = predict_mc(q, 400'000, 11);
      REQUIRE_FALSE(mc.abstained);
      CHECK(std::abs(mc.probability - predict_exact(q).probability) <= 3 * mc.standard_error);
    }
  }
}

TEST_CASE("Monte Carlo bookkeeping") {
  const PredictiveQuery q = query(PredictMechanism::thin, 0.5);
  const McPrediction one = predict_mc(q, 20'000, 9, 1);
  const McPrediction three = predict_mc(q, 20'000, 9, 3);
  CHECK(one.hits == three.hits);
  CHECK(one.target_hits == three.target_hits);
  CHECK(one.probability == three.probability);
  CHECK(one.reps == 20'000);

  const McPrediction rare = predict_mc(query(PredictMechanism::vertex, 0.01), 2'000, 1);
  CHECK(rare.abstained);
  CHECK(rare.hits < kPredictMinHits);
  CHECK(std::isnan(rare.probability));
}

TEST_CASE("query validation") {
  PredictiveQuery q;
  q.target = {1, 2};
  CHECK_THROWS_AS(validate(q), ValidationError);
  q.target = {1, 4};
  CHECK_THROWS_AS(validate(q), ValidationError);
  q = PredictiveQuery{};
  q.prior = SbmSpec{0.5, 0.5, Partition{1, 1, 2}};
  CHECK_THROWS_AS(predict_exact(q), UnsupportedError);
  q = PredictiveQuery{};
  q.n_pop = 5;
  CHECK_THROWS_AS(predict_exact(q), CapacityError);
  q = PredictiveQuery{};
  q.sample_size = 4;
  CHECK_THROWS_AS(validate(q), ValidationError);
  q = PredictiveQuery{};
  q.mechanism = PredictMechanism::thin;
  q.rho = 0.5;
  CHECK_THROWS_AS(validate(q), ValidationError);

  CHECK(parse_predict_mechanism("edge") == PredictMechanism::edge);
  CHECK(parse_predict_mechanism("snowball") == PredictMechanism::snowball_chain);
  CHECK(parse_predict_mechanism("snowball-chain") == PredictMechanism::snowball_chain);
  CHECK(parse_predict_mechanism("thinned") == PredictMechanism::thin);
  CHECK(to_string(PredictMechanism::vertex) == "vertex");
  CHECK_THROWS_AS(parse_predict_mechanism("random-walk"), ValidationError);
}
