#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netlab/graph.hpp"

namespace netlab {

struct EstimateReport {
  std::string estimator;
  // Named point estimates in report order, e.g. {"p_hat", ...}, {"theta_hat", ...}.
  std::vector<std::pair<std::string, double>> values;
  std::size_t n = 0;
  // The min(., 1) bound was active.
  bool clipped = false;

  // Throws RangeError for an unknown name.
  double value(std::string_view name) const;
};

// p_hat = e / C(n,2); theta_hat = min(rho * p_hat, 1). rho defaults to n.
// Throws PreconditionError when n < 2 and ValidationError for rho < 1.
EstimateReport mle_thinned_er(const SimpleGraph& obs, std::optional<double> rho = std::nullopt);

// A bijection of [0,1] together with its inverse.
struct Bijection {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> inverse;
};

Bijection identity_bijection();
// f(theta) = theta / (2 - theta), inverse y -> 2y / (1 + y).
Bijection theta_over_two_minus_theta();
// "identity" or "theta-over-2-minus-theta"; ValidationError otherwise.
Bijection named_bijection(std::string_view name);

// theta_tilde = f^-1(min(rho * p_hat, 1)). Checks f(f^-1(y)) = y to 1e-10 on
// y = 0, 0.01, ..., 1 first and throws ValidationError when it fails.
EstimateReport estimate_reparam(const SimpleGraph& obs, const Bijection& f,
                                std::optional<double> rho = std::nullopt);

// Within- and between-block edge fractions given known blocks. Throws
// ValidationError when B does not cover exactly [n] and DegenerateDesignError
// when either pair class is empty.
EstimateReport mle_sbm_rates(const SimpleGraph& obs, const Partition& blocks);

struct IdentifiabilityReport {
  std::string family;
  bool completely_identifiable = false;
  // ER: smallest total variation between grid laws. SBM: largest pointwise
  // difference between the two restricted laws.
  double witness = 0.0;
  std::string detail;

  std::string verdict() const {
    return completely_identifiable ? "completely-identifiable" : "not-completely-identifiable";
  }
};

// "er": exact laws on [n] for theta = 0.1, ..., 0.9 are pairwise at least
// 0.1 apart in total variation. "sbm": B = {1,2}{3}{4} and B' = {1,2}{3,4}
// on [4] give the same law on [n]. Requires 2 <= n <= 3; UnsupportedError
// for other families.
IdentifiabilityReport identifiability_check(std::string_view family, std::size_t n);

}  // namespace netlab
