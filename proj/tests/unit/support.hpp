#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "netlab/exact_law.hpp"
#include "netlab/statistics.hpp"

namespace netlab::test {

inline constexpr double kAlpha = 0.01;

// Pearson p-value of graphs produced by draw(r), r = 0..reps-1, against law.
template <class Draw>
double graph_law_pvalue(const GraphLaw& law, std::size_t reps, Draw draw) {
  std::vector<double> counts(law.support_size(), 0.0);
  for (std::size_t r = 0; r < reps; ++r) counts[graph_code(draw(r))] += 1.0;
  return chi_square_pvalue(counts, law.probs());
}

// |mean - expect| within k binomial standard errors of a proportion.
inline bool within_binomial(double hits, double trials, double expect, double k = 3.0) {
  const double se = std::sqrt(expect * (1.0 - expect) / trials);
  return std::abs(hits / trials - expect) <= k * se;
}

struct Moments {
  double n = 0, sum = 0, sum_sq = 0;
  void add(double x) {
    n += 1;
    sum += x;
    sum_sq += x * x;
  }
  double mean() const { return sum / n; }
  double se() const {
    const double m = mean();
    return std::sqrt(std::max(0.0, sum_sq / n - m * m) / (n - 1));
  }
  bool within(double expect, double k = 3.0) const {
    return std::abs(mean() - expect) <= k * se();
  }
};

}  // namespace netlab::test
