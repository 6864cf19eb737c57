#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "netlab/generators.hpp"
#include "netlab/graph.hpp"

namespace netlab {

// 2e / (v(v-1)). Throws PreconditionError when v < 2.
double edge_density(const SimpleGraph& g);

struct SparsityTrace {
  std::vector<std::size_t> sizes;
  std::vector<double> densities;

  bool strictly_decreasing() const;
};

// Densities of the nested restrictions g|[n] for each n in `sizes`.
SparsityTrace sparsity_trace(const SimpleGraph& g, std::span<const std::size_t> sizes);
// Densities of the projections of the first m pairs for each m in `sizes`.
SparsityTrace sparsity_trace(const Multigraph& g, std::span<const std::size_t> sizes);

struct PowerLawFit {
  double gamma_hat = 0.0;
  std::size_t k_min = 0;
  std::size_t k_max = 0;
  double r2 = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;

  // Log-log fits below this r2 are reported as not power-law shaped.
  static constexpr double kLowR2 = 0.9;
  bool low_fit() const { return r2 < kLowR2; }
};

// Least-squares slope of log(N_k / v) on log k over degrees k_min..k_max
// with N_k >= 5, where k_max is the largest such degree; gamma_hat is minus
// the slope. Throws FitError with fewer than five usable degrees.
inline constexpr std::size_t kPowerLawMinCount = 5;
PowerLawFit fit_power_law(const DegreeProfile& profile, std::size_t k_min = 2);

struct MartingaleReport {
  std::vector<std::size_t> sizes;
  std::vector<double> means;
  std::vector<double> std_errors;
  // Largest |mean_a - mean_b| / sqrt(se_a^2 + se_b^2) over size pairs.
  double max_z = 0.0;
  bool pass = false;
};

// Monte Carlo mean of edge density of nested restrictions of one population
// draw per replicate. Passes when every pair of means agrees within three
// combined standard errors. Accepts ER, graphon and exact ERGM models;
// anything else throws ValidationError.
MartingaleReport density_martingale_check(const ModelSpec& model,
                                          std::span<const std::size_t> sizes,
                                          std::size_t reps, Seed seed);

// Pearson goodness-of-fit p-value of observed counts against cell
// probabilities (cells with zero probability must have zero count).
double chi_square_pvalue(std::span<const double> counts, std::span<const double> probs);

}  // namespace netlab
