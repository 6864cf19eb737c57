#include "netlab/statistics.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "netlab/errors.hpp"

namespace netlab {
namespace {

void require_increasing(std::span<const std::size_t> sizes) {
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) throw ValidationError("sizes must be strictly increasing");
  }
}

}  // namespace

double edge_density(const SimpleGraph& g) {
  const double v = static_cast<double>(g.num_vertices());
  if (g.num_vertices() < 2) {
    throw PreconditionError("edge density is undefined on fewer than two vertices");
  }
  return 2.0 * static_cast<double>(g.num_edges()) / (v * (v - 1.0));
}

bool SparsityTrace::strictly_decreasing() const {
  for (std::size_t i = 1; i < densities.size(); ++i) {
    if (!(densities[i] < densities[i - 1])) return false;
  }
  return true;
}

SparsityTrace sparsity_trace(const SimpleGraph& g, std::span<const std::size_t> sizes) {
  require_increasing(sizes);
  SparsityTrace out;
  for (std::size_t n : sizes) {
    out.sizes.push_back(n);
    out.densities.push_back(edge_density(restrict(g, n)));
  }
  return out;
}

SparsityTrace sparsity_trace(const Multigraph& g, std::span<const std::size_t> sizes) {
  require_increasing(sizes);
  SparsityTrace out;
  for (std::size_t m : sizes) {
    out.sizes.push_back(m);
    out.densities.push_back(edge_density(project(restrict(g, m))));
  }
  return out;
}

PowerLawFit fit_power_law(const DegreeProfile& profile, std::size_t k_min) {
  if (k_min < 1) throw FitError("k_min must be at least 1");
  if (profile.num_vertices == 0) throw FitError("empty degree profile");

  std::size_t k_max = 0;
  for (const auto& [k, count] : profile.counts) {
    if (k >= k_min && count >= kPowerLawMinCount) k_max = std::max(k_max, k);
  }
  std::vector<double> xs, ys;
  const double v = static_cast<double>(profile.num_vertices);
  for (const auto& [k, count] : profile.counts) {
    if (k < k_min || k > k_max || count < kPowerLawMinCount) continue;
    xs.push_back(std::log(static_cast<double>(k)));
    ys.push_back(std::log(static_cast<double>(count) / v));
  }
  if (xs.size() < 5) {
    throw FitError("power-law fit needs at least five degrees >= k_min with N_k >= " +
                   std::to_string(kPowerLawMinCount) + ", found " + std::to_string(xs.size()));
  }

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sxy / sxx;

  PowerLawFit fit;
  fit.gamma_hat = -slope;
  fit.intercept = my - slope * mx;
  fit.k_min = k_min;
  fit.k_max = k_max;
  fit.points = xs.size();
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

MartingaleReport density_martingale_check(const ModelSpec& model,
                                          std::span<const std::size_t> sizes,
                                          std::size_t reps, Seed seed) {
  if (sizes.empty()) throw ValidationError("at least one size is required");
  require_increasing(sizes);
  if (sizes.front() < 2) throw ValidationError("densities need sizes of at least 2");
  if (reps < 2) throw ValidationError("at least two replicates are required");

  const std::size_t top = sizes.back();
  if (const auto* ergm = std::get_if<ErgmSpec>(&model)) {
    if (top > ergm->n) throw ValidationError("sizes exceed the ERGM graph size");
  } else if (!std::holds_alternative<ErSpec>(model) &&
             !std::holds_alternative<GraphonSpec>(model)) {
    throw ValidationError("model '" + model_name(model) +
                          "' is not an exchangeable vertex-labelled family");
  }
  validate(model);

  std::vector<double> sum(sizes.size(), 0.0), sum_sq(sizes.size(), 0.0);
  for (std::size_t r = 0; r < reps; ++r) {
    const Seed rep_seed = replicate_seed(seed, r);
    const SimpleGraph g = std::get<SimpleGraph>(generate(model, top, rep_seed));
    for (std::size_t s = 0; s < sizes.size(); ++s) {
      const double d = edge_density(restrict(g, sizes[s]));
      sum[s] += d;
      sum_sq[s] += d * d;
    }
  }

  MartingaleReport report;
  report.sizes.assign(sizes.begin(), sizes.end());
  const double n = static_cast<double>(reps);
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    const double mean = sum[s] / n;
    const double var = std::max(0.0, (sum_sq[s] - n * mean * mean) / (n - 1.0));
    report.means.push_back(mean);
    report.std_errors.push_back(std::sqrt(var / n));
  }
  report.pass = true;
  for (std::size_t a = 0; a < sizes.size(); ++a) {
    for (std::size_t b = a + 1; b < sizes.size(); ++b) {
      const double diff = std::abs(report.means[a] - report.means[b]);
      const double se = std::hypot(report.std_errors[a], report.std_errors[b]);
      if (se > 0.0) {
        report.max_z = std::max(report.max_z, diff / se);
        if (diff > 3.0 * se) report.pass = false;
      } else if (diff > 0.0) {
        report.max_z = INFINITY;
        report.pass = false;
      }
    }
  }
  return report;
}

double chi_square_pvalue(std::span<const double> counts, std::span<const double> probs) {
  if (counts.size() != probs.size()) throw ValidationError("counts and probabilities differ in length");
  double total = 0.0;
  for (double c : counts) total += c;
  if (!(total > 0.0)) throw ValidationError("no observations");
  double stat = 0.0;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (probs[i] <= 0.0) {
      if (counts[i] > 0.0) return 0.0;
      continue;
    }
    const double expected = total * probs[i];
    stat += (counts[i] - expected) * (counts[i] - expected) / expected;
    ++cells;
  }
  if (cells < 2) return 1.0;
  boost::math::chi_squared dist(static_cast<double>(cells - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace netlab
