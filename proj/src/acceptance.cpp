#include "netlab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "netlab/errors.hpp"
#include "netlab/exact_law.hpp"
#include "netlab/generators.hpp"
#include "netlab/inference.hpp"
#include "netlab/predict.hpp"
#include "netlab/sampling.hpp"
#include "netlab/statistics.hpp"

namespace netlab {
namespace {

using Clock = std::chrono::steady_clock;

double closed_form(PredictMechanism m, double p) {
  switch (m) {
    case PredictMechanism::vertex: return p;
    case PredictMechanism::edge: return 4 * p / (9 - 5 * p);
    case PredictMechanism::snowball_chain: return p / (2 - p);
    case PredictMechanism::thin: return 2 * p / (3 - p);
  }
  return NAN;
}

constexpr PredictMechanism kMechanisms[] = {PredictMechanism::vertex, PredictMechanism::edge,
                                            PredictMechanism::snowball_chain,
                                            PredictMechanism::thin};

PredictiveQuery base_query(PredictMechanism m, double p) {
  PredictiveQuery q;
  q.n_pop = 3;
  q.prior = ErSpec{p};
  q.mechanism = m;
  q.rho = 3.0;
  return q;
}

// Every partition of [3].
std::vector<Partition> partitions_of_3() {
  return {Partition{1, 1, 1}, Partition{1, 1, 2}, Partition{1, 2, 1}, Partition{1, 2, 2},
          Partition{1, 2, 3}};
}

std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<Vertex> images(n);
  std::iota(images.begin(), images.end(), Vertex{1});
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

ErgmSpec edges_triangles_ergm(std::size_t n) {
  return ErgmSpec{{ErgmStat::edges, ErgmStat::triangles}, {-1.0, 0.5}, n};
}

CriterionResult a1(Seed) {
  CriterionResult r{"A1", "exact predictive probabilities match the four closed forms", false,
                    "", 0.0};
  double worst = 0.0;
  for (PredictMechanism m : kMechanisms) {
    for (int i = 1; i <= 9; ++i) {
      const double p = i / 10.0;
      worst = std::max(worst, std::abs(predict_exact(base_query(m, p)).probability -
                                       closed_form(m, p)));
    }
  }
  std::ostringstream d;
  d << "max |exact - closed form| = " << std::scientific << std::setprecision(2) << worst
    << " (tol 1e-12)";
  r.detail = d.str();
  r.pass = worst <= 1e-12;
  return r;
}

CriterionResult a2(Seed seed) {
  CriterionResult r{"A2", "Monte Carlo predictions within 3 SE of the exact values", true, "",
                    0.0};
  std::ostringstream d;
  d << std::fixed << std::setprecision(4);
  for (PredictMechanism m : kMechanisms) {
    const PredictiveQuery q = base_query(m, 0.5);
    const double exact = predict_exact(q).probability;
    const McPrediction mc = predict_mc(q, 1'000'000, seed);
    const double z = mc.abstained ? INFINITY : std::abs(mc.probability - exact) / mc.standard_error;
    d << to_string(m) << ": mc=" << mc.probability << " se=" << mc.standard_error
      << " exact=" << exact << " z=" << std::setprecision(2) << z << std::setprecision(4) << "; ";
    if (!(z <= 3.0)) r.pass = false;
  }
  r.detail = d.str();
  return r;
}

CriterionResult a3(Seed seed) {
  CriterionResult r{"A3", "constant mean density across nested sizes", true, "", 0.0};
  const std::vector<std::size_t> sizes{3, 10, 30};
  const std::vector<std::pair<std::string, ModelSpec>> models{
      {"er(0.3)", ErSpec{0.3}},
      {"graphon 2x2", GraphonSpec{GridGraphon(2, {0.9, 0.1, 0.1, 0.9})}}};
  std::ostringstream d;
  d << std::fixed << std::setprecision(4);
  for (const auto& [name, model] : models) {
    const MartingaleReport rep = density_martingale_check(model, sizes, 10'000, seed);
    d << name << ": means";
    for (double m : rep.means) d << ' ' << m;
    d << " max_z=" << std::setprecision(2) << rep.max_z << std::setprecision(4) << "; ";
    if (!rep.pass) r.pass = false;
  }
  r.detail = d.str();
  return r;
}

CriterionResult a4(Seed seed) {
  CriterionResult r{"A4", "edge-exchangeable degree power law, exponent near alpha + 1", false,
                    "", 0.0};
  constexpr int kRuns = 20;
  int inside = 0;
  std::ostringstream gammas;
  gammas << std::fixed << std::setprecision(3);
  for (int run = 0; run < kRuns; ++run) {
    const Multigraph g = gen_edge_exch(0.6, 1.0, 100'000, 50'000, replicate_seed(seed, run));
    const PowerLawFit fit = fit_power_law(degree_profile(g), 2);
    if (fit.gamma_hat >= 1.45 && fit.gamma_hat <= 1.75) ++inside;
    gammas << ' ' << fit.gamma_hat;
  }
  std::ostringstream d;
  d << inside << "/" << kRuns << " runs with gamma_hat in [1.45, 1.75] (need >= 18); gamma_hat:"
    << gammas.str();
  r.detail = d.str();
  r.pass = inside * 10 >= kRuns * 9;
  return r;
}

CriterionResult a5(Seed seed) {
  CriterionResult r{"A5", "projected edge-exchangeable densities decrease with m", false, "",
                    0.0};
  constexpr int kRuns = 100;
  const std::vector<std::size_t> sizes{1'000, 10'000, 100'000};
  int decreasing = 0;
  for (int run = 0; run < kRuns; ++run) {
    const Multigraph g = gen_edge_exch(0.6, 1.0, 100'000, sizes.back(), replicate_seed(seed, run));
    if (sparsity_trace(g, sizes).strictly_decreasing()) ++decreasing;
  }
  std::ostringstream d;
  d << decreasing << "/" << kRuns << " runs strictly decreasing (need >= 95)";
  r.detail = d.str();
  r.pass = decreasing >= 95;
  return r;
}

CriterionResult a6(Seed seed) {
  CriterionResult r{"A6", "reparameterized estimator recovers theta, MLE tracks f(theta)", false,
                    "", 0.0};
  constexpr int kRuns = 200;
  constexpr std::size_t n = 2000;
  const Bijection f = theta_over_two_minus_theta();
  const double theta = 0.5;
  const double f_theta = f.f(theta);
  int reparam_ok = 0, mle_ok = 0;
  double reparam_mean = 0.0, mle_mean = 0.0;
  for (int run = 0; run < kRuns; ++run) {
    const SimpleGraph population = gen_er(f_theta, n, replicate_seed(seed, 2 * run));
    const SimpleGraph obs = thin(population, static_cast<double>(n), replicate_seed(seed, 2 * run + 1));
    const double tilde = estimate_reparam(obs, f).value("theta_tilde");
    const double hat = mle_thinned_er(obs).value("theta_hat");
    reparam_mean += tilde / kRuns;
    mle_mean += hat / kRuns;
    if (std::abs(tilde - theta) <= 0.05) ++reparam_ok;
    if (std::abs(hat - f_theta) <= 0.05) ++mle_ok;
  }
  std::ostringstream d;
  d << std::fixed << std::setprecision(4) << "reparam within 0.05 of 0.5: " << reparam_ok << "/"
    << kRuns << " (mean " << reparam_mean << "); mle within 0.05 of 1/3: " << mle_ok << "/"
    << kRuns << " (mean " << mle_mean << "); need >= 190 each";
  r.detail = d.str();
  r.pass = reparam_ok >= 190 && mle_ok >= 190;
  return r;
}

CriterionResult a7(Seed) {
  CriterionResult r{"A7", "beta model consistent under restriction, ERGM not", false, "", 0.0};
  const std::vector<double> beta{0.3, -0.5, 1.2};
  const double beta_tv = total_variation(beta_law(beta).marginal(2),
                                         beta_law(std::span<const double>(beta).first(2)));
  const double ergm_tv =
      total_variation(ergm_law(edges_triangles_ergm(3)).marginal(2), ergm_law(edges_triangles_ergm(2)));
  std::ostringstream d;
  d << std::scientific << std::setprecision(3) << "beta TV(3->2) = " << beta_tv
    << " (<= 1e-12); ergm TV(3->2) = " << ergm_tv << " (> 1e-3)";
  r.detail = d.str();
  r.pass = beta_tv <= 1e-12 && ergm_tv > 1e-3;
  return r;
}

CriterionResult a8(Seed seed) {
  CriterionResult r{"A8", "universal embedding into ER(1/2) reproduces the ERGM law", false, "",
                    0.0};
  const GraphLaw mu = ergm_law(edges_triangles_ergm(3));
  constexpr int kRuns = 100'000;
  std::vector<double> counts(mu.probs().size(), 0.0);
  for (int run = 0; run < kRuns; ++run) {
    counts[graph_code(universal_embed(mu, 0.5, replicate_seed(seed, run)))] += 1.0;
  }
  const double pvalue = chi_square_pvalue(counts, mu.probs());
  std::ostringstream d;
  d << std::fixed << std::setprecision(4) << "chi-square p-value " << pvalue << " over " << kRuns
    << " runs (need >= 0.01)";
  r.detail = d.str();
  r.pass = pvalue >= 0.01;
  return r;
}

CriterionResult a9(Seed) {
  CriterionResult r{"A9", "relatively exchangeable SBM kernel matches the SBM law", false, "",
                    0.0};
  double worst = 0.0;
  for (const auto& [p, q] : {std::pair{0.8, 0.1}, std::pair{0.5, 0.5}}) {
    const std::vector<double> phi{p, q};
    for (const Partition& b : partitions_of_3()) {
      worst = std::max(worst, max_abs_difference(rel_exch_law(phi, b, sbm_kernel(), 3),
                                                 sbm_law(p, q, b, 3)));
    }
  }
  const std::vector<double> phi{0.8, 0.1};
  const double restricted = max_abs_difference(
      rel_exch_law(phi, Partition{1, 1, 2, 3}, sbm_kernel(), 4).marginal(3),
      rel_exch_law(phi, Partition{1, 1, 2, 2}, sbm_kernel(), 4).marginal(3));
  std::ostringstream d;
  d << std::scientific << std::setprecision(2) << "max per-graph difference " << worst
    << "; restricted-law difference for B|[3] = B'|[3]: " << restricted << " (tol 1e-12)";
  r.detail = d.str();
  r.pass = worst <= 1e-12 && restricted <= 1e-12;
  return r;
}

CriterionResult a10(Seed) {
  CriterionResult r{"A10", "label equivariance and identifiability verdicts", true, "", 0.0};
  double er_gap = 0.0, sbm_gap = 0.0;
  for (const Permutation& sigma : all_permutations(3)) {
    for (double p : {0.2, 0.7}) {
      const GraphLaw law = er_law(p, 3);
      er_gap = std::max(er_gap, max_abs_difference(law.relabeled(sigma), law));
    }
    for (const Partition& b : partitions_of_3()) {
      sbm_gap = std::max(sbm_gap, max_abs_difference(sbm_law(0.8, 0.1, b, 3).relabeled(sigma),
                                                     sbm_law(0.8, 0.1, relabel(b, sigma), 3)));
    }
  }
  const IdentifiabilityReport er2 = identifiability_check("er", 2);
  const IdentifiabilityReport er3 = identifiability_check("er", 3);
  const IdentifiabilityReport sbm = identifiability_check("sbm", 3);
  std::ostringstream d;
  d << std::scientific << std::setprecision(2) << "ER equivariance gap " << er_gap
    << ", SBM equivariance gap " << sbm_gap << "; er(n=2): " << er2.verdict()
    << ", er(n=3): " << er3.verdict() << ", sbm(n=3): " << sbm.verdict();
  r.detail = d.str();
  r.pass = er_gap <= 1e-12 && sbm_gap <= 1e-12 && er2.completely_identifiable &&
           er3.completely_identifiable && !sbm.completely_identifiable;
  return r;
}

using CriterionFn = CriterionResult (*)(Seed);

const std::vector<std::pair<std::string, CriterionFn>>& criteria() {
  static const std::vector<std::pair<std::string, CriterionFn>> all{
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4}, {"A5", a5},
      {"A6", a6}, {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}};
  return all;
}

CriterionResult timed(CriterionFn fn, Seed seed) {
  const auto start = Clock::now();
  CriterionResult r = fn(seed);
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

// Wall-clock budgets, in seconds.
double budget(const std::string& id) {
  if (id == "A1") return 1.0;
  if (id == "A2" || id == "A8") return 60.0;
  if (id == "A4") return 120.0;
  return INFINITY;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [id, fn] : criteria()) names.push_back(id);
  names.emplace_back("all");
  names.emplace_back("section-6-2");
  return names;
}

std::vector<CriterionResult> run_suite(std::string_view name, Seed seed) {
  std::vector<std::string> ids;
  if (name == "all") {
    for (const auto& [id, fn] : criteria()) ids.push_back(id);
  } else if (name == "section-6-2") {
    ids.emplace_back("A1");
  } else {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    ids.push_back(upper);
  }

  std::vector<CriterionResult> results;
  for (const std::string& id : ids) {
    const auto it = std::find_if(criteria().begin(), criteria().end(),
                                 [&](const auto& c) { return c.first == id; });
    if (it == criteria().end()) {
      throw ValidationError("unknown suite '" + std::string(name) + "'");
    }
    CriterionResult r = timed(it->second, seed);
    if (r.seconds > budget(id)) {
      r.pass = false;
      std::ostringstream d;
      d << "; exceeded time budget " << budget(id) << " s";
      r.detail += d.str();
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << ' ' << r.id << " (" << std::fixed << std::setprecision(2)
     << r.seconds << " s) " << r.title << ": " << r.detail;
  return os.str();
}

}  // namespace netlab
