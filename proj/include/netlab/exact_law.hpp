#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "netlab/generators.hpp"
#include "netlab/graph.hpp"

namespace netlab {

// Probability table over all labelled graphs on [n] (n <= 6), indexed by
// GraphCode.
class GraphLaw {
 public:
  // Throws ValidationError for negative entries or a total off 1 by more than
  // 1e-12.
  GraphLaw(std::size_t n, std::vector<double> probs);
  // Normalizes nonnegative weights.
  static GraphLaw from_weights(std::size_t n, std::vector<double> weights);
  static GraphLaw point_mass(const SimpleGraph& g);

  std::size_t num_vertices() const { return n_; }
  std::size_t support_size() const { return probs_.size(); }
  const std::vector<double>& probs() const { return probs_; }
  double operator[](GraphCode code) const { return probs_[code]; }
  double probability(const SimpleGraph& g) const;

  // Law of restrict(G, m).
  GraphLaw marginal(std::size_t m) const;
  // Law of relabel(G, sigma).
  GraphLaw relabeled(const Permutation& sigma) const;
  double edge_probability(Vertex i, Vertex j) const;

  // Inverse-CDF draw from a single uniform.
  GraphCode sample_code(double u) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> probs_;
};

double total_variation(const GraphLaw& a, const GraphLaw& b);
double max_abs_difference(const GraphLaw& a, const GraphLaw& b);

// Edges independent with P({i,j}) = edge_prob(i, j).
GraphLaw independent_edge_law(std::size_t n, const std::function<double(Vertex, Vertex)>& edge_prob);

GraphLaw er_law(double p, std::size_t n);
GraphLaw beta_law(std::span<const double> beta);
GraphLaw sbm_law(double p, double q, const Partition& blocks, std::size_t n);
// Mixture over the grid cells of U_1..U_n.
GraphLaw graphon_law(const GridGraphon& h, std::size_t n);
GraphLaw ergm_law(const ErgmSpec& spec);
GraphLaw covariate_law(std::span<const double> theta, const std::vector<std::vector<double>>& x);
// Requires a pair-local kernel: P({i,j}) is the Lebesgue measure of
// {u : g(phi, psi|[i v j], ., ., ., u) = 1}, found by step quadrature.
GraphLaw rel_exch_law(std::span<const double> phi, const Partition& psi, const Kernel& g,
                      std::size_t n);

// Dispatch for the vertex-labelled families; throws UnsupportedError for
// growth and edge-labelled models.
GraphLaw exact_law(const ModelSpec& spec, std::size_t n);

// Law table text format: a "law n=<n>" header, then "<code> <weight>" lines
// (unlisted codes weigh 0). Weights are normalized; malformed input throws
// FormatError.
GraphLaw read_law_table(std::istream& in);
GraphLaw read_law_table_file(const std::string& path);
void write_law_table(std::ostream& out, const GraphLaw& law);

// Measure of {u in [0,1] : f(u)} for a piecewise-constant indicator with at
// most one switch per 1/4096 cell; switch points are located by bisection.
double indicator_measure(const std::function<bool(double)>& f);

}  // namespace netlab
