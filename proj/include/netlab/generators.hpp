#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "netlab/graph.hpp"
#include "netlab/io.hpp"
#include "netlab/rng.hpp"

namespace netlab {

// Piecewise-constant symmetric graphon on a k x k grid. h(u,v) reads cell
// (ceil(u k), ceil(v k)), with u = 0 sent to the first cell.
class GridGraphon {
 public:
  GridGraphon() = default;
  // Row-major cells; throws ValidationError unless k*k values in [0,1] that
  // are symmetric.
  GridGraphon(std::size_t k, std::vector<double> cells);

  static GridGraphon constant(double p) { return GridGraphon(1, {p}); }

  std::size_t resolution() const { return k_; }
  const std::vector<double>& cells() const { return cells_; }
  double cell(std::size_t row, std::size_t col) const { return cells_[row * k_ + col]; }
  std::size_t cell_index(double u) const;
  double operator()(double u, double v) const;
  // Marginal edge probability: the integral of h over the unit square.
  double integral() const;

 private:
  std::size_t k_ = 0;
  std::vector<double> cells_;
};

enum class ErgmStat { edges, triangles, two_stars };

std::string_view to_string(ErgmStat s);
ErgmStat parse_ergm_stat(std::string_view name);
double ergm_statistic(const SimpleGraph& g, ErgmStat s);

// View of a partition through its first `visible` labels. Block ids of the
// canonical prefix coincide with those of the full partition, so no copy is
// needed; asking about a hidden label throws RangeError.
class PartitionPrefix {
 public:
  PartitionPrefix(const Partition& full, std::size_t visible);
  std::size_t size() const { return visible_; }
  std::uint32_t block(Vertex i) const;
  bool same_block(Vertex i, Vertex j) const { return block(i) == block(j); }

 private:
  const Partition* full_;
  std::size_t visible_;
};

struct KernelArgs {
  std::span<const double> phi;
  PartitionPrefix psi;  // psi restricted to [max(i, j)]
  Vertex i;
  Vertex j;
  double u0;
  double ui;
  double uj;
  double uij;
};

// Deterministic {0,1}-valued map g(phi, psi|[i v j], U0, Ui, Uj, Uij).
struct Kernel {
  std::string name;
  std::function<bool(const KernelArgs&)> fn;
  // True when fn reads no uniform other than Uij; exact laws are then
  // products of per-pair integrals.
  bool pair_local = false;
};

// phi = (p, q): 1{Uij <= p} within blocks, 1{Uij <= q} across.
Kernel sbm_kernel();
// phi = theta (length d); covariates x[i-1] held by the kernel.
Kernel covariate_kernel(std::vector<std::vector<double>> x);
// phi = (p): ignores psi.
Kernel er_kernel();
Kernel zero_kernel();

// Lazily addressed i.i.d. Uniform[0,1] family (U0, Ui, Uij). Every entry is
// a pure function of (seed, index).
class LatentUniforms {
 public:
  LatentUniforms(Seed seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}
  double u0() const { return keyed_uniform(seed_, stream_, 0, 0); }
  double vertex(Vertex i) const { return keyed_uniform(seed_, stream_ + 1, i, 0); }
  double pair(Vertex i, Vertex j) const {
    Edge e(i, j);
    return keyed_uniform(seed_, stream_ + 2, e.u, e.v);
  }

 private:
  Seed seed_;
  std::uint64_t stream_;
};

// ---- model specifications -------------------------------------------------

struct ErSpec {
  double p = 0.0;
};
struct BetaSpec {
  std::vector<double> beta;
};
struct SbmSpec {
  double p = 0.0;
  double q = 0.0;
  Partition blocks;
};
struct GraphonSpec {
  GridGraphon h;
};
struct ErgmSpec {
  std::vector<ErgmStat> stats;
  std::vector<double> theta;
  std::size_t n = 0;
};
struct PaSpec {
  double delta = 0.0;
};
struct SuperstarSpec {
  double p = 0.5;
  double delta = 0.0;
};
struct EdgeExchSpec {
  double alpha = 0.5;
  double theta = 1.0;
  std::size_t truncation = 1000;
};
struct CovariateSpec {
  std::vector<double> theta;
  std::vector<std::vector<double>> x;
};
struct RelExchSpec {
  std::vector<double> phi;
  Partition psi;
  Kernel g;
};

using ModelSpec = std::variant<ErSpec, BetaSpec, SbmSpec, GraphonSpec, ErgmSpec, PaSpec,
                               SuperstarSpec, EdgeExchSpec, CovariateSpec, RelExchSpec>;

// Throws ValidationError on out-of-range parameters.
void validate(const ModelSpec& spec);
std::string model_name(const ModelSpec& spec);

struct ParsedModel {
  ModelSpec spec;
  // n (vertex count) or m (edge count) when given in the text.
  std::optional<std::size_t> size;
};

// Key-value text: "model=er p=0.3 n=100", "model=sbm p=0.8 q=0.1 B=1,1,2",
// "model=graphon k=2 grid=0.9,0.1,0.1,0.9 n=20",
// "model=ergm stats=edges,triangles theta=-1,0.5 n=3",
// "model=pa delta=0 n=100", "model=superstar p=0.5 delta=0 n=100",
// "model=edge-exch alpha=0.6 theta=1 K=1000 m=500",
// "model=covariate theta=1 x=1,-1,0" (x row-major, d = len(theta)),
// "model=rel-exch kernel=sbm p=0.8 q=0.1 B=1,1,2 n=3".
ParsedModel parse_model_spec(std::string_view text);

// Canonical key-value rendering of a spec. Round-trips through
// parse_model_spec except for rel-exch with the covariate kernel, whose
// covariates live in the kernel and are not printed.
std::string format_model_spec(const ModelSpec& spec, std::optional<std::size_t> size = {});

// ---- generators -----------------------------------------------------------
//
// Edge indicators for the independent-edge families are keyed by (seed, i, j),
// so generating at size n and restricting to [m] gives exactly the graph
// generated at size m with the same seed.

SimpleGraph gen_er(double p, std::size_t n, Seed seed);
SimpleGraph gen_beta(std::span<const double> beta, Seed seed);
SimpleGraph gen_sbm(double p, double q, const Partition& blocks, Seed seed);
SimpleGraph gen_graphon(const GridGraphon& h, std::size_t n, Seed seed);
// Exact draw from P(G) proportional to exp(sum theta_k T_k(G)); n <= 6.
SimpleGraph gen_ergm_exact(const ErgmSpec& spec, Seed seed);
// Growth from the single edge {1,2}; vertex t+1 attaches to v with
// probability proportional to deg(v) + delta.
Multigraph gen_pa(double delta, std::size_t n_vertices, Seed seed);
// Vertex 1 is the superstar; each arrival joins it with probability p and
// otherwise attaches preferentially among the remaining vertices.
Multigraph gen_superstar(double p, double delta, std::size_t n_vertices, Seed seed);
// GEM(alpha, theta) stick-breaking truncated at K and renormalized.
std::vector<double> gem_weights(double alpha, double theta, std::size_t truncation, Rng& rng);
// Pairs drawn i.i.d. with probability proportional to W_v W_v', v != v'.
Multigraph gen_edge_exch(double alpha, double theta, std::size_t truncation,
                         std::size_t m_edges, Seed seed);
SimpleGraph gen_covariate(std::span<const double> theta,
                          const std::vector<std::vector<double>>& x, Seed seed);
SimpleGraph gen_rel_exch(std::span<const double> phi, const Partition& psi, const Kernel& g,
                         std::size_t n, Seed seed);

// Dispatch on the family. `size` is the vertex count (edge count for
// edge-exch); families that carry their own size ignore it.
AnyGraph generate(const ModelSpec& spec, std::optional<std::size_t> size, Seed seed);

}  // namespace netlab
