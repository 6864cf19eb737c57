#include "netlab/exact_law.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <sstream>
#include <numeric>
#include <optional>

#include "netlab/errors.hpp"

namespace netlab {
namespace {

void check_enumerable(std::size_t n) {
  if (n > kMaxEnumerateVertices) {
    throw CapacityError("exact laws support n <= " + std::to_string(kMaxEnumerateVertices) +
                        ", got " + std::to_string(n));
  }
}

double logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

GraphLaw::GraphLaw(std::size_t n, std::vector<double> probs) : n_(n), probs_(std::move(probs)) {
  check_enumerable(n);
  if (probs_.size() != (GraphCode{1} << num_pairs(n))) {
    throw ValidationError("probability table has " + std::to_string(probs_.size()) +
                          " entries, expected " + std::to_string(GraphCode{1} << num_pairs(n)));
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw ValidationError("probability table has a negative entry");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("probability table sums to " + std::to_string(total));
  }
}

GraphLaw GraphLaw::from_weights(std::size_t n, std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ValidationError("negative weight");
    total += w;
  }
  if (!(total > 0.0) || !std::isfinite(total)) throw ValidationError("weights do not normalize");
  for (double& w : weights) w /= total;
  // Renormalize once more so the 1e-12 check cannot trip on rounding.
  const double again = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= again;
  return GraphLaw(n, std::move(weights));
}

GraphLaw GraphLaw::point_mass(const SimpleGraph& g) {
  check_enumerable(g.num_vertices());
  std::vector<double> probs(GraphCode{1} << num_pairs(g.num_vertices()), 0.0);
  probs[graph_code(g)] = 1.0;
  return GraphLaw(g.num_vertices(), std::move(probs));
}

double GraphLaw::probability(const SimpleGraph& g) const {
  if (g.num_vertices() != n_) throw ValidationError("graph size does not match the law");
  return probs_[graph_code(g)];
}

GraphLaw GraphLaw::marginal(std::size_t m) const {
  if (m > n_) throw RangeError("marginal size exceeds law size");
  const GraphCode mask = (GraphCode{1} << num_pairs(m)) - 1;
  std::vector<double> out(mask + 1, 0.0);
  for (GraphCode c = 0; c < probs_.size(); ++c) out[c & mask] += probs_[c];
  return GraphLaw(m, std::move(out));
}

GraphLaw GraphLaw::relabeled(const Permutation& sigma) const {
  if (sigma.size() != n_) throw ValidationError("permutation size does not match law size");
  std::vector<double> out(probs_.size(), 0.0);
  for (GraphCode c = 0; c < probs_.size(); ++c) {
    out[graph_code(relabel(graph_from_code(n_, c), sigma))] += probs_[c];
  }
  return GraphLaw(n_, std::move(out));
}

double GraphLaw::edge_probability(Vertex i, Vertex j) const {
  if (i == j || i < 1 || j < 1 || i > n_ || j > n_) throw RangeError("pair outside the law");
  const GraphCode bit = GraphCode{1} << pair_bit(i, j);
  double s = 0.0;
  for (GraphCode c = 0; c < probs_.size(); ++c) {
    if (c & bit) s += probs_[c];
  }
  return s;
}

GraphCode GraphLaw::sample_code(double u) const {
  double acc = 0.0;
  GraphCode last = 0;
  for (GraphCode c = 0; c < probs_.size(); ++c) {
    if (probs_[c] <= 0.0) continue;
    acc += probs_[c];
    last = c;
    if (u < acc) return c;
  }
  return last;
}

double total_variation(const GraphLaw& a, const GraphLaw& b) {
  if (a.num_vertices() != b.num_vertices()) {
    throw ValidationError("laws live on different vertex sets");
  }
  double s = 0.0;
  for (std::size_t c = 0; c < a.probs().size(); ++c) s += std::abs(a.probs()[c] - b.probs()[c]);
  return s / 2;
}

double max_abs_difference(const GraphLaw& a, const GraphLaw& b) {
  if (a.num_vertices() != b.num_vertices()) {
    throw ValidationError("laws live on different vertex sets");
  }
  double m = 0.0;
  for (std::size_t c = 0; c < a.probs().size(); ++c) {
    m = std::max(m, std::abs(a.probs()[c] - b.probs()[c]));
  }
  return m;
}

GraphLaw independent_edge_law(std::size_t n,
                              const std::function<double(Vertex, Vertex)>& edge_prob) {
  check_enumerable(n);
  const std::size_t pairs = num_pairs(n);
  std::vector<double> p(pairs);
  for (Vertex j = 2; j <= n; ++j) {
    for (Vertex i = 1; i < j; ++i) p[pair_bit(i, j)] = edge_prob(i, j);
  }
  std::vector<double> probs(GraphCode{1} << pairs);
  for (GraphCode c = 0; c < probs.size(); ++c) {
    double w = 1.0;
    for (std::size_t b = 0; b < pairs; ++b) w *= (c >> b & 1U) ? p[b] : 1.0 - p[b];
    probs[c] = w;
  }
  return GraphLaw(n, std::move(probs));
}

GraphLaw er_law(double p, std::size_t n) {
  return independent_edge_law(n, [p](Vertex, Vertex) { return p; });
}

GraphLaw beta_law(std::span<const double> beta) {
  return independent_edge_law(beta.size(), [beta](Vertex i, Vertex j) {
    return logistic(beta[i - 1] + beta[j - 1]);
  });
}

GraphLaw sbm_law(double p, double q, const Partition& blocks, std::size_t n) {
  if (blocks.size() < n) throw ValidationError("partition does not cover the vertex set");
  return independent_edge_law(n, [&](Vertex i, Vertex j) {
    return blocks.same_block(i, j) ? p : q;
  });
}

GraphLaw graphon_law(const GridGraphon& h, std::size_t n) {
  check_enumerable(n);
  const std::size_t k = h.resolution();
  double combos = std::pow(static_cast<double>(k), static_cast<double>(n));
  if (combos > 1e6) throw CapacityError("graphon law enumeration too large");
  std::vector<double> mix(GraphCode{1} << num_pairs(n), 0.0);
  std::vector<std::size_t> cell(n, 0);
  const double weight = 1.0 / combos;
  for (;;) {
    const GraphLaw given = independent_edge_law(n, [&](Vertex i, Vertex j) {
      return h.cell(cell[i - 1], cell[j - 1]);
    });
    for (std::size_t c = 0; c < mix.size(); ++c) mix[c] += weight * given.probs()[c];
    std::size_t pos = 0;
    while (pos < n && ++cell[pos] == k) cell[pos++] = 0;
    if (pos == n) break;
  }
  return GraphLaw::from_weights(n, std::move(mix));
}

GraphLaw ergm_law(const ErgmSpec& spec) {
  check_enumerable(spec.n);
  if (spec.stats.size() != spec.theta.size()) {
    throw ValidationError("ERGM needs one natural parameter per statistic");
  }
  const std::vector<SimpleGraph> graphs = enumerate_graphs(spec.n);
  std::vector<double> log_w(graphs.size());
  double max_log = -INFINITY;
  for (std::size_t c = 0; c < graphs.size(); ++c) {
    double s = 0.0;
    for (std::size_t k = 0; k < spec.stats.size(); ++k) {
      s += spec.theta[k] * ergm_statistic(graphs[c], spec.stats[k]);
    }
    log_w[c] = s;
    max_log = std::max(max_log, s);
  }
  std::vector<double> w(graphs.size());
  for (std::size_t c = 0; c < w.size(); ++c) w[c] = std::exp(log_w[c] - max_log);
  return GraphLaw::from_weights(spec.n, std::move(w));
}

GraphLaw covariate_law(std::span<const double> theta, const std::vector<std::vector<double>>& x) {
  for (const auto& row : x) {
    if (row.size() != theta.size()) throw ValidationError("covariate dimension mismatch");
  }
  return independent_edge_law(x.size(), [&](Vertex i, Vertex j) {
    double s = 0.0;
    for (std::size_t d = 0; d < theta.size(); ++d) s += theta[d] * (x[i - 1][d] + x[j - 1][d]);
    return logistic(s);
  });
}

double indicator_measure(const std::function<bool(double)>& f) {
  constexpr int kCells = 4096;
  double total = 0.0;
  bool left = f(0.0);
  for (int c = 0; c < kCells; ++c) {
    const double a = static_cast<double>(c) / kCells;
    const double b = static_cast<double>(c + 1) / kCells;
    const bool right = f(b);
    if (left == right) {
      if (left) total += b - a;
    } else {
      double lo = a;
      double hi = b;
      for (int it = 0; it < 80 && lo < hi; ++it) {
        const double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;
        (f(mid) == left ? lo : hi) = mid;
      }
      total += left ? hi - a : b - hi;
    }
    left = right;
  }
  return total;
}

GraphLaw rel_exch_law(std::span<const double> phi, const Partition& psi, const Kernel& g,
                      std::size_t n) {
  if (!g.pair_local) {
    throw UnsupportedError("exact law needs a kernel that reads only the pair uniform");
  }
  const Partition padded = psi.size() >= n ? psi : Partition::singletons(0);
  return independent_edge_law(n, [&](Vertex i, Vertex j) {
    const std::size_t visible = std::min<std::size_t>(std::max(i, j), padded.size());
    const PartitionPrefix prefix(padded, visible);
    return indicator_measure([&](double u) {
      // Uniforms the kernel does not read are pinned at 1/2.
      return g.fn(KernelArgs{phi, prefix, i, j, 0.5, 0.5, 0.5, u});
    });
  });
}

GraphLaw exact_law(const ModelSpec& spec, std::size_t n) {
  return std::visit(
      [&](const auto& s) -> GraphLaw {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ErSpec>) {
          return er_law(s.p, n);
        } else if constexpr (std::is_same_v<T, BetaSpec>) {
          if (n > s.beta.size()) throw RangeError("beta model has only " + std::to_string(s.beta.size()) + " vertices");
          return beta_law(std::span<const double>(s.beta).first(n));
        } else if constexpr (std::is_same_v<T, SbmSpec>) {
          return sbm_law(s.p, s.q, s.blocks, n);
        } else if constexpr (std::is_same_v<T, GraphonSpec>) {
          return graphon_law(s.h, n);
        } else if constexpr (std::is_same_v<T, ErgmSpec>) {
          const GraphLaw full = ergm_law(s);
          return n == s.n ? full : full.marginal(n);
        } else if constexpr (std::is_same_v<T, CovariateSpec>) {
          if (n > s.x.size()) throw RangeError("covariate model has only " + std::to_string(s.x.size()) + " vertices");
          std::vector<std::vector<double>> x(s.x.begin(), s.x.begin() + static_cast<std::ptrdiff_t>(n));
          return covariate_law(s.theta, x);
        } else if constexpr (std::is_same_v<T, RelExchSpec>) {
          return rel_exch_law(s.phi, s.psi, s.g, n);
        } else {
          throw UnsupportedError("no exact vertex-labelled law for model '" + model_name(s) + "'");
        }
      },
      spec);
}

GraphLaw read_law_table(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<double> weights;
  auto fail = [&](const std::string& what) {
    throw FormatError("law table line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!n) {
      std::size_t size = 0;
      char extra = 0;
      if (first != "law" || !(ls >> std::ws) || ls.get() != 'n' || ls.get() != '=' ||
          !(ls >> size) || (ls >> extra)) {
        fail("expected header 'law n=<n>'");
      }
      if (size > kMaxEnumerateVertices) fail("law size exceeds " + std::to_string(kMaxEnumerateVertices));
      n = size;
      weights.assign(GraphCode{1} << num_pairs(size), 0.0);
      continue;
    }
    GraphCode code = 0;
    double w = 0.0;
    std::istringstream entry(line);
    char extra = 0;
    if (!(entry >> code >> w) || (entry >> extra)) fail("expected '<code> <weight>'");
    if (code >= weights.size()) fail("graph code out of range");
    if (!(w >= 0.0) || !std::isfinite(w)) fail("weight must be finite and nonnegative");
    weights[code] += w;
  }
  if (!n) throw FormatError("law table is empty");
  try {
    return GraphLaw::from_weights(*n, std::move(weights));
  } catch (const ValidationError& e) {
    throw FormatError(std::string("law table: ") + e.what());
  }
}

GraphLaw read_law_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return read_law_table(in);
}

void write_law_table(std::ostream& out, const GraphLaw& law) {
  out << "law n=" << law.num_vertices() << '\n';
  const auto old = out.precision(17);
  for (GraphCode c = 0; c < law.probs().size(); ++c) {
    if (law.probs()[c] > 0.0) out << c << ' ' << law.probs()[c] << '\n';
  }
  out.precision(old);
}

}  // namespace netlab
