#include "netlab/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "netlab/errors.hpp"
#include "netlab/exact_law.hpp"

namespace netlab {
namespace {

double logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void require_probability(double p, std::string_view what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError(std::string(what) + " must lie in [0,1], got " + std::to_string(p));
  }
}

// Fenwick tree over nonnegative weights supporting proportional draws.
class WeightTree {
 public:
  explicit WeightTree(std::size_t capacity) : tree_(capacity + 1, 0.0) {}

  void add(std::size_t index, double delta) {
    total_ += delta;
    for (std::size_t i = index + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  double total() const { return total_; }

  // Smallest index whose running sum exceeds target, target in [0, total).
  std::size_t find(double target) const {
    std::size_t pos = 0;
    std::size_t step = 1;
    while (step * 2 < tree_.size()) step *= 2;
    for (; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    return pos;
  }

 private:
  std::vector<double> tree_;
  double total_ = 0.0;
};

template <class EdgeTest>
SimpleGraph independent_edges(std::size_t n, EdgeTest&& present) {
  std::vector<Edge> edges;
  for (Vertex j = 2; j <= n; ++j) {
    for (Vertex i = 1; i < j; ++i) {
      if (present(i, j)) edges.emplace_back(i, j);
    }
  }
  return SimpleGraph(n, std::move(edges));
}

std::vector<std::vector<double>> reshape_covariates(const std::vector<double>& flat,
                                                    std::size_t d) {
  if (d == 0 || flat.size() % d != 0) {
    throw ValidationError("covariate list length must be a multiple of len(theta)");
  }
  std::vector<std::vector<double>> x(flat.size() / d);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i].assign(flat.begin() + static_cast<std::ptrdiff_t>(i * d),
                flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
  }
  return x;
}

void check_covariate_dims(std::span<const double> theta,
                          const std::vector<std::vector<double>>& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != theta.size()) {
      throw ValidationError("covariate vector " + std::to_string(i + 1) + " has length " +
                            std::to_string(x[i].size()) + ", expected " +
                            std::to_string(theta.size()));
    }
  }
}

double covariate_score(std::span<const double> theta, const std::vector<double>& xi,
                       const std::vector<double>& xj) {
  double s = 0.0;
  for (std::size_t d = 0; d < theta.size(); ++d) s += theta[d] * (xi[d] + xj[d]);
  return s;
}

}  // namespace

// ---- GridGraphon ------------------------------------------------------------

GridGraphon::GridGraphon(std::size_t k, std::vector<double> cells)
    : k_(k), cells_(std::move(cells)) {
  if (k_ == 0 || cells_.size() != k_ * k_) {
    throw ValidationError("graphon grid needs k*k cells");
  }
  for (std::size_t r = 0; r < k_; ++r) {
    for (std::size_t c = 0; c < k_; ++c) {
      require_probability(cell(r, c), "graphon cell");
      if (cell(r, c) != cell(c, r)) throw ValidationError("graphon grid is not symmetric");
    }
  }
}

std::size_t GridGraphon::cell_index(double u) const {
  const auto idx = static_cast<std::size_t>(std::ceil(u * static_cast<double>(k_)));
  return std::clamp<std::size_t>(idx, 1, k_) - 1;
}

double GridGraphon::operator()(double u, double v) const {
  return cell(cell_index(u), cell_index(v));
}

double GridGraphon::integral() const {
  double s = 0.0;
  for (double c : cells_) s += c;
  return s / static_cast<double>(k_ * k_);
}

// ---- ERGM statistics ----------------------------------------------------------

std::string_view to_string(ErgmStat s) {
  switch (s) {
    case ErgmStat::edges:
      return "edges";
    case ErgmStat::triangles:
      return "triangles";
    case ErgmStat::two_stars:
      return "two-stars";
  }
  return "?";
}

ErgmStat parse_ergm_stat(std::string_view name) {
  if (name == "edges") return ErgmStat::edges;
  if (name == "triangles") return ErgmStat::triangles;
  if (name == "two-stars" || name == "twostars" || name == "two_stars") return ErgmStat::two_stars;
  throw ValidationError("unknown ERGM statistic '" + std::string(name) + "'");
}

double ergm_statistic(const SimpleGraph& g, ErgmStat s) {
  switch (s) {
    case ErgmStat::edges:
      return static_cast<double>(g.num_edges());
    case ErgmStat::two_stars: {
      double total = 0.0;
      for (Vertex v = 1; v <= g.num_vertices(); ++v) {
        const double d = static_cast<double>(g.degree(v));
        total += d * (d - 1) / 2;
      }
      return total;
    }
    case ErgmStat::triangles: {
      double count = 0.0;
      for (const Edge& e : g.edges()) {
        for (Vertex w : g.neighbors(e.v)) {
          if (w > e.v && g.has_edge(e.u, w)) count += 1;
        }
      }
      return count;
    }
  }
  return 0.0;
}

// ---- kernels ---------------------------------------------------------------------

PartitionPrefix::PartitionPrefix(const Partition& full, std::size_t visible)
    : full_(&full), visible_(visible) {
  if (visible > full.size()) {
    throw RangeError("partition prefix longer than the partition");
  }
}

std::uint32_t PartitionPrefix::block(Vertex i) const {
  if (i < 1 || i > visible_) {
    throw RangeError("label " + std::to_string(i) + " is outside the visible prefix [" +
                     std::to_string(visible_) + "]");
  }
  return full_->block(i);
}

Kernel sbm_kernel() {
  return Kernel{"sbm",
                [](const KernelArgs& a) {
                  const double p = a.phi[0];
                  const double q = a.phi[1];
                  return a.psi.same_block(a.i, a.j) ? a.uij <= p : a.uij <= q;
                },
                true};
}

Kernel covariate_kernel(std::vector<std::vector<double>> x) {
  return Kernel{"covariate",
                [x = std::move(x)](const KernelArgs& a) {
                  if (a.i > x.size() || a.j > x.size()) {
                    throw RangeError("covariate kernel has no covariates for the pair");
                  }
                  return a.uij <= logistic(covariate_score(a.phi, x[a.i - 1], x[a.j - 1]));
                },
                true};
}

Kernel er_kernel() {
  return Kernel{"er", [](const KernelArgs& a) { return a.uij <= a.phi[0]; }, true};
}

Kernel zero_kernel() {
  return Kernel{"zero", [](const KernelArgs&) { return false; }, true};
}

// ---- validation ---------------------------------------------------------------

namespace {

struct Validator {
  void operator()(const ErSpec& s) const { require_probability(s.p, "p"); }
  void operator()(const BetaSpec& s) const {
    for (double b : s.beta) {
      if (!std::isfinite(b)) throw ValidationError("beta entries must be finite");
    }
  }
  void operator()(const SbmSpec& s) const {
    require_probability(s.p, "p");
    require_probability(s.q, "q");
  }
  void operator()(const GraphonSpec&) const {}
  void operator()(const ErgmSpec& s) const {
    if (s.stats.size() != s.theta.size()) {
      throw ValidationError("ERGM needs one natural parameter per statistic");
    }
  }
  void operator()(const PaSpec& s) const {
    if (!(s.delta > -1.0)) throw ValidationError("delta must exceed -1");
  }
  void operator()(const SuperstarSpec& s) const {
    if (!(s.p > 0.0 && s.p < 1.0)) throw ValidationError("superstar p must lie in (0,1)");
    if (!(s.delta > -1.0)) throw ValidationError("delta must exceed -1");
  }
  void operator()(const EdgeExchSpec& s) const {
    if (!(s.alpha > 0.0 && s.alpha < 1.0)) throw ValidationError("alpha must lie in (0,1)");
    if (!(s.theta > -s.alpha)) throw ValidationError("theta must exceed -alpha");
    if (s.truncation < 100) throw ValidationError("truncation K must be at least 100");
  }
  void operator()(const CovariateSpec& s) const { check_covariate_dims(s.theta, s.x); }
  void operator()(const RelExchSpec& s) const {
    if (!s.g.fn) throw ValidationError("relative exchangeability kernel is empty");
  }
};

}  // namespace

void validate(const ModelSpec& spec) { std::visit(Validator{}, spec); }

std::string model_name(const ModelSpec& spec) {
  static constexpr const char* names[] = {"er",        "beta",       "sbm",
                                          "graphon",   "ergm",       "pa",
                                          "superstar", "edge-exch",  "covariate",
                                          "rel-exch"};
  return names[spec.index()];
}

// ---- parsing -----------------------------------------------------------------

namespace {

class KeyValues {
 public:
  explicit KeyValues(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ValidationError("expected key=value, got '" + token + "'");
      }
      std::string key = token.substr(0, eq);
      if (!values_.emplace(key, token.substr(eq + 1)).second) {
        throw ValidationError("duplicate key '" + key + "'");
      }
    }
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string text(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) throw ValidationError("missing key '" + key + "'");
    used_.push_back(key);
    return it->second;
  }

  double real(const std::string& key) {
    const std::string v = text(key);
    try {
      std::size_t pos = 0;
      double x = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw ValidationError("key '" + key + "' expects a number, got '" + v + "'");
    }
  }

  std::size_t count(const std::string& key) {
    const std::string v = text(key);
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
      throw ValidationError("key '" + key + "' expects a nonnegative integer, got '" + v + "'");
    }
    return static_cast<std::size_t>(std::stoull(v));
  }

  std::vector<double> reals(const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(text(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t pos = 0;
        out.push_back(std::stod(item, &pos));
        if (pos != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ValidationError("key '" + key + "' has a non-numeric entry '" + item + "'");
      }
    }
    return out;
  }

  std::vector<std::string> words(const std::string& key) {
    std::vector<std::string> out;
    std::stringstream ss(text(key));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
  }

  Partition partition(const std::string& key) {
    std::vector<std::int64_t> labels;
    for (double x : reals(key)) labels.push_back(static_cast<std::int64_t>(x));
    return Partition(labels);
  }

  void reject_unused() const {
    for (const auto& [key, value] : values_) {
      if (std::find(used_.begin(), used_.end(), key) == used_.end()) {
        throw ValidationError("unknown key '" + key + "' for this model");
      }
    }
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::string> used_;
};

}  // namespace

ParsedModel parse_model_spec(std::string_view text) {
  KeyValues kv(text);
  const std::string model = kv.text("model");
  ParsedModel out{ErSpec{}, std::nullopt};
  auto optional_size = [&](const char* key) {
    if (kv.has(key)) out.size = kv.count(key);
  };

  if (model == "er") {
    out.spec = ErSpec{kv.real("p")};
    optional_size("n");
  } else if (model == "beta") {
    out.spec = BetaSpec{kv.reals("beta")};
  } else if (model == "sbm") {
    out.spec = SbmSpec{kv.real("p"), kv.real("q"), kv.partition("B")};
  } else if (model == "graphon") {
    const std::size_t k = kv.count("k");
    out.spec = GraphonSpec{GridGraphon(k, kv.reals("grid"))};
    optional_size("n");
  } else if (model == "ergm") {
    ErgmSpec s;
    for (const auto& w : kv.words("stats")) s.stats.push_back(parse_ergm_stat(w));
    s.theta = kv.reals("theta");
    s.n = kv.count("n");
    out.size = s.n;
    out.spec = std::move(s);
  } else if (model == "pa") {
    out.spec = PaSpec{kv.real("delta")};
    optional_size("n");
  } else if (model == "superstar") {
    out.spec = SuperstarSpec{kv.real("p"), kv.real("delta")};
    optional_size("n");
  } else if (model == "edge-exch") {
    EdgeExchSpec s{kv.real("alpha"), kv.real("theta"), 1000};
    if (kv.has("K")) s.truncation = kv.count("K");
    out.spec = s;
    optional_size("m");
  } else if (model == "covariate") {
    CovariateSpec s;
    s.theta = kv.reals("theta");
    s.x = reshape_covariates(kv.reals("x"), s.theta.size());
    out.spec = std::move(s);
  } else if (model == "rel-exch") {
    const std::string kernel = kv.text("kernel");
    RelExchSpec s;
    if (kernel == "sbm") {
      s.phi = {kv.real("p"), kv.real("q")};
      s.psi = kv.partition("B");
      s.g = sbm_kernel();
    } else if (kernel == "er") {
      s.phi = {kv.real("p")};
      s.g = er_kernel();
    } else if (kernel == "zero") {
      s.g = zero_kernel();
    } else if (kernel == "covariate") {
      s.phi = kv.reals("theta");
      s.g = covariate_kernel(reshape_covariates(kv.reals("x"), s.phi.size()));
    } else {
      throw ValidationError("unknown kernel '" + kernel + "'");
    }
    if (kernel != "sbm" && kv.has("B")) s.psi = kv.partition("B");
    optional_size("n");
    out.spec = std::move(s);
  } else {
    throw ValidationError("unknown model '" + model + "'");
  }
  kv.reject_unused();
  validate(out.spec);
  return out;
}

namespace {

// Shortest text that parses back to the same double.
std::string num(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string join(std::span<const double> xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + num(xs[i]);
  return s;
}

std::string join_blocks(const Partition& b) {
  std::ostringstream os;
  for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b.block_ids()[i];
  return os.str();
}

}  // namespace

std::string format_model_spec(const ModelSpec& spec, std::optional<std::size_t> size) {
  std::ostringstream os;
  os << "model=" << model_name(spec);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ErSpec>) {
          os << " p=" << num(s.p);
        } else if constexpr (std::is_same_v<T, BetaSpec>) {
          os << " beta=" << join(s.beta);
        } else if constexpr (std::is_same_v<T, SbmSpec>) {
          os << " p=" << num(s.p) << " q=" << num(s.q) << " B=" << join_blocks(s.blocks);
        } else if constexpr (std::is_same_v<T, GraphonSpec>) {
          os << " k=" << s.h.resolution() << " grid=" << join(s.h.cells());
        } else if constexpr (std::is_same_v<T, ErgmSpec>) {
          os << " stats=";
          for (std::size_t i = 0; i < s.stats.size(); ++i) {
            os << (i ? "," : "") << to_string(s.stats[i]);
          }
          os << " theta=" << join(s.theta);
        } else if constexpr (std::is_same_v<T, PaSpec>) {
          os << " delta=" << num(s.delta);
        } else if constexpr (std::is_same_v<T, SuperstarSpec>) {
          os << " p=" << num(s.p) << " delta=" << num(s.delta);
        } else if constexpr (std::is_same_v<T, EdgeExchSpec>) {
          os << " alpha=" << num(s.alpha) << " theta=" << num(s.theta) << " K=" << s.truncation;
        } else if constexpr (std::is_same_v<T, CovariateSpec>) {
          std::vector<double> flat;
          for (const auto& row : s.x) flat.insert(flat.end(), row.begin(), row.end());
          os << " theta=" << join(s.theta) << " x=" << join(flat);
        } else if constexpr (std::is_same_v<T, RelExchSpec>) {
          os << " kernel=" << s.g.name;
          if (s.g.name == "sbm") {
            os << " p=" << num(s.phi.at(0)) << " q=" << num(s.phi.at(1));
          } else if (s.g.name == "er") {
            os << " p=" << num(s.phi.at(0));
          } else if (!s.phi.empty()) {
            os << " theta=" << join(s.phi);
          }
          if (s.psi.size() > 0) os << " B=" << join_blocks(s.psi);
        }
      },
      spec);
  if (const auto* ergm = std::get_if<ErgmSpec>(&spec)) {
    os << " n=" << ergm->n;
  } else if (size) {
    os << (std::holds_alternative<EdgeExchSpec>(spec) ? " m=" : " n=") << *size;
  }
  return os.str();
}

// ---- generators ------------------------------------------------------------------

SimpleGraph gen_er(double p, std::size_t n, Seed seed) {
  require_probability(p, "p");
  constexpr auto stream = stream_id("gen_er");
  return independent_edges(n, [&](Vertex i, Vertex j) {
    return keyed_uniform(seed, stream, i, j) < p;
  });
}

SimpleGraph gen_beta(std::span<const double> beta, Seed seed) {
  validate(BetaSpec{{beta.begin(), beta.end()}});
  constexpr auto stream = stream_id("gen_beta");
  return independent_edges(beta.size(), [&](Vertex i, Vertex j) {
    return keyed_uniform(seed, stream, i, j) < logistic(beta[i - 1] + beta[j - 1]);
  });
}

SimpleGraph gen_sbm(double p, double q, const Partition& blocks, Seed seed) {
  require_probability(p, "p");
  require_probability(q, "q");
  constexpr auto stream = stream_id("gen_sbm");
  return independent_edges(blocks.size(), [&](Vertex i, Vertex j) {
    const double prob = blocks.same_block(i, j) ? p : q;
    return keyed_uniform(seed, stream, i, j) < prob;
  });
}

SimpleGraph gen_graphon(const GridGraphon& h, std::size_t n, Seed seed) {
  LatentUniforms u(seed, stream_id("gen_graphon"));
  return independent_edges(n, [&](Vertex i, Vertex j) {
    return u.pair(i, j) < h(u.vertex(i), u.vertex(j));
  });
}

SimpleGraph gen_ergm_exact(const ErgmSpec& spec, Seed seed) {
  if (spec.n > kMaxEnumerateVertices) {
    throw CapacityError("exact ERGM sampling supports n <= " +
                        std::to_string(kMaxEnumerateVertices));
  }
  const GraphLaw law = ergm_law(spec);
  Rng rng(seed, stream_id("gen_ergm_exact"));
  return graph_from_code(spec.n, law.sample_code(rng.uniform()));
}

Multigraph gen_pa(double delta, std::size_t n_vertices, Seed seed) {
  validate(PaSpec{delta});
  std::vector<NamedPair> pairs;
  if (n_vertices < 2) return Multigraph{};
  pairs.reserve(n_vertices - 1);
  pairs.emplace_back(1, 2);

  Rng rng(seed, stream_id("gen_pa"));
  WeightTree weights(n_vertices);
  weights.add(0, 1.0 + delta);
  weights.add(1, 1.0 + delta);
  for (std::size_t t = 2; t < n_vertices; ++t) {
    const std::size_t target = weights.find(rng.uniform() * weights.total());
    pairs.emplace_back(target + 1, t + 1);
    weights.add(target, 1.0);
    weights.add(t, 1.0 + delta);
  }
  return Multigraph(std::move(pairs));
}

Multigraph gen_superstar(double p, double delta, std::size_t n_vertices, Seed seed) {
  validate(SuperstarSpec{p, delta});
  std::vector<NamedPair> pairs;
  if (n_vertices < 2) return Multigraph{};
  pairs.reserve(n_vertices - 1);
  pairs.emplace_back(1, 2);

  Rng rng(seed, stream_id("gen_superstar"));
  // Indices 0..n-2 stand for vertices 2..n; the superstar is not in the tree.
  WeightTree weights(n_vertices - 1);
  weights.add(0, 1.0 + delta);
  for (std::size_t t = 2; t < n_vertices; ++t) {
    const VertexName arriving = t + 1;
    if (rng.bernoulli(p)) {
      pairs.emplace_back(1, arriving);
      weights.add(t - 1, 1.0 + delta);
    } else {
      const std::size_t target = weights.find(rng.uniform() * weights.total());
      pairs.emplace_back(target + 2, arriving);
      weights.add(target, 1.0);
      weights.add(t - 1, 1.0 + delta);
    }
  }
  return Multigraph(std::move(pairs));
}

std::vector<double> gem_weights(double alpha, double theta, std::size_t truncation, Rng& rng) {
  validate(EdgeExchSpec{alpha, theta, truncation});
  std::vector<double> w(truncation);
  double remaining = 1.0;
  double total = 0.0;
  for (std::size_t k = 1; k <= truncation; ++k) {
    const double v = rng.beta(1.0 - alpha, theta + static_cast<double>(k) * alpha);
    w[k - 1] = v * remaining;
    remaining *= 1.0 - v;
    total += w[k - 1];
  }
  if (!(total > 0.0)) throw ResourceError("stick-breaking weights vanished");
  for (double& x : w) x /= total;
  return w;
}

Multigraph gen_edge_exch(double alpha, double theta, std::size_t truncation,
                         std::size_t m_edges, Seed seed) {
  Rng rng(seed, stream_id("gen_edge_exch"));
  const std::vector<double> w = gem_weights(alpha, theta, truncation, rng);
  std::discrete_distribution<std::size_t> pick(w.begin(), w.end());

  constexpr std::size_t kMaxRejections = 1'000'000;
  std::vector<NamedPair> pairs;
  pairs.reserve(m_edges);
  for (std::size_t k = 0; k < m_edges; ++k) {
    std::size_t rejections = 0;
    for (;;) {
      const std::size_t a = pick(rng.engine());
      const std::size_t b = pick(rng.engine());
      if (a != b) {
        pairs.emplace_back(a + 1, b + 1);
        break;
      }
      if (++rejections == kMaxRejections) {
        throw ResourceError("edge-exchangeable sampler kept drawing equal endpoints");
      }
    }
  }
  return Multigraph(std::move(pairs));
}

SimpleGraph gen_covariate(std::span<const double> theta,
                          const std::vector<std::vector<double>>& x, Seed seed) {
  check_covariate_dims(theta, x);
  constexpr auto stream = stream_id("gen_covariate");
  return independent_edges(x.size(), [&](Vertex i, Vertex j) {
    const double prob = logistic(covariate_score(theta, x[i - 1], x[j - 1]));
    return keyed_uniform(seed, stream, i, j) < prob;
  });
}

SimpleGraph gen_rel_exch(std::span<const double> phi, const Partition& psi, const Kernel& g,
                         std::size_t n, Seed seed) {
  if (!g.fn) throw ValidationError("relative exchangeability kernel is empty");
  const LatentUniforms u(seed, stream_id("gen_rel_exch"));
  const double u0 = u.u0();
  // Kernels that ignore psi accept an empty partition.
  const Partition padded = psi.size() >= n ? psi : Partition::singletons(0);
  return independent_edges(n, [&](Vertex i, Vertex j) {
    const std::size_t visible = std::min<std::size_t>(std::max(i, j), padded.size());
    KernelArgs args{phi, PartitionPrefix(padded, visible), i, j,
                    u0,  u.vertex(i), u.vertex(j), u.pair(i, j)};
    return g.fn(args);
  });
}

AnyGraph generate(const ModelSpec& spec, std::optional<std::size_t> size, Seed seed) {
  validate(spec);
  auto need_size = [&]() -> std::size_t {
    if (!size) throw ValidationError("model '" + model_name(spec) + "' needs a size");
    return *size;
  };
  return std::visit(
      [&](const auto& s) -> AnyGraph {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ErSpec>) {
          return gen_er(s.p, need_size(), seed);
        } else if constexpr (std::is_same_v<T, BetaSpec>) {
          return gen_beta(s.beta, seed);
        } else if constexpr (std::is_same_v<T, SbmSpec>) {
          return gen_sbm(s.p, s.q, s.blocks, seed);
        } else if constexpr (std::is_same_v<T, GraphonSpec>) {
          return gen_graphon(s.h, need_size(), seed);
        } else if constexpr (std::is_same_v<T, ErgmSpec>) {
          return gen_ergm_exact(s, seed);
        } else if constexpr (std::is_same_v<T, PaSpec>) {
          return gen_pa(s.delta, need_size(), seed);
        } else if constexpr (std::is_same_v<T, SuperstarSpec>) {
          return gen_superstar(s.p, s.delta, need_size(), seed);
        } else if constexpr (std::is_same_v<T, EdgeExchSpec>) {
          return gen_edge_exch(s.alpha, s.theta, s.truncation, need_size(), seed);
        } else if constexpr (std::is_same_v<T, CovariateSpec>) {
          return gen_covariate(s.theta, s.x, seed);
        } else {
          const std::size_t n = size ? *size : s.psi.size();
          return gen_rel_exch(s.phi, s.psi, s.g, n, seed);
        }
      },
      spec);
}

}  // namespace netlab
