#include "netlab/graph.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <unordered_map>

#include "netlab/errors.hpp"

namespace netlab {

SimpleGraph::SimpleGraph(std::size_t n) : n_(n), adj_(n) {}

SimpleGraph::SimpleGraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), adj_(n) {
  for (const Edge& e : edges_) {
    if (e.u == e.v) {
      throw ValidationError("self-loop {" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + "}");
    }
    if (e.u < 1 || e.v > n_) {
      throw ValidationError("edge {" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + "} outside [" +
                            std::to_string(n_) + "]");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const Edge& e : edges_) {
    adj_[e.u - 1].push_back(e.v);
    adj_[e.v - 1].push_back(e.u);
  }
  for (auto& row : adj_) std::sort(row.begin(), row.end());
}

SimpleGraph SimpleGraph::complete(std::size_t n) {
  std::vector<Edge> edges;
  edges.reserve(num_pairs(n));
  for (Vertex i = 1; i <= n; ++i) {
    for (Vertex j = i + 1; j <= n; ++j) edges.emplace_back(i, j);
  }
  return SimpleGraph(n, std::move(edges));
}

bool SimpleGraph::has_edge(Vertex a, Vertex b) const {
  if (a == b || a < 1 || b < 1 || a > n_ || b > n_) return false;
  const auto& row = adj_[a - 1];
  return std::binary_search(row.begin(), row.end(), b);
}

std::span<const Vertex> SimpleGraph::neighbors(Vertex v) const {
  if (v < 1 || v > n_) {
    throw RangeError("vertex " + std::to_string(v) + " outside [" +
                     std::to_string(n_) + "]");
  }
  return adj_[v - 1];
}

Multigraph::Multigraph(std::vector<NamedPair> pairs) : pairs_(std::move(pairs)) {
  for (const NamedPair& p : pairs_) {
    if (p.a == p.b) {
      throw ValidationError("pair with equal endpoints " + std::to_string(p.a));
    }
    if (p.a == 0) throw ValidationError("vertex names must be positive");
  }
}

const NamedPair& Multigraph::pair(std::size_t k) const {
  if (k < 1 || k > pairs_.size()) {
    throw RangeError("edge index " + std::to_string(k) + " outside [" +
                     std::to_string(pairs_.size()) + "]");
  }
  return pairs_[k - 1];
}

std::vector<VertexName> Multigraph::vertices() const {
  std::vector<VertexName> order;
  std::unordered_map<VertexName, bool> seen;
  for (const NamedPair& p : pairs_) {
    for (VertexName x : {p.a, p.b}) {
      if (seen.emplace(x, true).second) order.push_back(x);
    }
  }
  return order;
}

namespace {

std::vector<std::uint32_t> canonical_blocks(std::span<const std::int64_t> labels,
                                            std::size_t& num_blocks) {
  std::vector<std::uint32_t> out;
  out.reserve(labels.size());
  std::unordered_map<std::int64_t, std::uint32_t> ids;
  for (std::int64_t l : labels) {
    auto [it, inserted] = ids.emplace(l, static_cast<std::uint32_t>(ids.size() + 1));
    out.push_back(it->second);
  }
  num_blocks = ids.size();
  return out;
}

}  // namespace

Partition::Partition(std::span<const std::int64_t> labels) {
  block_of_ = canonical_blocks(labels, num_blocks_);
}

Partition::Partition(std::initializer_list<std::int64_t> labels)
    : Partition(std::span<const std::int64_t>(labels.begin(), labels.size())) {}

Partition Partition::singletons(std::size_t n) {
  std::vector<std::int64_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<std::int64_t>(i);
  return Partition(labels);
}

Partition Partition::one_block(std::size_t n) {
  std::vector<std::int64_t> labels(n, 1);
  return Partition(labels);
}

std::uint32_t Partition::block(Vertex i) const {
  if (i < 1 || i > block_of_.size()) {
    throw RangeError("label " + std::to_string(i) + " outside partition of [" +
                     std::to_string(block_of_.size()) + "]");
  }
  return block_of_[i - 1];
}

Partition Partition::restrict(std::size_t m) const {
  if (m > block_of_.size()) {
    throw RangeError("cannot restrict partition of [" + std::to_string(size()) +
                     "] to [" + std::to_string(m) + "]");
  }
  std::vector<std::int64_t> labels(block_of_.begin(), block_of_.begin() + m);
  return Partition(labels);
}

Permutation::Permutation(std::vector<Vertex> images) : images_(std::move(images)) {
  std::vector<bool> hit(images_.size(), false);
  for (Vertex v : images_) {
    if (v < 1 || v > images_.size() || hit[v - 1]) {
      throw ValidationError("map is not a bijection of [" +
                            std::to_string(images_.size()) + "]");
    }
    hit[v - 1] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Vertex> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<Vertex>(i + 1);
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(std::size_t n, std::string_view cycles) {
  std::vector<Vertex> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<Vertex>(i + 1);
  std::vector<bool> mentioned(n, false);

  // Without separators every digit is its own label.
  const bool separated = cycles.find_first_of(" ,") != std::string_view::npos;
  std::size_t pos = 0;
  while (pos < cycles.size()) {
    if (std::isspace(static_cast<unsigned char>(cycles[pos]))) {
      ++pos;
      continue;
    }
    if (cycles[pos] != '(') throw ValidationError("malformed cycle notation");
    std::size_t close = cycles.find(')', pos);
    if (close == std::string_view::npos) throw ValidationError("unclosed cycle");
    std::string_view body = cycles.substr(pos + 1, close - pos - 1);
    std::vector<Vertex> cycle;
    std::string token;
    auto flush = [&] {
      if (token.empty()) return;
      cycle.push_back(static_cast<Vertex>(std::stoul(token)));
      token.clear();
    };
    for (char c : body) {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        token.push_back(c);
        if (!separated) flush();
      } else if (c == ' ' || c == ',') {
        flush();
      } else {
        throw ValidationError("unexpected character in cycle notation");
      }
    }
    flush();
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      Vertex from = cycle[k];
      Vertex to = cycle[(k + 1) % cycle.size()];
      if (from < 1 || from > n || mentioned[from - 1]) {
        throw ValidationError("cycle label out of range or repeated");
      }
      mentioned[from - 1] = true;
      images[from - 1] = to;
    }
    pos = close + 1;
  }
  return Permutation(std::move(images));
}

Vertex Permutation::operator()(Vertex i) const {
  if (i < 1 || i > images_.size()) {
    throw RangeError("label " + std::to_string(i) + " outside permutation domain");
  }
  return images_[i - 1];
}

Permutation Permutation::inverse() const {
  std::vector<Vertex> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    inv[images_[i] - 1] = static_cast<Vertex>(i + 1);
  }
  return Permutation(std::move(inv));
}

SimpleGraph restrict(const SimpleGraph& g, std::size_t m) {
  if (m < 1 || m > g.num_vertices()) {
    throw RangeError("restriction size " + std::to_string(m) + " outside [1," +
                     std::to_string(g.num_vertices()) + "]");
  }
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (e.v <= m) kept.push_back(e);
  }
  return SimpleGraph(m, std::move(kept));
}

Multigraph restrict(const Multigraph& g, std::size_t m) {
  if (m > g.num_edges()) {
    throw RangeError("restriction size " + std::to_string(m) + " exceeds " +
                     std::to_string(g.num_edges()) + " edges");
  }
  return Multigraph(std::vector<NamedPair>(g.pairs().begin(), g.pairs().begin() + m));
}

SimpleGraph relabel(const SimpleGraph& g, const Permutation& sigma) {
  if (sigma.size() != g.num_vertices()) {
    throw ValidationError("permutation size does not match vertex count");
  }
  std::vector<Edge> out;
  out.reserve(g.num_edges());
  for (const Edge& e : g.edges()) out.emplace_back(sigma(e.u), sigma(e.v));
  return SimpleGraph(g.num_vertices(), std::move(out));
}

Multigraph relabel_edges(const Multigraph& g, const Permutation& sigma) {
  if (sigma.size() != g.num_edges()) {
    throw ValidationError("permutation size does not match edge count");
  }
  std::vector<NamedPair> out(g.num_edges());
  for (std::size_t k = 1; k <= g.num_edges(); ++k) {
    out[sigma(static_cast<Vertex>(k)) - 1] = g.pair(k);
  }
  return Multigraph(std::move(out));
}

Partition relabel(const Partition& b, const Permutation& sigma) {
  if (sigma.size() != b.size()) {
    throw ValidationError("permutation size does not match partition size");
  }
  Permutation inv = sigma.inverse();
  std::vector<std::int64_t> labels(b.size());
  for (Vertex i = 1; i <= b.size(); ++i) labels[i - 1] = b.block(inv(i));
  return Partition(labels);
}

SimpleGraph project(const Multigraph& g) {
  std::unordered_map<VertexName, Vertex> rename;
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  auto name_of = [&](VertexName x) {
    auto [it, inserted] = rename.emplace(x, static_cast<Vertex>(rename.size() + 1));
    return it->second;
  };
  for (const NamedPair& p : g.pairs()) {
    Vertex a = name_of(p.a);
    Vertex b = name_of(p.b);
    edges.emplace_back(a, b);
  }
  return SimpleGraph(rename.size(), std::move(edges));
}

DegreeProfile degree_profile(const SimpleGraph& g) {
  DegreeProfile out;
  out.num_vertices = g.num_vertices();
  for (Vertex v = 1; v <= g.num_vertices(); ++v) ++out.counts[g.degree(v)];
  return out;
}

DegreeProfile degree_profile(const Multigraph& g) {
  std::unordered_map<VertexName, std::size_t> deg;
  for (const NamedPair& p : g.pairs()) {
    ++deg[p.a];
    ++deg[p.b];
  }
  DegreeProfile out;
  out.num_vertices = deg.size();
  for (const auto& [name, d] : deg) ++out.counts[d];
  return out;
}

GraphCode graph_code(const SimpleGraph& g) {
  if (g.num_vertices() > kMaxCodedVertices) {
    throw CapacityError("graph too large to code (" + std::to_string(g.num_vertices()) +
                        " vertices)");
  }
  GraphCode code = 0;
  for (const Edge& e : g.edges()) code |= GraphCode{1} << pair_bit(e.u, e.v);
  return code;
}

SimpleGraph graph_from_code(std::size_t n, GraphCode code) {
  if (n > kMaxCodedVertices) {
    throw CapacityError("graph too large to code (" + std::to_string(n) + " vertices)");
  }
  std::vector<Edge> edges;
  for (Vertex j = 2; j <= n; ++j) {
    for (Vertex i = 1; i < j; ++i) {
      if (code >> pair_bit(i, j) & 1U) edges.emplace_back(i, j);
    }
  }
  return SimpleGraph(n, std::move(edges));
}

std::vector<SimpleGraph> enumerate_graphs(std::size_t n) {
  if (n > kMaxEnumerateVertices) {
    throw CapacityError("enumerate_graphs supports n <= " +
                        std::to_string(kMaxEnumerateVertices) + ", got " +
                        std::to_string(n));
  }
  const GraphCode total = GraphCode{1} << num_pairs(n);
  std::vector<SimpleGraph> out;
  out.reserve(total);
  for (GraphCode c = 0; c < total; ++c) out.push_back(graph_from_code(n, c));
  return out;
}

}  // namespace netlab
