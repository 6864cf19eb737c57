#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string_view>
#include <vector>

namespace netlab {

// Vertex labels are 1-based throughout: a graph on n vertices uses 1..n.
using Vertex = std::uint32_t;

// Unordered pair stored canonically (u < v).
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

// Finite vertex-labeled undirected graph on [n] without self-loops.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(std::size_t n);
  // Duplicate pairs collapse; self-loops and out-of-range labels throw
  // ValidationError.
  SimpleGraph(std::size_t n, std::vector<Edge> edges);

  static SimpleGraph complete(std::size_t n);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  bool has_edge(Vertex a, Vertex b) const;
  std::span<const Vertex> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  // Sorted ascending.
  const std::vector<Edge>& edges() const { return edges_; }

  bool operator==(const SimpleGraph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

using VertexName = std::uint64_t;

// Unordered pair of positive vertex names, canonical (a < b).
struct NamedPair {
  VertexName a = 0;
  VertexName b = 0;

  NamedPair() = default;
  NamedPair(VertexName x, VertexName y) : a(x < y ? x : y), b(x < y ? y : x) {}

  auto operator<=>(const NamedPair&) const = default;
};

// Edge-labeled data: pair k (1-based) is the k-th interaction. Vertices exist
// only through the pairs that mention them.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(std::vector<NamedPair> pairs);

  std::size_t num_edges() const { return pairs_.size(); }
  const std::vector<NamedPair>& pairs() const { return pairs_; }
  // 1-based edge index.
  const NamedPair& pair(std::size_t k) const;

  // Distinct vertex names in order of first appearance.
  std::vector<VertexName> vertices() const;
  std::size_t num_vertices() const { return vertices().size(); }

  bool operator==(const Multigraph&) const = default;

 private:
  std::vector<NamedPair> pairs_;
};

// Set partition of [n]; block ids run 1..B in order of first appearance.
class Partition {
 public:
  Partition() = default;
  // Any labelling works; ids are canonicalized by first appearance.
  explicit Partition(std::span<const std::int64_t> labels);
  explicit Partition(std::initializer_list<std::int64_t> labels);

  static Partition singletons(std::size_t n);
  static Partition one_block(std::size_t n);

  std::size_t size() const { return block_of_.size(); }
  std::size_t num_blocks() const { return num_blocks_; }
  std::uint32_t block(Vertex i) const;
  bool same_block(Vertex i, Vertex j) const { return block(i) == block(j); }
  const std::vector<std::uint32_t>& block_ids() const { return block_of_; }

  Partition restrict(std::size_t m) const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<std::uint32_t> block_of_;
  std::size_t num_blocks_ = 0;
};

// Bijection of [n], 1-based: (*this)(i) is the image of i.
class Permutation {
 public:
  Permutation() = default;
  // Throws ValidationError when the images are not a bijection of 1..n.
  explicit Permutation(std::vector<Vertex> images);

  static Permutation identity(std::size_t n);
  // Cycle notation, e.g. "(135674)(2)" over single-digit labels or
  // "(1 3 5)(2 4)" with separators. Labels not mentioned are fixed.
  static Permutation from_cycles(std::size_t n, std::string_view cycles);

  std::size_t size() const { return images_.size(); }
  Vertex operator()(Vertex i) const;
  Permutation inverse() const;
  const std::vector<Vertex>& images() const { return images_; }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<Vertex> images_;
};

struct DegreeProfile {
  std::map<std::size_t, std::size_t> counts;  // degree k -> N_k
  std::size_t num_vertices = 0;

  std::size_t count(std::size_t k) const {
    auto it = counts.find(k);
    return it == counts.end() ? 0 : it->second;
  }
  bool operator==(const DegreeProfile&) const = default;
};

// Induced subgraph on 1..m. Throws RangeError unless 1 <= m <= n.
SimpleGraph restrict(const SimpleGraph& g, std::size_t m);
// First m edges. Throws RangeError when m > num_edges().
Multigraph restrict(const Multigraph& g, std::size_t m);

// Edge {i,j} of g becomes {sigma(i), sigma(j)}.
SimpleGraph relabel(const SimpleGraph& g, const Permutation& sigma);
// Pair at index k moves to index sigma(k).
Multigraph relabel_edges(const Multigraph& g, const Permutation& sigma);
// Block structure carried along: i and j share a block in the result iff
// sigma^-1(i) and sigma^-1(j) share one in b.
Partition relabel(const Partition& b, const Permutation& sigma);

// Collapse multiplicities; vertices renamed 1..v by first appearance.
SimpleGraph project(const Multigraph& g);

DegreeProfile degree_profile(const SimpleGraph& g);
// Degrees count multiplicity.
DegreeProfile degree_profile(const Multigraph& g);

// ---- small-graph coding -------------------------------------------------
//
// A graph on [n] with n <= 10 is coded as a bitmask over pairs in colex
// order: pair {i,j}, i < j, has bit (j-1)(j-2)/2 + (i-1). Restricting to [m]
// keeps exactly the low m(m-1)/2 bits, so marginals under restriction are a
// mask away.

inline constexpr std::size_t kMaxEnumerateVertices = 6;
inline constexpr std::size_t kMaxCodedVertices = 10;

constexpr std::size_t num_pairs(std::size_t n) { return n == 0 ? 0 : n * (n - 1) / 2; }
constexpr std::size_t pair_bit(Vertex i, Vertex j) {
  if (i > j) {
    Vertex t = i;
    i = j;
    j = t;
  }
  return static_cast<std::size_t>(j - 1) * (j - 2) / 2 + (i - 1);
}

using GraphCode = std::uint64_t;

GraphCode graph_code(const SimpleGraph& g);
SimpleGraph graph_from_code(std::size_t n, GraphCode code);

// All labelled simple graphs on [n] in code order. Throws CapacityError for
// n > 6.
std::vector<SimpleGraph> enumerate_graphs(std::size_t n);

}  // namespace netlab
