#include "netlab/sampling.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "netlab/errors.hpp"

namespace netlab {
namespace {

std::string describe(const std::string& id, std::size_t size, Seed seed) {
  std::ostringstream os;
  os << id << " n=" << size << " seed=" << seed;
  return os.str();
}

void require_size(std::size_t n, std::size_t available, const char* what) {
  if (n > available) {
    throw RangeError(std::string(what) + " " + std::to_string(n) + " exceeds population size " +
                     std::to_string(available));
  }
}

// Induced subgraph on `order`, where order[k] receives label k+1.
Observation induced(const SimpleGraph& g, const std::vector<Vertex>& order) {
  Observation obs;
  std::vector<Vertex> label_of(g.num_vertices() + 1, 0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    label_of[order[k]] = static_cast<Vertex>(k + 1);
    obs.label_map[order[k]] = static_cast<Vertex>(k + 1);
    obs.provenance.push_back(order[k]);
  }
  std::vector<Edge> edges;
  for (Vertex v : order) {
    for (Vertex w : g.neighbors(v)) {
      if (w > v && label_of[w] != 0) edges.emplace_back(label_of[v], label_of[w]);
    }
  }
  SimpleGraph sub(order.size(), std::move(edges));
  obs.edge_sequence = sub.edges();
  obs.graph = std::move(sub);
  return obs;
}

}  // namespace

Observation canonical(const SimpleGraph& g, std::size_t n) {
  SimpleGraph sub = restrict(g, n);
  Observation obs;
  for (Vertex v = 1; v <= n; ++v) {
    obs.provenance.push_back(v);
    obs.label_map[v] = v;
  }
  obs.edge_sequence = sub.edges();
  obs.graph = std::move(sub);
  obs.mechanism = "canonical n=" + std::to_string(n);
  return obs;
}

Observation canonical(const Multigraph& g, std::size_t n) {
  Multigraph sub = restrict(g, n);
  Observation obs;
  for (std::size_t k = 1; k <= n; ++k) {
    obs.provenance.push_back(k);
    obs.label_map[k] = static_cast<Vertex>(k);
  }
  obs.graph = std::move(sub);
  obs.mechanism = "canonical m=" + std::to_string(n);
  return obs;
}

Observation vertex_sample(const SimpleGraph& g, std::size_t n, Seed seed) {
  require_size(n, g.num_vertices(), "sample size");
  Rng rng(seed, stream_id("vertex_sample"));
  std::vector<Vertex> pool(g.num_vertices());
  std::iota(pool.begin(), pool.end(), Vertex{1});
  // Partial Fisher-Yates: pool[0..n) is a uniform ordered selection.
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t pick = k + rng.below(pool.size() - k);
    std::swap(pool[k], pool[pick]);
  }
  pool.resize(n);
  Observation obs = induced(g, pool);
  obs.mechanism = describe("vertex", n, seed);
  return obs;
}

Observation edge_sample(const SimpleGraph& g, std::size_t k, Seed seed) {
  if (g.num_edges() == 0) throw PreconditionError("edge sampling needs at least one edge");
  Rng rng(seed, stream_id("edge_sample"));
  Observation obs;
  Vertex next_label = 1;
  auto discover = [&](Vertex v) {
    if (obs.label_map.emplace(v, next_label).second) {
      obs.provenance.push_back(v);
      ++next_label;
    }
  };
  for (std::size_t draw = 0; draw < k; ++draw) {
    const Edge& e = g.edges()[rng.below(g.num_edges())];
    const bool seen_u = obs.label_map.count(e.u) != 0;
    const bool seen_v = obs.label_map.count(e.v) != 0;
    if (!seen_u && !seen_v) {
      // Two endpoints seen for the first time: uniform order.
      if (rng.bernoulli(0.5)) {
        discover(e.u);
        discover(e.v);
      } else {
        discover(e.v);
        discover(e.u);
      }
    } else {
      discover(e.u);
      discover(e.v);
    }
    obs.edge_sequence.emplace_back(obs.label_map.at(e.u), obs.label_map.at(e.v));
  }
  obs.graph = SimpleGraph(next_label - 1, obs.edge_sequence);
  std::ostringstream os;
  os << "edge k=" << k << " seed=" << seed;
  obs.mechanism = os.str();
  return obs;
}

Observation snowball_full(const SimpleGraph& g, std::size_t quota, Seed seed,
                          std::optional<Vertex> start) {
  require_size(quota, g.num_vertices(), "quota");
  if (start && (*start < 1 || *start > g.num_vertices())) {
    throw RangeError("start vertex outside the population");
  }
  Rng rng(seed, stream_id("snowball_full"));
  std::vector<bool> taken(g.num_vertices() + 1, false);
  std::vector<Vertex> order;

  auto uniform_unsampled = [&]() {
    std::vector<Vertex> rest;
    for (Vertex v = 1; v <= g.num_vertices(); ++v) {
      if (!taken[v]) rest.push_back(v);
    }
    return rest[rng.below(rest.size())];
  };

  std::vector<Vertex> frontier;
  while (order.size() < quota) {
    if (frontier.empty()) {
      const Vertex seed_vertex = (order.empty() && start) ? *start : uniform_unsampled();
      taken[seed_vertex] = true;
      order.push_back(seed_vertex);
      frontier = {seed_vertex};
      continue;
    }
    std::vector<Vertex> next;
    for (Vertex v : frontier) {
      for (Vertex w : g.neighbors(v)) {
        if (!taken[w]) {
          taken[w] = true;
          next.push_back(w);
        }
      }
    }
    std::sort(next.begin(), next.end());
    const std::size_t room = quota - order.size();
    if (next.size() > room) {
      // Uniform subset of the overflowing frontier, kept in id order.
      for (std::size_t k = 0; k < room; ++k) {
        std::swap(next[k], next[k + rng.below(next.size() - k)]);
      }
      for (std::size_t k = room; k < next.size(); ++k) taken[next[k]] = false;
      next.resize(room);
      std::sort(next.begin(), next.end());
    }
    order.insert(order.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  Observation obs = induced(g, order);
  obs.mechanism = describe("snowball-full", quota, seed);
  return obs;
}

Observation snowball_chain(const SimpleGraph& g, std::size_t n, Seed seed) {
  require_size(n, g.num_vertices(), "sample size");
  Rng rng(seed, stream_id("snowball_chain"));
  std::vector<bool> taken(g.num_vertices() + 1, false);
  std::vector<Vertex> order;
  std::vector<Edge> traversed;
  std::size_t fallbacks = 0;

  for (std::size_t t = 0; t < n; ++t) {
    std::vector<Vertex> options;
    bool via_edge = false;
    if (!order.empty()) {
      for (Vertex w : g.neighbors(order.back())) {
        if (!taken[w]) options.push_back(w);
      }
      via_edge = !options.empty();
    }
    if (options.empty()) {
      for (Vertex v = 1; v <= g.num_vertices(); ++v) {
        if (!taken[v]) options.push_back(v);
      }
      if (!order.empty()) ++fallbacks;
    }
    const Vertex chosen = options[rng.below(options.size())];
    taken[chosen] = true;
    order.push_back(chosen);
    if (via_edge) {
      traversed.emplace_back(static_cast<Vertex>(order.size() - 1),
                             static_cast<Vertex>(order.size()));
    }
  }
  Observation obs = induced(g, order);
  obs.edge_sequence = std::move(traversed);
  obs.fallbacks = fallbacks;
  obs.mechanism = describe("snowball-chain", n, seed);
  return obs;
}

SimpleGraph thin(const SimpleGraph& g, double rho, Seed seed) {
  if (!(rho >= 1.0)) throw ValidationError("thinning needs rho >= 1");
  const double keep = 1.0 / rho;
  constexpr auto stream = stream_id("thin");
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (keyed_uniform(seed, stream, e.u, e.v) < keep) kept.push_back(e);
  }
  return SimpleGraph(g.num_vertices(), std::move(kept));
}

std::vector<Vertex> shortest_path(const SimpleGraph& g, Vertex s, Vertex t) {
  const std::size_t n = g.num_vertices();
  if (s < 1 || t < 1 || s > n || t > n) throw RangeError("path endpoint outside the graph");
  // Distances to t; walking greedily from s through the smallest neighbour
  // one step closer yields the lexicographically smallest shortest path.
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(n + 1, kUnseen);
  std::deque<Vertex> queue{t};
  dist[t] = 0;
  while (!queue.empty() && dist[s] == kUnseen) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] == kUnseen) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  if (dist[s] == kUnseen) return {};
  std::vector<Vertex> path{s};
  Vertex at = s;
  while (at != t) {
    for (Vertex w : g.neighbors(at)) {
      if (dist[w] + 1 == dist[at]) {
        at = w;
        break;
      }
    }
    path.push_back(at);
  }
  return path;
}

PathObservation path_sample(const SimpleGraph& g, std::size_t k, Seed seed) {
  PathObservation out;
  if (k == 0) return out;
  if (g.num_vertices() < 2) throw PreconditionError("path sampling needs two vertices");
  Rng rng(seed, stream_id("path_sample"));
  for (std::size_t r = 0; r < k; ++r) {
    const Vertex s = static_cast<Vertex>(rng.below(g.num_vertices()) + 1);
    Vertex t = static_cast<Vertex>(rng.below(g.num_vertices() - 1) + 1);
    if (t >= s) ++t;
    out.requests.emplace_back(s, t);
    auto path = shortest_path(g, s, t);
    if (path.empty()) {
      ++out.unreachable;
    } else {
      out.paths.push_back(std::move(path));
    }
  }
  return out;
}

Observation to_observation(const PathObservation& paths) {
  Observation obs;
  Vertex next_label = 1;
  for (const auto& path : paths.paths) {
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (obs.label_map.emplace(path[i], next_label).second) {
        obs.provenance.push_back(path[i]);
        ++next_label;
      }
      if (i > 0) {
        obs.edge_sequence.emplace_back(obs.label_map.at(path[i - 1]), obs.label_map.at(path[i]));
      }
    }
  }
  obs.graph = SimpleGraph(next_label - 1, obs.edge_sequence);
  obs.edge_sequence = std::get<SimpleGraph>(obs.graph).edges();
  obs.mechanism = "path k=" + std::to_string(paths.requests.size());
  return obs;
}

Observation universal_sample(const GraphLaw& mu, double p, Seed seed) {
  const std::size_t n = mu.num_vertices();
  if (n < 1 || n > kUniversalMaxVertices) {
    throw ValidationError("universal embedding supports 1 <= n <= " +
                          std::to_string(kUniversalMaxVertices));
  }
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("population edge probability must lie in (0,1)");

  std::vector<GraphLaw> marginals;
  marginals.reserve(n);
  for (std::size_t m = 1; m <= n; ++m) marginals.push_back(mu.marginal(m));

  constexpr auto population_stream = stream_id("universal_population");
  auto population_edge = [&](std::uint64_t a, std::uint64_t b) {
    if (a > b) std::swap(a, b);
    return keyed_uniform(seed, population_stream, a, b) < p;
  };

  Rng rng(seed, stream_id("universal_extension"));
  std::vector<std::uint64_t> chosen{1};
  GraphCode current = 0;
  for (std::size_t m = 1; m < n; ++m) {
    const GraphLaw& next_law = marginals[m];
    // Extensions F of the current graph: codes on [m+1] whose low bits equal
    // `current`; the high m bits say which of labels 1..m join label m+1.
    // Their weights sum to the marginal mass of `current`.
    const std::size_t low_bits = num_pairs(m);
    std::vector<GraphCode> extensions;
    std::vector<double> weights;
    double mass = 0.0;
    for (GraphCode ext = 0; ext < (GraphCode{1} << m); ++ext) {
      const GraphCode code = current | (ext << low_bits);
      if (next_law[code] > 0.0) {
        extensions.push_back(code);
        weights.push_back(next_law[code]);
        mass += next_law[code];
      }
    }
    double u = rng.uniform() * mass;
    GraphCode target = extensions.back();
    for (std::size_t e = 0; e < extensions.size(); ++e) {
      if (u < weights[e]) {
        target = extensions[e];
        break;
      }
      u -= weights[e];
    }

    std::uint64_t candidate = chosen.back();
    std::uint64_t scanned = 0;
    for (;;) {
      ++candidate;
      if (++scanned > kUniversalScanCap) {
        throw ResourceError("universal embedding exceeded the scan cap at stage " +
                            std::to_string(m + 1));
      }
      bool match = true;
      for (std::size_t l = 0; l < m && match; ++l) {
        const bool want = (target >> pair_bit(static_cast<Vertex>(l + 1),
                                                static_cast<Vertex>(m + 1))) & 1U;
        match = population_edge(chosen[l], candidate) == want;
      }
      if (match) break;
    }
    chosen.push_back(candidate);
    current = target;
  }

  Observation obs;
  obs.graph = graph_from_code(n, current);
  obs.provenance = chosen;
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    obs.label_map[chosen[k]] = static_cast<Vertex>(k + 1);
  }
  obs.edge_sequence = std::get<SimpleGraph>(obs.graph).edges();
  std::ostringstream os;
  os << "universal n=" << n << " p=" << p << " seed=" << seed;
  obs.mechanism = os.str();
  return obs;
}

SimpleGraph universal_embed(const GraphLaw& mu, double p, Seed seed) {
  return std::get<SimpleGraph>(universal_sample(mu, p, seed).graph);
}

}  // namespace netlab
