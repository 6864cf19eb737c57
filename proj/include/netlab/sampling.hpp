#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netlab/exact_law.hpp"
#include "netlab/graph.hpp"
#include "netlab/io.hpp"
#include "netlab/rng.hpp"

namespace netlab {

// Sampled subnetwork plus how it was obtained.
struct Observation {
  AnyGraph graph;
  // Mechanism id followed by its parameters, e.g. "vertex n=3".
  std::string mechanism;
  // Population unit ids in the order they were sampled: vertex ids for the
  // vertex-labelled mechanisms, edge ids for canonical multigraph sampling.
  std::vector<std::uint64_t> provenance;
  // Population id -> observed label; injective.
  std::map<std::uint64_t, Vertex> label_map;
  // The labelled edges as the mechanism reveals them, in order: draws for
  // edge sampling (repeats kept), traversals for snowball-chain, the sorted
  // edge set otherwise.
  std::vector<Edge> edge_sequence;
  // Snowball-chain steps that found no unsampled neighbour.
  std::size_t fallbacks = 0;
};

struct PathObservation {
  // Requested ordered (source, target) pairs.
  std::vector<std::pair<Vertex, Vertex>> requests;
  // One shortest path per reachable request, as population vertex ids.
  std::vector<std::vector<Vertex>> paths;
  std::size_t unreachable = 0;
};

// Restriction to units 1..n (vertices, or edges of a multigraph). Throws
// RangeError when n exceeds the population.
Observation canonical(const SimpleGraph& g, std::size_t n);
Observation canonical(const Multigraph& g, std::size_t n);

// n vertices uniformly without replacement, labelled by a uniform bijection
// onto 1..n; observed graph is the induced subgraph.
Observation vertex_sample(const SimpleGraph& g, std::size_t n, Seed seed);

// k edges uniformly with replacement. The first edge's endpoints get labels
// {1,2} in uniform order; later vertices take the next label when first seen
// (two new endpoints at once are ordered uniformly). Throws PreconditionError
// when g has no edges.
Observation edge_sample(const SimpleGraph& g, std::size_t k, Seed seed);

// Uniform start vertex (or `start`), then whole neighbourhood frontiers until
// the next frontier would overflow the quota; a uniform subset of that
// frontier fills it exactly. Exhausted components restart from a uniform
// unsampled vertex. Labels follow discovery order, ties by population id.
Observation snowball_full(const SimpleGraph& g, std::size_t quota, Seed seed,
                          std::optional<Vertex> start = std::nullopt);

// v1 uniform; v_{t+1} uniform among unsampled neighbours of v_t, else uniform
// among all unsampled vertices. Labels 1..n in chain order.
Observation snowball_chain(const SimpleGraph& g, std::size_t n, Seed seed);

// Keeps each edge independently with probability 1/rho; vertex set
// unchanged. Throws ValidationError for rho < 1.
SimpleGraph thin(const SimpleGraph& g, double rho, Seed seed);

// k ordered pairs of distinct vertices, uniform; each contributes the
// lexicographically smallest shortest path, or nothing when unreachable.
PathObservation path_sample(const SimpleGraph& g, std::size_t k, Seed seed);
// Union of the sampled paths, labels in order of first appearance.
Observation to_observation(const PathObservation& paths);

// Lexicographically smallest shortest path from s to t, empty if none.
std::vector<Vertex> shortest_path(const SimpleGraph& g, Vertex s, Vertex t);

// Sequential embedding into a lazily realised ER(p) population: stage m+1
// draws the target extension from the subsampled marginal of mu conditioned
// on the current graph, then takes the smallest later population vertex
// realising it. The returned graph has law mu exactly. n = mu's size <= 5,
// 0 < p < 1. Throws ResourceError if a stage scans more than
// kUniversalScanCap candidates.
inline constexpr std::uint64_t kUniversalScanCap = 1'000'000;
inline constexpr std::size_t kUniversalMaxVertices = 5;

Observation universal_sample(const GraphLaw& mu, double p, Seed seed);
SimpleGraph universal_embed(const GraphLaw& mu, double p, Seed seed);

}  // namespace netlab
