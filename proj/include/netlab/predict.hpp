#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "netlab/generators.hpp"
#include "netlab/graph.hpp"
#include "netlab/rng.hpp"

namespace netlab {

enum class PredictMechanism { vertex, edge, snowball_chain, thin };

std::string_view to_string(PredictMechanism m);
// "vertex", "edge", "snowball-chain", "thin"; ValidationError otherwise.
PredictMechanism parse_predict_mechanism(std::string_view name);

// How an observation event is matched:
//   vertex          the labelled induced sample contains every observed edge
//   edge            the labelled draw sequence equals `observed` exactly
//   snowball-chain  the traversed edges (t, t+1) equal `observed` exactly
//   thin            the thinned graph on population labels equals `observed`
//                   exactly, so unlisted pairs are observed non-edges
struct PredictiveQuery {
  std::size_t n_pop = 3;
  ModelSpec prior = ErSpec{0.5};
  PredictMechanism mechanism = PredictMechanism::vertex;
  // Vertices sampled for vertex and snowball-chain (0 means n_pop); number of
  // draws for edge (0 means observed.size()).
  std::size_t sample_size = 0;
  double rho = 3.0;
  std::vector<Edge> observed{{1, 2}, {2, 3}};
  Edge target{1, 3};
};

// Throws ValidationError when the target is an observed edge or a label lies
// outside the observation's label space.
void validate(const PredictiveQuery& q);

struct ExactPrediction {
  double probability = 0.0;
  // P(observation event) and P(event and target edge present).
  double event_probability = 0.0;
  double joint_probability = 0.0;
  // The event is null at this p (p = 0 or 1); probability is the limit of
  // the conditional as p approaches it from inside (0, 1).
  bool boundary_limit = false;
};

// P(target edge in the population | observation event), by enumerating every
// population graph on [n_pop] and every outcome of the mechanism's
// randomness. Requires an ER prior and n_pop <= 4 (UnsupportedError /
// CapacityError otherwise). Throws ConditioningError when the event has
// probability zero for every p.
inline constexpr std::size_t kPredictExactMaxVertices = 4;
ExactPrediction predict_exact(const PredictiveQuery& q);

struct McPrediction {
  bool abstained = false;
  double probability = 0.0;
  double standard_error = 0.0;
  std::size_t hits = 0;
  std::size_t target_hits = 0;
  std::size_t reps = 0;
};

// Rejection sampling with the sampling module's mechanisms. Replicates are
// seeded independently of how they are split across threads. Abstains
// (probability NaN) when fewer than kPredictMinHits runs match the event.
inline constexpr std::size_t kPredictMinHits = 100;
McPrediction predict_mc(const PredictiveQuery& q, std::size_t reps, Seed seed,
                        unsigned threads = 0);

}  // namespace netlab
