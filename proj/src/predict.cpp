#include "netlab/predict.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "netlab/errors.hpp"
#include "netlab/sampling.hpp"

namespace netlab {
namespace {

// (mechanism probability, revealed edge encoding, population vertex of each
// label; index 0 unused, 0 means unassigned).
using OutcomeFn =
    std::function<void(double, const std::vector<Edge>&, const std::vector<Vertex>&)>;

std::size_t sample_size(const PredictiveQuery& q) {
  if (q.mechanism == PredictMechanism::edge) {
    return q.sample_size == 0 ? q.observed.size() : q.sample_size;
  }
  return q.sample_size == 0 ? q.n_pop : q.sample_size;
}

Vertex max_label(const PredictiveQuery& q) {
  switch (q.mechanism) {
    case PredictMechanism::vertex:
    case PredictMechanism::snowball_chain:
      return static_cast<Vertex>(sample_size(q));
    case PredictMechanism::thin:
      return static_cast<Vertex>(q.n_pop);
    case PredictMechanism::edge: {
      Vertex m = 0;
      for (const Edge& e : q.observed) m = std::max(m, e.v);
      return m;
    }
  }
  return 0;
}

bool event_matches(const PredictiveQuery& q, const std::vector<Edge>& revealed) {
  if (q.mechanism == PredictMechanism::vertex) {
    return std::all_of(q.observed.begin(), q.observed.end(), [&](const Edge& e) {
      return std::binary_search(revealed.begin(), revealed.end(), e);
    });
  }
  if (q.mechanism == PredictMechanism::thin) {
    std::vector<Edge> want = q.observed;
    std::sort(want.begin(), want.end());
    return want == revealed;
  }
  return revealed == q.observed;
}

void enumerate_vertex(const SimpleGraph& g, std::size_t n, const OutcomeFn& out) {
  const std::size_t pop = g.num_vertices();
  double weight = 1.0;
  for (std::size_t k = 0; k < n; ++k) weight /= static_cast<double>(pop - k);
  std::vector<Vertex> pop_of(n + 1, 0);
  std::vector<bool> used(pop + 1, false);
  std::function<void(std::size_t)> rec = [&](std::size_t label) {
    if (label > n) {
      std::vector<Edge> edges;
      for (Vertex a = 1; a <= n; ++a) {
        for (Vertex b = a + 1; b <= n; ++b) {
          if (g.has_edge(pop_of[a], pop_of[b])) edges.emplace_back(a, b);
        }
      }
      std::sort(edges.begin(), edges.end());
      out(weight, edges, pop_of);
      return;
    }
    for (Vertex v = 1; v <= pop; ++v) {
      if (used[v]) continue;
      used[v] = true;
      pop_of[label] = v;
      rec(label + 1);
      used[v] = false;
    }
    pop_of[label] = 0;
  };
  rec(1);
}

void enumerate_edge(const SimpleGraph& g, std::size_t k, const OutcomeFn& out) {
  if (g.num_edges() == 0) return;
  const double pick = 1.0 / static_cast<double>(g.num_edges());
  std::vector<Vertex> label_of(g.num_vertices() + 1, 0);
  std::vector<Vertex> pop_of(2 * k + 1, 0);
  std::vector<Edge> seq;
  std::function<void(std::size_t, Vertex, double)> rec = [&](std::size_t draw, Vertex next,
                                                              double prob) {
    if (draw == k) {
      out(prob, seq, pop_of);
      return;
    }
    for (const Edge& e : g.edges()) {
      const bool new_u = label_of[e.u] == 0;
      const bool new_v = label_of[e.v] == 0;
      auto visit = [&](std::vector<Vertex> fresh, double p) {
        Vertex label = next;
        for (Vertex v : fresh) {
          label_of[v] = label;
          pop_of[label] = v;
          ++label;
        }
        seq.emplace_back(label_of[e.u], label_of[e.v]);
        rec(draw + 1, label, p);
        seq.pop_back();
        for (Vertex v : fresh) {
          pop_of[label_of[v]] = 0;
          label_of[v] = 0;
        }
      };
      if (new_u && new_v) {
        visit({e.u, e.v}, prob * pick * 0.5);
        visit({e.v, e.u}, prob * pick * 0.5);
      } else if (new_u) {
        visit({e.u}, prob * pick);
      } else if (new_v) {
        visit({e.v}, prob * pick);
      } else {
        visit({}, prob * pick);
      }
    }
  };
  rec(0, 1, 1.0);
}

void enumerate_snowball_chain(const SimpleGraph& g, std::size_t n, const OutcomeFn& out) {
  const std::size_t pop = g.num_vertices();
  std::vector<bool> taken(pop + 1, false);
  std::vector<Vertex> pop_of(n + 1, 0);
  std::vector<Edge> traversed;
  std::function<void(std::size_t, double)> rec = [&](std::size_t t, double prob) {
    if (t == n) {
      out(prob, traversed, pop_of);
      return;
    }
    std::vector<Vertex> options;
    if (t > 0) {
      for (Vertex w : g.neighbors(pop_of[t])) {
        if (!taken[w]) options.push_back(w);
      }
    }
    const bool via_edge = !options.empty();
    if (!via_edge) {
      for (Vertex v = 1; v <= pop; ++v) {
        if (!taken[v]) options.push_back(v);
      }
    }
    const double each = prob / static_cast<double>(options.size());
    for (Vertex v : options) {
      taken[v] = true;
      pop_of[t + 1] = v;
      if (via_edge) traversed.emplace_back(static_cast<Vertex>(t), static_cast<Vertex>(t + 1));
      rec(t + 1, each);
      if (via_edge) traversed.pop_back();
      pop_of[t + 1] = 0;
      taken[v] = false;
    }
  };
  rec(0, 1.0);
}

void enumerate_thin(const SimpleGraph& g, double rho, const OutcomeFn& out) {
  const double keep = 1.0 / rho;
  const auto& edges = g.edges();
  std::vector<Vertex> pop_of(g.num_vertices() + 1);
  for (Vertex v = 0; v <= g.num_vertices(); ++v) pop_of[v] = v;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
    double prob = 1.0;
    std::vector<Edge> kept;
    for (std::size_t b = 0; b < edges.size(); ++b) {
      if (mask >> b & 1U) {
        prob *= keep;
        kept.push_back(edges[b]);
      } else {
        prob *= 1.0 - keep;
      }
    }
    if (prob > 0.0) out(prob, kept, pop_of);
  }
}

bool target_present(const SimpleGraph& g, const Edge& target, const std::vector<Vertex>& pop_of) {
  const Vertex a = target.u < pop_of.size() ? pop_of[target.u] : 0;
  const Vertex b = target.v < pop_of.size() ? pop_of[target.v] : 0;
  return a != 0 && b != 0 && g.has_edge(a, b);
}

}  // namespace

std::string_view to_string(PredictMechanism m) {
  switch (m) {
    case PredictMechanism::vertex: return "vertex";
    case PredictMechanism::edge: return "edge";
    case PredictMechanism::snowball_chain: return "snowball-chain";
    case PredictMechanism::thin: return "thin";
  }
  return "?";
}

PredictMechanism parse_predict_mechanism(std::string_view name) {
  if (name == "vertex") return PredictMechanism::vertex;
  if (name == "edge") return PredictMechanism::edge;
  if (name == "snowball-chain" || name == "snowball") return PredictMechanism::snowball_chain;
  if (name == "thin" || name == "thinned") return PredictMechanism::thin;
  throw ValidationError("unknown prediction mechanism '" + std::string(name) +
                        "' (expected vertex, edge, snowball-chain or thin)");
}

void validate(const PredictiveQuery& q) {
  if (q.n_pop < 2) throw ValidationError("population needs at least two vertices");
  validate(q.prior);
  if (q.target.u == q.target.v) throw ValidationError("target must join two distinct labels");
  if (std::find(q.observed.begin(), q.observed.end(), q.target) != q.observed.end()) {
    throw ValidationError("target is one of the observed edges");
  }
  const std::size_t size = sample_size(q);
  if (q.mechanism != PredictMechanism::edge && size > q.n_pop) {
    throw ValidationError("sample size exceeds the population");
  }
  if (q.mechanism == PredictMechanism::thin && !(q.rho >= 1.0)) {
    throw ValidationError("rho must be at least 1");
  }
  const Vertex top = max_label(q);
  for (const Edge& e : q.observed) {
    if (e.u < 1 || e.v > top) throw ValidationError("observed edge outside the label space");
  }
  if (q.target.u < 1 || q.target.v > top) {
    throw ValidationError("target outside the observation's label space");
  }
}

ExactPrediction predict_exact(const PredictiveQuery& q) {
  validate(q);
  const auto* er = std::get_if<ErSpec>(&q.prior);
  if (er == nullptr) throw UnsupportedError("the exact engine supports ER priors only");
  if (q.n_pop > kPredictExactMaxVertices) {
    throw CapacityError("exact prediction supports n_pop <= " +
                        std::to_string(kPredictExactMaxVertices));
  }

  // Mechanism mass of the event (and of event plus target) summed over
  // population graphs with e edges; the ER weight depends on e only.
  const std::size_t pairs = num_pairs(q.n_pop);
  std::vector<double> event_by_e(pairs + 1, 0.0), joint_by_e(pairs + 1, 0.0);
  const std::size_t size = sample_size(q);
  for (const SimpleGraph& g : enumerate_graphs(q.n_pop)) {
    const std::size_t e = g.num_edges();
    const OutcomeFn collect = [&](double prob, const std::vector<Edge>& revealed,
                                  const std::vector<Vertex>& pop_of) {
      if (!event_matches(q, revealed)) return;
      event_by_e[e] += prob;
      if (target_present(g, q.target, pop_of)) joint_by_e[e] += prob;
    };
    switch (q.mechanism) {
      case PredictMechanism::vertex: enumerate_vertex(g, size, collect); break;
      case PredictMechanism::edge: enumerate_edge(g, size, collect); break;
      case PredictMechanism::snowball_chain: enumerate_snowball_chain(g, size, collect); break;
      case PredictMechanism::thin: enumerate_thin(g, q.rho, collect); break;
    }
  }

  const double p = er->p;
  ExactPrediction r;
  for (std::size_t e = 0; e <= pairs; ++e) {
    const double w = std::pow(p, static_cast<double>(e)) *
                     std::pow(1.0 - p, static_cast<double>(pairs - e));
    r.event_probability += w * event_by_e[e];
    r.joint_probability += w * joint_by_e[e];
  }
  if (r.event_probability > 0.0) {
    r.probability = std::min(1.0, r.joint_probability / r.event_probability);
    return r;
  }

  // Null event at a boundary p: the conditional is a ratio of polynomials in
  // p, so its one-sided limit is the ratio of the lowest-order terms.
  const auto first = [&](auto begin, auto end) {
    return std::find_if(begin, end, [](double m) { return m > 0.0; });
  };
  if (p == 0.0) {
    const auto it = first(event_by_e.begin(), event_by_e.end());
    if (it != event_by_e.end()) {
      const auto e = static_cast<std::size_t>(it - event_by_e.begin());
      r.probability = joint_by_e[e] / event_by_e[e];
      r.boundary_limit = true;
      return r;
    }
  } else if (p == 1.0) {
    const auto it = first(event_by_e.rbegin(), event_by_e.rend());
    if (it != event_by_e.rend()) {
      const std::size_t e = pairs - static_cast<std::size_t>(it - event_by_e.rbegin());
      r.probability = joint_by_e[e] / event_by_e[e];
      r.boundary_limit = true;
      return r;
    }
  }
  throw ConditioningError("the observation event has probability zero under mechanism '" +
                          std::string(to_string(q.mechanism)) + "'");
}

McPrediction predict_mc(const PredictiveQuery& q, std::size_t reps, Seed seed, unsigned threads) {
  validate(q);
  const std::size_t size = sample_size(q);

  struct Counts {
    std::size_t hits = 0;
    std::size_t target = 0;
  };
  auto run_range = [&](std::size_t lo, std::size_t hi) {
    Counts c;
    for (std::size_t r = lo; r < hi; ++r) {
      const Seed pop_seed = replicate_seed(seed, 2 * r);
      const Seed mech_seed = replicate_seed(seed, 2 * r + 1);
      const AnyGraph drawn = generate(q.prior, q.n_pop, pop_seed);
      const auto* g = std::get_if<SimpleGraph>(&drawn);
      if (g == nullptr) throw UnsupportedError("prior must generate vertex-labelled graphs");
      if (g->num_vertices() != q.n_pop) {
        throw ValidationError("prior generated a graph of the wrong size");
      }

      std::vector<Edge> revealed;
      std::vector<Vertex> pop_of;
      auto pop_from_labels = [&](const Observation& obs) {
        pop_of.assign(obs.label_map.size() + 1, 0);
        for (const auto& [pop_id, label] : obs.label_map) pop_of[label] = static_cast<Vertex>(pop_id);
      };
      switch (q.mechanism) {
        case PredictMechanism::vertex: {
          Observation obs = vertex_sample(*g, size, mech_seed);
          revealed = std::move(obs.edge_sequence);
          pop_from_labels(obs);
          break;
        }
        case PredictMechanism::edge: {
          if (g->num_edges() == 0) continue;
          Observation obs = edge_sample(*g, size, mech_seed);
          revealed = std::move(obs.edge_sequence);
          pop_from_labels(obs);
          break;
        }
        case PredictMechanism::snowball_chain: {
          Observation obs = snowball_chain(*g, size, mech_seed);
          revealed = std::move(obs.edge_sequence);
          pop_from_labels(obs);
          break;
        }
        case PredictMechanism::thin: {
          revealed = thin(*g, q.rho, mech_seed).edges();
          pop_of.resize(q.n_pop + 1);
          for (Vertex v = 0; v <= q.n_pop; ++v) pop_of[v] = v;
          break;
        }
      }
      if (!event_matches(q, revealed)) continue;
      ++c.hits;
      if (target_present(*g, q.target, pop_of)) ++c.target;
    }
    return c;
  };

  unsigned workers = threads != 0 ? threads : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(reps / 1000, 1)));
  std::vector<Counts> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = reps * w / workers;
    const std::size_t hi = reps * (w + 1) / workers;
    pool.emplace_back([&, w, lo, hi] {
      try {
        parts[w] = run_range(lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  McPrediction r;
  r.reps = reps;
  for (const Counts& c : parts) {
    r.hits += c.hits;
    r.target_hits += c.target;
  }
  if (r.hits < kPredictMinHits) {
    r.abstained = true;
    r.probability = NAN;
    r.standard_error = NAN;
    return r;
  }
  const double h = static_cast<double>(r.hits);
  r.probability = static_cast<double>(r.target_hits) / h;
  r.standard_error = std::sqrt(r.probability * (1.0 - r.probability) / h);
  return r;
}

}  // namespace netlab
