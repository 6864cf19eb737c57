#include "netlab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "netlab/acceptance.hpp"
#include "netlab/errors.hpp"
#include "netlab/exact_law.hpp"
#include "netlab/generators.hpp"
#include "netlab/inference.hpp"
#include "netlab/io.hpp"
#include "netlab/predict.hpp"
#include "netlab/sampling.hpp"
#include "netlab/statistics.hpp"

namespace netlab::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fixed6(double x) {
  if (std::isnan(x)) return "nan";
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << x;
  return os.str();
}

// Key-value report: "key=value" lines in porcelain mode, "key: value"
// otherwise, with the resolved configuration echoed first.
class Report {
 public:
  Report(std::ostream& out, bool porcelain) : out_(out), porcelain_(porcelain) {}

  void config(const std::vector<std::pair<std::string, std::string>>& items) {
    if (porcelain_) {
      for (const auto& [k, v] : items) out_ << k << '=' << v << '\n';
      return;
    }
    out_ << "# config:";
    for (const auto& [k, v] : items) {
      const bool quote = v.find(' ') != std::string::npos;
      out_ << ' ' << k << '=' << (quote ? "\"" : "") << v << (quote ? "\"" : "");
    }
    out_ << '\n';
  }

  void kv(const std::string& key, const std::string& value) {
    out_ << key << (porcelain_ ? "=" : ": ") << value << '\n';
  }
  void kv(const std::string& key, double value) { kv(key, fixed6(value)); }
  void kv(const std::string& key, std::size_t value) { kv(key, std::to_string(value)); }
  void kv(const std::string& key, bool value) { kv(key, std::string(value ? "true" : "false")); }

  bool porcelain() const { return porcelain_; }
  std::ostream& stream() { return out_; }

 private:
  std::ostream& out_;
  bool porcelain_;
};

Seed resolve_seed(Seed flag) {
  const char* env = std::getenv("NETLAB_SEED");
  if (env == nullptr || *env == '\0') return flag;
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(env, &used, 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || env[used] != '\0') {
    throw UsageError(std::string("NETLAB_SEED is not an unsigned integer: '") + env + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) parts.push_back(cur.substr(b, e - b + 1));
  }
  return parts;
}

Edge parse_pair(const std::string& text) {
  const auto dash = text.find('-');
  if (dash == std::string::npos) throw UsageError("expected a pair like 1-3, got '" + text + "'");
  try {
    std::size_t a_used = 0, b_used = 0;
    const std::string a = text.substr(0, dash), b = text.substr(dash + 1);
    const unsigned long u = std::stoul(a, &a_used);
    const unsigned long v = std::stoul(b, &b_used);
    if (a_used != a.size() || b_used != b.size()) throw std::invalid_argument("trailing");
    if (u == v) throw UsageError("pair '" + text + "' repeats a label");
    return Edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  } catch (const std::logic_error&) {
    throw UsageError("expected a pair like 1-3, got '" + text + "'");
  }
}

std::vector<Edge> parse_edges(const std::string& text) {
  std::vector<Edge> edges;
  for (const std::string& item : split(text, ',')) edges.push_back(parse_pair(item));
  return edges;
}

Partition parse_blocks(const std::string& text) {
  std::vector<std::int64_t> labels;
  for (const std::string& item : split(text, ',')) {
    try {
      std::size_t used = 0;
      labels.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw UsageError("block labels must be integers, got '" + item + "'");
    }
  }
  return Partition(labels);
}

std::string join_edges(const std::vector<Edge>& edges) {
  std::string s;
  for (const Edge& e : edges) {
    if (!s.empty()) s += ',';
    s += std::to_string(e.u) + "-" + std::to_string(e.v);
  }
  return s;
}

template <class T>
std::string join(const std::vector<T>& xs, const char* sep = " ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? sep : "") << xs[i];
  return os.str();
}

const SimpleGraph& require_simple(const AnyGraph& g, const std::string& what) {
  if (const auto* s = std::get_if<SimpleGraph>(&g)) return *s;
  throw UnsupportedError(what + " needs a simple (vertex-labelled) graph");
}

// Writes the graph (plus trailer lines) to `path`, or to the report stream
// when no path is given.
void emit_graph(Report& rep, const std::string& path, const AnyGraph& g,
                const std::vector<std::string>& trailer) {
  auto write = [&](std::ostream& os) {
    write_graph(os, g);
    for (const std::string& line : trailer) os << "# " << line << '\n';
  };
  if (path.empty()) {
    write(rep.stream());
    return;
  }
  std::ofstream file(path);
  if (!file) throw FormatError("cannot write '" + path + "'");
  write(file);
  if (!file) throw FormatError("failed writing '" + path + "'");
}

std::size_t vertex_count(const AnyGraph& g) {
  return std::visit([](const auto& x) { return x.num_vertices(); }, g);
}
std::size_t edge_count(const AnyGraph& g) {
  return std::visit([](const auto& x) { return x.num_edges(); }, g);
}

struct Options {
  bool porcelain = false;
  Seed seed = 0;

  std::string model;
  std::optional<std::size_t> n;
  std::string out_path;

  std::string mechanism;
  std::size_t size = 0;
  std::string in_path;
  std::optional<double> rho;
  std::optional<double> p;
  std::string mu_path;
  std::optional<Vertex> start;

  bool power_law = false;
  std::size_t k_min = 2;
  bool trace = false;
  std::string sizes;
  bool degrees = false;

  std::string estimator;
  std::string f = "identity";
  std::string blocks;

  bool exact = false;
  bool mc = false;
  std::size_t reps = 1'000'000;
  std::string observed = "1-2,2-3";
  std::string target = "1-3";
  std::size_t n_pop = 3;
  unsigned threads = 0;

  std::string suite;
};

int cmd_generate(const Options& o, Report& rep) {
  if (rep.porcelain() && o.out_path.empty()) throw UsageError("--porcelain needs --out");
  const ParsedModel pm = parse_model_spec(o.model);
  const std::optional<std::size_t> size = o.n ? o.n : pm.size;
  const AnyGraph g = generate(pm.spec, size, o.seed);
  rep.config({{"subcommand", "generate"},
              {"model", format_model_spec(pm.spec, size)},
              {"seed", std::to_string(o.seed)},
              {"out", o.out_path.empty() ? "-" : o.out_path}});
  emit_graph(rep, o.out_path, g, {});
  if (!o.out_path.empty()) {
    rep.kv("vertices", vertex_count(g));
    rep.kv("edges", edge_count(g));
  }
  return kExitOk;
}

int cmd_sample(const Options& o, Report& rep) {
  if (rep.porcelain() && o.out_path.empty()) throw UsageError("--porcelain needs --out");
  std::vector<std::pair<std::string, std::string>> config{{"subcommand", "sample"},
                                                          {"mechanism", o.mechanism},
                                                          {"seed", std::to_string(o.seed)}};
  Observation obs;
  std::vector<std::string> trailer;

  if (o.mechanism == "universal") {
    if (!o.p) throw UsageError("universal sampling needs --p");
    std::optional<GraphLaw> mu;
    if (!o.mu_path.empty()) {
      mu = read_law_table_file(o.mu_path);
      config.emplace_back("mu", o.mu_path);
    } else if (!o.model.empty()) {
      const ParsedModel pm = parse_model_spec(o.model);
      const std::size_t n = o.size != 0 ? o.size : pm.size.value_or(0);
      if (n == 0) throw UsageError("universal sampling with --model needs a size");
      mu = exact_law(pm.spec, n);
      config.emplace_back("model", format_model_spec(pm.spec, n));
    } else {
      throw UsageError("universal sampling needs --mu or --model");
    }
    config.emplace_back("p", fixed6(*o.p));
    obs = universal_sample(*mu, *o.p, o.seed);
  } else {
    if (o.in_path.empty()) throw UsageError("--in is required for mechanism " + o.mechanism);
    const AnyGraph g = read_graph_file(o.in_path);
    config.emplace_back("in", o.in_path);
    if (o.mechanism == "canonical") {
      obs = std::visit([&](const auto& x) { return canonical(x, o.size); }, g);
    } else if (o.mechanism == "vertex") {
      obs = vertex_sample(require_simple(g, "vertex sampling"), o.size, o.seed);
    } else if (o.mechanism == "edge") {
      obs = edge_sample(require_simple(g, "edge sampling"), o.size, o.seed);
    } else if (o.mechanism == "snowball-full") {
      obs = snowball_full(require_simple(g, "snowball sampling"), o.size, o.seed, o.start);
    } else if (o.mechanism == "snowball-chain") {
      obs = snowball_chain(require_simple(g, "snowball sampling"), o.size, o.seed);
    } else if (o.mechanism == "thin") {
      const SimpleGraph& pop = require_simple(g, "thinning");
      const double rho = o.rho.value_or(static_cast<double>(pop.num_vertices()));
      config.emplace_back("rho", fixed6(rho));
      obs.graph = thin(pop, rho, o.seed);
      for (Vertex v = 1; v <= pop.num_vertices(); ++v) obs.provenance.push_back(v);
    } else if (o.mechanism == "path") {
      const PathObservation paths = path_sample(require_simple(g, "path sampling"), o.size, o.seed);
      obs = to_observation(paths);
      trailer.push_back("unreachable: " + std::to_string(paths.unreachable));
    } else {
      throw UsageError("unknown mechanism '" + o.mechanism + "'");
    }
    if (o.mechanism != "thin") config.emplace_back("size", std::to_string(o.size));
  }
  config.emplace_back("out", o.out_path.empty() ? "-" : o.out_path);
  rep.config(config);

  trailer.insert(trailer.begin(), "sampled: " + join(obs.provenance));
  emit_graph(rep, o.out_path, obs.graph, trailer);
  if (!o.out_path.empty()) {
    rep.kv("vertices", vertex_count(obs.graph));
    rep.kv("edges", edge_count(obs.graph));
    rep.kv("sampled", join(obs.provenance, ","));
  }
  return kExitOk;
}

std::vector<std::size_t> trace_sizes(const Options& o, std::size_t available, std::size_t first,
                                      std::size_t factor) {
  std::vector<std::size_t> sizes;
  if (!o.sizes.empty()) {
    for (const std::string& s : split(o.sizes, ',')) {
      try {
        sizes.push_back(std::stoul(s));
      } catch (const std::logic_error&) {
        throw UsageError("--sizes must be integers");
      }
    }
    return sizes;
  }
  for (std::size_t s = first; s < available; s *= factor) sizes.push_back(s);
  if (available >= first) sizes.push_back(available);
  return sizes;
}

int cmd_stats(const Options& o, Report& rep) {
  const AnyGraph g = read_graph_file(o.in_path);
  std::vector<std::pair<std::string, std::string>> config{{"subcommand", "stats"},
                                                          {"in", o.in_path}};
  if (o.power_law) config.emplace_back("kmin", std::to_string(o.k_min));
  rep.config(config);

  const bool simple = std::holds_alternative<SimpleGraph>(g);
  const SimpleGraph projected = simple ? std::get<SimpleGraph>(g) : project(std::get<Multigraph>(g));
  rep.kv("kind", std::string(simple ? "simple" : "multi"));
  rep.kv("vertices", projected.num_vertices());
  if (simple) {
    rep.kv("edges", projected.num_edges());
  } else {
    rep.kv("pairs", std::get<Multigraph>(g).num_edges());
    rep.kv("projected_edges", projected.num_edges());
  }
  if (projected.num_vertices() >= 2) {
    rep.kv("density", edge_density(projected));
  } else {
    rep.kv("density", std::string("undefined"));
  }

  const DegreeProfile profile = std::visit([](const auto& x) { return degree_profile(x); }, g);
  if (o.power_law) {
    const PowerLawFit fit = fit_power_law(profile, o.k_min);
    rep.kv("gamma_hat", fit.gamma_hat);
    rep.kv("k_min", fit.k_min);
    rep.kv("k_max", fit.k_max);
    rep.kv("r2", fit.r2);
    rep.kv("fit_points", fit.points);
    rep.kv("low_fit", fit.low_fit());
  }
  if (o.trace) {
    SparsityTrace tr;
    if (simple) {
      tr = sparsity_trace(projected, trace_sizes(o, projected.num_vertices(), 2, 2));
    } else {
      const Multigraph& m = std::get<Multigraph>(g);
      tr = sparsity_trace(m, trace_sizes(o, m.num_edges(), 10, 10));
    }
    for (std::size_t i = 0; i < tr.sizes.size(); ++i) {
      rep.kv("trace_" + std::to_string(tr.sizes[i]), tr.densities[i]);
    }
    rep.kv("trace_strictly_decreasing", tr.strictly_decreasing());
  }
  if (o.degrees) {
    if (rep.porcelain()) {
      for (const auto& [k, count] : profile.counts) rep.kv("degree_" + std::to_string(k), count);
    } else {
      rep.stream() << "# k N_k\n";
      for (const auto& [k, count] : profile.counts) rep.stream() << k << ' ' << count << '\n';
    }
  }
  return kExitOk;
}

int cmd_estimate(const Options& o, Report& rep) {
  const SimpleGraph obs = require_simple(read_graph_file(o.in_path), "estimation");
  std::vector<std::pair<std::string, std::string>> config{
      {"subcommand", "estimate"}, {"estimator", o.estimator}, {"in", o.in_path}};
  EstimateReport r;
  if (o.estimator == "thinned-er") {
    config.emplace_back("rho", o.rho ? fixed6(*o.rho) : "n");
    r = mle_thinned_er(obs, o.rho);
  } else if (o.estimator == "reparam") {
    config.emplace_back("rho", o.rho ? fixed6(*o.rho) : "n");
    config.emplace_back("f", o.f);
    r = estimate_reparam(obs, named_bijection(o.f), o.rho);
  } else if (o.estimator == "sbm-rates") {
    if (o.blocks.empty()) throw UsageError("sbm-rates needs --blocks");
    config.emplace_back("blocks", o.blocks);
    r = mle_sbm_rates(obs, parse_blocks(o.blocks));
  } else {
    throw UsageError("unknown estimator '" + o.estimator + "'");
  }
  rep.config(config);
  rep.kv("n", r.n);
  for (const auto& [k, v] : r.values) rep.kv(k, v);
  rep.kv("clipped", r.clipped);
  return kExitOk;
}

int cmd_predict(const Options& o, Report& rep) {
  if (o.exact && o.mc) throw UsageError("--exact and --mc are exclusive");
  if (!o.p) throw UsageError("--p is required");
  PredictiveQuery q;
  q.n_pop = o.n_pop;
  q.prior = ErSpec{*o.p};
  q.mechanism = parse_predict_mechanism(o.mechanism);
  q.sample_size = o.size;
  q.rho = o.rho.value_or(3.0);
  q.observed = parse_edges(o.observed);
  const std::vector<Edge> target = parse_edges(o.target);
  if (target.size() != 1) throw UsageError("--target takes exactly one pair");
  q.target = target.front();

  const bool use_mc = o.mc;
  std::vector<std::pair<std::string, std::string>> config{
      {"subcommand", "predict"},
      {"mechanism", std::string(to_string(q.mechanism))},
      {"p", fixed6(*o.p)},
      {"n_pop", std::to_string(q.n_pop)},
      {"observed", join_edges(q.observed)},
      {"target", join_edges({q.target})},
      {"method", use_mc ? "mc" : "exact"}};
  if (q.mechanism == PredictMechanism::thin) config.emplace_back("rho", fixed6(q.rho));
  if (use_mc) {
    config.emplace_back("reps", std::to_string(o.reps));
    config.emplace_back("seed", std::to_string(o.seed));
  }
  rep.config(config);

  if (!use_mc) {
    const ExactPrediction r = predict_exact(q);
    rep.kv("probability", r.probability);
    rep.kv("method", std::string("exact"));
    rep.kv("event_probability", r.event_probability);
    if (r.boundary_limit) rep.kv("boundary_limit", true);
    return kExitOk;
  }
  const McPrediction r = predict_mc(q, o.reps, o.seed, o.threads);
  rep.kv("probability", r.probability);
  rep.kv("method", std::string("mc"));
  rep.kv("se", r.standard_error);
  rep.kv("hits", r.hits);
  rep.kv("reps", r.reps);
  rep.kv("abstained", r.abstained);
  return kExitOk;
}

int cmd_verify(const Options& o, Report& rep) {
  rep.config({{"subcommand", "verify"}, {"suite", o.suite}, {"seed", std::to_string(o.seed)}});
  const std::vector<CriterionResult> results = run_suite(o.suite, o.seed);
  std::size_t passed = 0;
  for (const CriterionResult& r : results) {
    if (rep.porcelain()) {
      rep.kv(r.id, std::string(r.pass ? "pass" : "fail"));
    } else {
      rep.stream() << format_result(r) << '\n';
    }
    passed += r.pass ? 1 : 0;
  }
  rep.kv("passed", std::to_string(passed) + "/" + std::to_string(results.size()));
  return passed == results.size() ? kExitOk : kExitDomain;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"netlab: statistical network models, sampling mechanisms and estimators"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--porcelain", o.porcelain, "Print key=value lines only");
  app.add_option("--seed", o.seed, "RNG seed (NETLAB_SEED overrides)")->capture_default_str();

  auto* gen = app.add_subcommand("generate", "Draw a graph from a model");
  gen->add_option("--model", o.model, "Model spec, e.g. \"model=er p=0.5 n=3\"")->required();
  gen->add_option("--n", o.n, "Size override (vertices, or edges for edge-exch)");
  gen->add_option("--out", o.out_path, "Output file (default stdout)");

  auto* sample = app.add_subcommand("sample", "Apply a sampling mechanism to a graph");
  sample
      ->add_option("--mechanism", o.mechanism,
                   "canonical|vertex|edge|snowball-full|snowball-chain|thin|path|universal")
      ->required();
  sample->add_option("--size", o.size, "Sample size (vertices, edge draws or path pairs)");
  sample->add_option("--in", o.in_path, "Population graph file");
  sample->add_option("--rho", o.rho, "Thinning factor (retention 1/rho; default n)");
  sample->add_option("--p", o.p, "ER population parameter for universal");
  sample->add_option("--mu", o.mu_path, "Target law table for universal");
  sample->add_option("--model", o.model, "Target model spec for universal");
  sample->add_option("--start", o.start, "Start vertex for snowball-full");
  sample->add_option("--out", o.out_path, "Output file (default stdout)");

  auto* stats = app.add_subcommand("stats", "Graph statistics");
  stats->add_option("--in", o.in_path, "Graph file")->required();
  stats->add_flag("--power-law", o.power_law, "Fit a log-log power law to the degree profile");
  stats->add_option("--kmin", o.k_min, "Smallest degree in the fit")->capture_default_str();
  stats->add_flag("--trace", o.trace, "Density of nested restrictions / projected prefixes");
  stats->add_option("--sizes", o.sizes, "Comma-separated trace sizes");
  stats->add_flag("--degrees", o.degrees, "Dump the degree table (k, N_k)");

  auto* est = app.add_subcommand("estimate", "Sampling-aware estimators");
  est->add_option("--estimator", o.estimator, "thinned-er|reparam|sbm-rates")->required();
  est->add_option("--in", o.in_path, "Observed graph file")->required();
  est->add_option("--rho", o.rho, "Thinning factor (default n)");
  est->add_option("--f", o.f, "identity|theta-over-2-minus-theta")->capture_default_str();
  est->add_option("--blocks", o.blocks, "Block labels, e.g. 1,1,2,2");

  auto* pred = app.add_subcommand("predict", "Missing-link predictive probability");
  pred->add_option("--mechanism", o.mechanism, "vertex|edge|snowball-chain|thin")->required();
  pred->add_option("--p", o.p, "ER prior parameter")->required();
  pred->add_flag("--exact", o.exact, "Exact enumeration (default)");
  pred->add_flag("--mc", o.mc, "Monte Carlo rejection sampling");
  pred->add_option("--reps", o.reps, "Monte Carlo replicates")->capture_default_str();
  pred->add_option("--observed", o.observed, "Observed labelled edges")->capture_default_str();
  pred->add_option("--target", o.target, "Target label pair")->capture_default_str();
  pred->add_option("--n-pop", o.n_pop, "Population size")->capture_default_str();
  pred->add_option("--size", o.size, "Sample size (0 = mechanism default)");
  pred->add_option("--rho", o.rho, "Thinning factor for thin (default 3)");
  pred->add_option("--threads", o.threads, "Monte Carlo worker threads (0 = all cores)");

  auto* verify = app.add_subcommand("verify", "Run an acceptance suite");
  verify->add_option("--suite", o.suite, join(suite_names(), "|"))->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Report rep(out, o.porcelain);
  try {
    o.seed = resolve_seed(o.seed);
    if (gen->parsed()) return cmd_generate(o, rep);
    if (sample->parsed()) return cmd_sample(o, rep);
    if (stats->parsed()) return cmd_stats(o, rep);
    if (est->parsed()) return cmd_estimate(o, rep);
    if (pred->parsed()) return cmd_predict(o, rep);
    if (verify->parsed()) return cmd_verify(o, rep);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace netlab::cli
