#include "netlab/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "netlab/errors.hpp"

namespace netlab {
namespace {

// Strips comments and surrounding whitespace; returns false for lines with
// nothing left.
bool content_line(std::string& line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return false;
  const auto last = line.find_last_not_of(" \t\r");
  line = line.substr(first, last - first + 1);
  return true;
}

std::uint64_t parse_count(const std::string& token, const std::string& key) {
  const std::string prefix = key + "=";
  if (token.rfind(prefix, 0) != 0) {
    throw FormatError("expected '" + prefix + "<count>' in header, got '" + token + "'");
  }
  const std::string digits = token.substr(prefix.size());
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw FormatError("bad count in header: '" + token + "'");
  }
  return std::stoull(digits);
}

}  // namespace

AnyGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw FormatError("line " + std::to_string(line_no) + ": " + what);
  };

  std::string kind;
  std::uint64_t count = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!content_line(line)) continue;
    std::istringstream header(line);
    std::string size_token, extra;
    header >> kind >> size_token;
    if (header >> extra) fail("trailing tokens in header");
    if (kind == "simple") {
      count = parse_count(size_token, "n");
    } else if (kind == "multi") {
      count = parse_count(size_token, "m");
    } else {
      fail("header must start with 'simple' or 'multi'");
    }
    break;
  }
  if (kind.empty()) throw FormatError("missing header");

  if (kind == "simple") {
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
      ++line_no;
      if (!content_line(line)) continue;
      std::istringstream row(line);
      long long i = 0, j = 0;
      std::string extra;
      if (!(row >> i >> j) || (row >> extra)) fail("expected 'i j'");
      if (i < 1 || j < 1 || static_cast<std::uint64_t>(i) > count ||
          static_cast<std::uint64_t>(j) > count) {
        fail("vertex label outside [1," + std::to_string(count) + "]");
      }
      if (i >= j) fail("simple edges must satisfy i < j");
      edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
    return SimpleGraph(count, std::move(edges));
  }

  std::vector<NamedPair> pairs;
  while (std::getline(in, line)) {
    ++line_no;
    if (!content_line(line)) continue;
    std::istringstream row(line);
    unsigned long long eid = 0, a = 0, b = 0;
    std::string extra;
    if (!(row >> eid >> a >> b) || (row >> extra)) fail("expected '<eid> <v> <v'>'");
    if (eid != pairs.size() + 1) fail("edge ids must run 1..m in order");
    if (a == 0 || b == 0) fail("vertex names must be positive");
    if (a == b) fail("pair with equal endpoints");
    pairs.emplace_back(a, b);
  }
  if (pairs.size() != count) {
    throw FormatError("header declares m=" + std::to_string(count) + " but found " +
                      std::to_string(pairs.size()) + " pairs");
  }
  return Multigraph(std::move(pairs));
}

AnyGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return read_graph(in);
}

void write_graph(std::ostream& out, const SimpleGraph& g) {
  out << "simple n=" << g.num_vertices() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_graph(std::ostream& out, const Multigraph& g) {
  out << "multi m=" << g.num_edges() << '\n';
  std::size_t k = 1;
  for (const NamedPair& p : g.pairs()) out << k++ << ' ' << p.a << ' ' << p.b << '\n';
}

void write_graph(std::ostream& out, const AnyGraph& g) {
  std::visit([&](const auto& x) { write_graph(out, x); }, g);
}

}  // namespace netlab
