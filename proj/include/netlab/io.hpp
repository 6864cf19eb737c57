#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "netlab/graph.hpp"

namespace netlab {

using AnyGraph = std::variant<SimpleGraph, Multigraph>;

// Edge-list text format.
//
//   simple n=<n>          multi m=<m>
//   i j                   <eid> <v> <v'>
//
// Simple lines are 1-based with i < j. Multigraph lines carry eid = 1..m in
// order. Blank lines and '#' comments are skipped. Malformed input throws
// FormatError.
AnyGraph read_graph(std::istream& in);
AnyGraph read_graph_file(const std::string& path);

void write_graph(std::ostream& out, const SimpleGraph& g);
void write_graph(std::ostream& out, const Multigraph& g);
void write_graph(std::ostream& out, const AnyGraph& g);

}  // namespace netlab
