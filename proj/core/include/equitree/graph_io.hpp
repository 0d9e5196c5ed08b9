#pragma once

#include <iosfwd>
#include <string>

#include "equitree/graph.hpp"

namespace equitree {

// Edge list format: '#' starts a comment, blank lines ignored. First
// significant line is "n m", followed by exactly m lines "u v" with
// 0-based endpoints. Errors carry the 1-based line number.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

// DIMACS coloring format: "c" comments, one "p edge n m" (or "p col n m")
// line, then "e u v" lines with 1-based endpoints.
Graph read_dimacs(std::istream& in);
Graph read_dimacs_file(const std::string& path);
void write_dimacs(std::ostream& out, const Graph& g);

enum class GraphFormat { edge_list, dimacs };
Graph read_graph_file(const std::string& path, GraphFormat fmt);

}  // namespace equitree
