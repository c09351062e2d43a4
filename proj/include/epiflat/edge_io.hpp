#pragma once

#include <filesystem>
#include <iosfwd>

#include "epiflat/graph.hpp"

namespace epiflat {

// Plain-text edge list:
//
//   n <node_count>
//   <u> <v>
//   ...
//
// One edge per line, whitespace separated. The explicit header keeps isolated
// nodes intact across a round trip. Blank lines are ignored; anything else is
// a parse error reported with its line number.

Graph parse_edge_list(std::istream& in);
void format_edge_list(const Graph& g, std::ostream& out);

Graph read_edge_list(const std::filesystem::path& path);
void write_edge_list(const Graph& g, const std::filesystem::path& path);

}  // namespace epiflat
