#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "graph.hpp"

namespace kac {

// Text format, one edge per line:
//
//   #kind: pag
//   #nodes: X1,X2,X3
//   X1 o> X2
//   X2 -- X3
//
// Left mark: '-' tail, '<' arrow, 'o' circle. Right mark: '-' tail, '>' arrow,
// 'o' circle. Blank lines and other '#' lines are ignored.

std::string format_graph(const MixedGraph& g);
void write_graph(const MixedGraph& g, std::ostream& out);
void write_graph_file(const MixedGraph& g, const std::filesystem::path& path);

MixedGraph parse_graph(std::istream& in);
MixedGraph parse_graph(const std::string& text);
MixedGraph read_graph_file(const std::filesystem::path& path);

}  // namespace kac
