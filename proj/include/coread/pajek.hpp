#ifndef COREAD_PAJEK_HPP_
#define COREAD_PAJEK_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "coread/graph.hpp"

namespace coread {

// Pajek .net text: `*Vertices N`, 1-based `i "label"` lines (quotes
// doubled), `*Edges`, `i j w` lines with i <= j in (i, j) order, loops as
// `i i w`, shortest round-trippable weights, LF endings. Byte-identical
// across runs for the same Graph. Vertex sizes are not part of the format.
std::string write_pajek(const Graph& g);

// Inverse of write_pajek on its image. Also tolerates unquoted labels,
// missing labels or weights, `%` comment lines, extra vertex columns
// (coordinates), and `*Arcs` sections (symmetrized by summing both
// directions). Errors carry the offending line number.
Graph read_pajek(std::string_view text);

void write_pajek_file(const Graph& g, const std::filesystem::path& path);
Graph read_pajek_file(const std::filesystem::path& path);

} // namespace coread

#endif // COREAD_PAJEK_HPP_
