#pragma once

#include <iosfwd>
#include <string>

#include "gfl/bitgraph.hpp"

namespace gfl {

// Plain-text adjacency matrix: v rows of v entries, each '0' or '1',
// separated by spaces, commas, or '&'; trailing backslashes and blank lines
// are ignored, as are '$' math delimiters. Row breaks are not significant:
// any layout whose entry count is a perfect square is accepted. Validates
// symmetry and a zero diagonal.
BitGraph load_adjacency_text(std::istream& in);
BitGraph load_adjacency_file(const std::string& path);

void write_adjacency_text(const BitGraph& g, std::ostream& out);
void write_adjacency_file(const BitGraph& g, const std::string& path);

}  // namespace gfl
