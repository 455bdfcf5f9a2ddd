#include "gfl/graph_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "gfl/errors.hpp"

namespace gfl {

BitGraph load_adjacency_text(std::istream& in) {
    std::vector<int> entries;
    std::string line;
    while (std::getline(in, line)) {
        std::string cur;
        auto flush = [&] {
            if (cur.empty()) return;
            if (cur == "0")
                entries.push_back(0);
            else if (cur == "1")
                entries.push_back(1);
            else
                throw FormatError("unexpected token '" + cur + "' in adjacency matrix");
            cur.clear();
        };
        for (char c : line) {
            if (c == ' ' || c == '\t' || c == ',' || c == '&' || c == '\r')
                flush();
            else if (c == '\\' || c == '$')
                continue;
            else
                cur.push_back(c);
        }
        flush();
    }

    if (entries.empty()) throw FormatError("adjacency matrix is empty");
    auto total = entries.size();
    std::size_t v = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(total))));
    if (v * v != total)
        throw FormatError("adjacency matrix has " + std::to_string(total) + " entries, not a square count");

    BitGraph g(static_cast<int>(v));
    for (std::size_t i = 0; i < v; ++i) {
        if (entries[i * v + i] != 0) throw FormatError("nonzero diagonal at row " + std::to_string(i));
        for (std::size_t j = i + 1; j < v; ++j) {
            if (entries[i * v + j] != entries[j * v + i])
                throw FormatError("matrix not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            if (entries[i * v + j]) g.set_edge(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return g;
}

BitGraph load_adjacency_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open adjacency file '" + path + "'");
    return load_adjacency_text(in);
}

void write_adjacency_text(const BitGraph& g, std::ostream& out) {
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) {
            if (j) out << ' ';
            out << (i != j && g.has_edge(i, j) ? '1' : '0');
        }
        out << '\n';
    }
}

void write_adjacency_file(const BitGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    write_adjacency_text(g, out);
}

}  // namespace gfl
