#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gfl/bitgraph.hpp"

namespace gfl {

constexpr int kMaxPatternVertices = 8;

// A graph in canonical labeling. Two graphs are isomorphic exactly when their
// (num_vertices, edges) pairs compare equal.
struct CanonGraph {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;  // sorted pairs (u < v), lexicographically minimal over relabelings
    std::int64_t aut_order = 1;
    bool is_connected = true;
    bool has_isolated = false;

    int edge_count() const { return static_cast<int>(edges.size()); }

    friend bool operator==(const CanonGraph& a, const CanonGraph& b) {
        return a.num_vertices == b.num_vertices && a.edges == b.edges;
    }
    friend std::strong_ordering operator<=>(const CanonGraph& a, const CanonGraph& b) {
        if (auto c = a.num_vertices <=> b.num_vertices; c != 0) return c;
        return a.edges <=> b.edges;
    }

    std::string to_string() const;  // "v;u1-v1,u2-v2,..."
};

// Canonicalization of pattern-sized graphs (at most 8 vertices).
CanonGraph canonical_form(const std::vector<std::vector<int>>& adjacency);
CanonGraph canonical_form(int num_vertices, const std::vector<std::pair<int, int>>& edges);

// One representative per isomorphism class on exactly v vertices.
std::vector<CanonGraph> iso_classes(int v, bool allow_isolated);

// (subgraph copies, induced copies) of pattern in host.
struct CopyCounts {
    long long subgraph_copies = 0;
    long long induced_copies = 0;
};
CopyCounts copy_counts(const CanonGraph& pattern, const BitGraph& host);

// Census of all 4-vertex induced subgraphs, in the fixed class order:
// empty, one edge, 2-edge path (+iso), two disjoint edges, triangle (+iso),
// 3-edge path, 3-star, 4-cycle, paw, diamond, complete.
struct Ind4Vector {
    std::array<long long, 11> counts{};

    long long operator[](int i) const { return counts[i]; }
    friend bool operator==(const Ind4Vector&, const Ind4Vector&) = default;
};

Ind4Vector ind4_vector(const BitGraph& host);

// The 11 class representatives in Ind4Vector order (each on 4 vertices).
const std::vector<CanonGraph>& ind4_class_order();

// Class index (0..10) for a 6-bit edge mask over the pair order
// (0,1),(0,2),(0,3),(1,2),(1,3),(2,3); used by the census and the search.
const std::array<int, 64>& ind4_mask_table();

// Builders.
CanonGraph named_graph(const std::string& name);          // K4, D3, P2, C5, S4, K1,3, K2+K2, ...
CanonGraph parse_edge_list_graph(const std::string& s);   // "v;u1-v1,u2-v2,..." (0-based)
BitGraph to_bitgraph(const CanonGraph& g);

// Enumerates injective embeddings of pattern into host that send edges to
// edges (and, if induced_only, non-edges to non-edges); calls visit with the
// image vector. Used by the counting and evaluation layers.
void for_each_embedding(const CanonGraph& pattern, const BitGraph& host, bool induced_only,
                        const std::function<void(const std::vector<int>&)>& visit);

}  // namespace gfl
