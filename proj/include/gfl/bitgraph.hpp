#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gfl {

// Adjacency stored one bitset row per vertex, 64 vertices per machine word.
// Hosts of arbitrary size use this; pattern graphs use CanonGraph.
struct BitGraph {
    int n = 0;
    int words = 0;
    std::vector<std::uint64_t> bits;

    BitGraph() = default;
    explicit BitGraph(int n_) : n(n_), words((n_ + 63) / 64), bits(std::size_t(n_) * ((n_ + 63) / 64), 0) {
        if (n_ < 0) throw std::invalid_argument("negative vertex count");
    }

    const std::uint64_t* row(int i) const { return bits.data() + std::size_t(i) * words; }
    std::uint64_t* row(int i) { return bits.data() + std::size_t(i) * words; }

    bool has_edge(int i, int j) const { return (row(i)[j >> 6] >> (j & 63)) & 1; }

    void set_edge(int i, int j) {
        row(i)[j >> 6] |= std::uint64_t(1) << (j & 63);
        row(j)[i >> 6] |= std::uint64_t(1) << (i & 63);
    }

    void clear_edge(int i, int j) {
        row(i)[j >> 6] &= ~(std::uint64_t(1) << (j & 63));
        row(j)[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }

    void flip_edge(int i, int j) {
        row(i)[j >> 6] ^= std::uint64_t(1) << (j & 63);
        row(j)[i >> 6] ^= std::uint64_t(1) << (i & 63);
    }

    void clear() { std::fill(bits.begin(), bits.end(), 0); }

    int degree(int i) const {
        int d = 0;
        for (int w = 0; w < words; ++w) d += std::popcount(row(i)[w]);
        return d;
    }

    long long edge_count() const {
        long long total = 0;
        for (int i = 0; i < n; ++i) total += degree(i);
        return total / 2;
    }

    int common_neighbors(int i, int j) const {
        int c = 0;
        for (int w = 0; w < words; ++w) c += std::popcount(row(i)[w] & row(j)[w]);
        return c;
    }
};

// Lexicographic rank of the vertex pair (i, j), i < j, among the C(n,2)
// unordered pairs: (0,1), (0,2), ..., (n-2,n-1).
inline long long pair_rank(int i, int j, int n) {
    return (long long)i * (2 * n - i - 1) / 2 + (j - i - 1);
}

inline std::pair<int, int> pair_unrank(long long r, int n) {
    // binary search the row: ranks of row i start at pair_rank(i, i+1, n)
    int lo = 0, hi = n - 2;
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (pair_rank(mid, mid + 1, n) <= r) lo = mid;
        else hi = mid - 1;
    }
    return {lo, int(r - pair_rank(lo, lo + 1, n)) + lo + 1};
}

}  // namespace gfl
