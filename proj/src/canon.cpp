#include "gfl/canon.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "gfl/errors.hpp"

namespace gfl {

namespace {

// Small graphs live as one adjacency byte per vertex.
struct SmallGraph {
    int n = 0;
    std::array<std::uint8_t, kMaxPatternVertices> rows{};

    bool adj(int i, int j) const { return (rows[i] >> j) & 1; }
    void add_edge(int i, int j) {
        rows[i] |= std::uint8_t(1) << j;
        rows[j] |= std::uint8_t(1) << i;
    }
    int degree(int i) const { return std::popcount(rows[i]); }
};

SmallGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0 || n > kMaxPatternVertices)
        throw CapabilityError("pattern graphs are limited to " + std::to_string(kMaxPatternVertices) + " vertices");
    SmallGraph g;
    g.n = n;
    for (auto [u, v] : edges) {
        if (u == v) throw FormatError("loop edge " + std::to_string(u) + "-" + std::to_string(v));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw FormatError("edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
        if (g.adj(u, v)) throw FormatError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
        g.add_edge(u, v);
    }
    return g;
}

// Upper-triangle mask of the relabeled graph, with pair (0,1) as the most
// significant bit so that the maximal mask corresponds to the
// lexicographically minimal sorted edge list.
std::uint32_t labeling_mask(const SmallGraph& g, const std::array<int, kMaxPatternVertices>& perm) {
    std::uint32_t mask = 0;
    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b) {
            mask <<= 1;
            mask |= g.adj(perm[a], perm[b]) ? 1u : 0u;
        }
    return mask;
}

struct CanonSearch {
    const SmallGraph& g;
    std::uint32_t best = 0;
    bool have_best = false;
    std::int64_t hits = 0;

    explicit CanonSearch(const SmallGraph& g_) : g(g_) {}

    void consider(const std::array<int, kMaxPatternVertices>& perm) {
        std::uint32_t m = labeling_mask(g, perm);
        if (!have_best || m > best) {
            best = m;
            have_best = true;
            hits = 1;
        } else if (m == best) {
            ++hits;
        }
    }
};

// In any labeling that minimizes the sorted edge list, label 0 goes to a
// vertex of maximum degree and labels 1..deg go to its neighbors (the most
// significant bits are exactly vertex 0's row, so they must be packed).
// Enumerating only such labelings is exhaustive over the optima, and the
// number of optima equals the automorphism order.
void canonical_search(const SmallGraph& g, std::uint32_t& best_mask, std::int64_t& aut) {
    if (g.n == 0) {
        best_mask = 0;
        aut = 1;
        return;
    }
    int maxdeg = 0;
    for (int i = 0; i < g.n; ++i) maxdeg = std::max(maxdeg, g.degree(i));

    CanonSearch search(g);
    std::array<int, kMaxPatternVertices> perm{};
    for (int w = 0; w < g.n; ++w) {
        if (g.degree(w) != maxdeg) continue;
        std::vector<int> nb, rest;
        for (int u = 0; u < g.n; ++u) {
            if (u == w) continue;
            (g.adj(w, u) ? nb : rest).push_back(u);
        }
        do {
            std::sort(rest.begin(), rest.end());
            do {
                perm[0] = w;
                int k = 1;
                for (int u : nb) perm[k++] = u;
                for (int u : rest) perm[k++] = u;
                search.consider(perm);
            } while (std::next_permutation(rest.begin(), rest.end()));
        } while (std::next_permutation(nb.begin(), nb.end()));
    }
    best_mask = search.best;
    aut = search.hits;
}

std::vector<std::pair<int, int>> mask_to_edges(int n, std::uint32_t mask) {
    std::vector<std::pair<int, int>> edges;
    int total = n * (n - 1) / 2;
    int bit = total;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            --bit;
            if ((mask >> bit) & 1) edges.emplace_back(a, b);
        }
    return edges;
}

bool compute_connected(const SmallGraph& g) {
    if (g.n <= 1) return true;
    std::uint32_t seen = 1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < g.n; ++v)
            if (g.adj(u, v) && !((seen >> v) & 1)) {
                seen |= std::uint32_t(1) << v;
                stack.push_back(v);
            }
    }
    return seen == (std::uint32_t(1) << g.n) - 1;
}

CanonGraph canonicalize(const SmallGraph& g) {
    std::uint32_t mask;
    std::int64_t aut;
    canonical_search(g, mask, aut);

    CanonGraph out;
    out.num_vertices = g.n;
    out.edges = mask_to_edges(g.n, mask);
    out.aut_order = aut;
    out.is_connected = compute_connected(g);
    out.has_isolated = false;
    for (int i = 0; i < g.n; ++i)
        if (g.degree(i) == 0) out.has_isolated = true;
    return out;
}

SmallGraph to_small(const CanonGraph& g) { return from_edges(g.num_vertices, g.edges); }

}  // namespace

CanonGraph canonical_form(int num_vertices, const std::vector<std::pair<int, int>>& edges) {
    return canonicalize(from_edges(num_vertices, edges));
}

CanonGraph canonical_form(const std::vector<std::vector<int>>& adjacency) {
    int n = static_cast<int>(adjacency.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(adjacency[i].size()) != n) throw FormatError("adjacency matrix is not square");
        if (adjacency[i][i] != 0) throw FormatError("adjacency matrix has a nonzero diagonal entry");
        for (int j = i + 1; j < n; ++j) {
            if (adjacency[i][j] != adjacency[j][i]) throw FormatError("adjacency matrix is not symmetric");
            if (adjacency[i][j] != 0 && adjacency[i][j] != 1) throw FormatError("adjacency entries must be 0 or 1");
            if (adjacency[i][j]) edges.emplace_back(i, j);
        }
    }
    return canonical_form(n, edges);
}

namespace {

std::vector<CanonGraph> iso_classes_uncached(int v);

}  // namespace

std::vector<CanonGraph> iso_classes(int v, bool allow_isolated) {
    if (v < 0 || v > kMaxPatternVertices) throw CapabilityError("iso_classes supports 0..8 vertices");

    static std::mutex mu;
    static std::map<int, std::vector<CanonGraph>> cache;
    std::vector<CanonGraph> all;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(v);
        if (it == cache.end()) it = cache.emplace(v, iso_classes_uncached(v)).first;
        all = it->second;
    }
    if (allow_isolated) return all;
    std::vector<CanonGraph> out;
    for (const CanonGraph& g : all)
        if (!g.has_isolated) out.push_back(g);
    return out;
}

namespace {

std::vector<CanonGraph> iso_classes_uncached(int v) {
    std::set<CanonGraph> current;
    current.insert(canonical_form(0, {}));
    for (int k = 1; k <= v; ++k) {
        std::set<CanonGraph> next;
        for (const CanonGraph& base : current) {
            SmallGraph g = to_small(base);
            g.n = k;
            for (std::uint32_t nb = 0; nb < (std::uint32_t(1) << (k - 1)); ++nb) {
                SmallGraph h = g;
                for (int u = 0; u < k - 1; ++u)
                    if ((nb >> u) & 1) h.add_edge(u, k - 1);
                next.insert(canonicalize(h));
            }
        }
        current = std::move(next);
    }
    return {current.begin(), current.end()};
}

}  // namespace

void for_each_embedding(const CanonGraph& pattern, const BitGraph& host, bool induced_only,
                        const std::function<void(const std::vector<int>&)>& visit) {
    int k = pattern.num_vertices;
    if (k > host.n) return;
    SmallGraph pat = to_small(pattern);

    // Order pattern vertices so each one touches as many placed vertices as
    // possible; ties go to higher degree. Keeps the search tree narrow.
    std::vector<int> order;
    std::vector<bool> placed(k, false);
    for (int step = 0; step < k; ++step) {
        int bestv = -1, bestback = -1, bestdeg = -1;
        for (int u = 0; u < k; ++u) {
            if (placed[u]) continue;
            int back = 0;
            for (int w : order) back += pat.adj(u, w) ? 1 : 0;
            if (back > bestback || (back == bestback && pat.degree(u) > bestdeg)) {
                bestv = u;
                bestback = back;
                bestdeg = pat.degree(u);
            }
        }
        order.push_back(bestv);
        placed[bestv] = true;
    }

    std::vector<int> image(k, -1);  // pattern vertex -> host vertex
    std::vector<bool> used(host.n, false);

    std::function<void(int)> rec = [&](int depth) {
        if (depth == k) {
            visit(image);
            return;
        }
        int u = order[depth];
        for (int h = 0; h < host.n; ++h) {
            if (used[h]) continue;
            bool ok = true;
            for (int d = 0; d < depth && ok; ++d) {
                int w = order[d];
                bool pe = pat.adj(u, w);
                bool he = host.has_edge(h, image[w]);
                if (pe != he && (pe || induced_only)) ok = false;
            }
            if (!ok) continue;
            image[u] = h;
            used[h] = true;
            rec(depth + 1);
            used[h] = false;
            image[u] = -1;
        }
    };
    rec(0);
}

CopyCounts copy_counts(const CanonGraph& pattern, const BitGraph& host) {
    if (pattern.num_vertices > host.n) return {0, 0};
    if (pattern.num_vertices > 5 && host.n > 24)
        throw CapabilityError("subgraph counting with patterns above 5 vertices is limited to hosts of 24 vertices");

    long long sub = 0, ind = 0;
    for_each_embedding(pattern, host, false, [&](const std::vector<int>&) { ++sub; });
    for_each_embedding(pattern, host, true, [&](const std::vector<int>&) { ++ind; });
    CopyCounts out;
    out.subgraph_copies = sub / pattern.aut_order;
    out.induced_copies = ind / pattern.aut_order;
    return out;
}

const std::vector<CanonGraph>& ind4_class_order() {
    static const std::vector<CanonGraph> classes = [] {
        std::vector<std::vector<std::pair<int, int>>> reps = {
            {},                                            // empty
            {{0, 1}},                                      // one edge
            {{0, 1}, {1, 2}},                              // 2-edge path
            {{0, 1}, {2, 3}},                              // two disjoint edges
            {{0, 1}, {0, 2}, {1, 2}},                      // triangle
            {{0, 1}, {1, 2}, {2, 3}},                      // 3-edge path
            {{0, 1}, {0, 2}, {0, 3}},                      // 3-star
            {{0, 1}, {1, 2}, {2, 3}, {0, 3}},              // 4-cycle
            {{0, 1}, {0, 2}, {1, 2}, {0, 3}},              // paw
            {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}},      // diamond
            {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},  // complete
        };
        std::vector<CanonGraph> out;
        for (const auto& e : reps) out.push_back(canonical_form(4, e));
        return out;
    }();
    return classes;
}

const std::array<int, 64>& ind4_mask_table() {
    static const std::array<int, 64> table = [] {
        const auto& classes = ind4_class_order();
        std::array<int, 64> t{};
        static const int pr[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
        for (int mask = 0; mask < 64; ++mask) {
            std::vector<std::pair<int, int>> edges;
            for (int b = 0; b < 6; ++b)
                if ((mask >> b) & 1) edges.emplace_back(pr[b][0], pr[b][1]);
            CanonGraph g = canonical_form(4, edges);
            int idx = -1;
            for (int c = 0; c < 11; ++c)
                if (classes[c] == g) idx = c;
            t[mask] = idx;
        }
        return t;
    }();
    return table;
}

Ind4Vector ind4_vector(const BitGraph& host) {
    if (host.n < 4) throw DomainError("census needs a host with at least 4 vertices");
    const auto& table = ind4_mask_table();
    Ind4Vector out;
    int n = host.n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int bij = host.has_edge(i, j) ? 1 : 0;
            for (int k = j + 1; k < n; ++k) {
                int bik = host.has_edge(i, k) ? 1 : 0;
                int bjk = host.has_edge(j, k) ? 1 : 0;
                int base = bij | (bik << 1) | (bjk << 3);
                for (int l = k + 1; l < n; ++l) {
                    int mask = base | (host.has_edge(i, l) << 2) | (host.has_edge(j, l) << 4) |
                               (host.has_edge(k, l) << 5);
                    ++out.counts[table[mask]];
                }
            }
        }
    return out;
}

std::string CanonGraph::to_string() const {
    std::ostringstream os;
    os << num_vertices << ';';
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i) os << ',';
        os << edges[i].first << '-' << edges[i].second;
    }
    return os.str();
}

BitGraph to_bitgraph(const CanonGraph& g) {
    BitGraph b(g.num_vertices);
    for (auto [u, v] : g.edges) b.set_edge(u, v);
    return b;
}

namespace {

// One summand of a named-graph expression: K5, D3, P2 (path with 2 edges),
// C4, S4 (star on 4 vertices), K2,3 (complete bipartite).
void append_named_part(const std::string& part, int& n, std::vector<std::pair<int, int>>& edges) {
    if (part.empty()) throw FormatError("empty graph name component");
    char kind = static_cast<char>(std::toupper(static_cast<unsigned char>(part[0])));
    std::string rest = part.substr(1);
    auto parse_int = [&](const std::string& s) {
        if (s.empty()) throw FormatError("missing size in graph name '" + part + "'");
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) throw FormatError("bad graph name '" + part + "'");
        return std::stoi(s);
    };
    int base = n;
    auto add = [&](int u, int v) { edges.emplace_back(base + u, base + v); };

    auto comma = rest.find(',');
    if (kind == 'K' && comma != std::string::npos) {
        int a = parse_int(rest.substr(0, comma));
        int b = parse_int(rest.substr(comma + 1));
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j) add(i, a + j);
        n += a + b;
        return;
    }
    int sz = parse_int(rest);
    switch (kind) {
        case 'K':
            for (int i = 0; i < sz; ++i)
                for (int j = i + 1; j < sz; ++j) add(i, j);
            n += sz;
            return;
        case 'D':
            n += sz;
            return;
        case 'P':  // path with sz edges, sz+1 vertices
            for (int i = 0; i < sz; ++i) add(i, i + 1);
            n += sz + 1;
            return;
        case 'C':
            if (sz < 3) throw FormatError("cycle needs at least 3 vertices");
            for (int i = 0; i < sz; ++i) add(i, (i + 1) % sz);
            n += sz;
            return;
        case 'S':  // star on sz vertices
            if (sz < 1) throw FormatError("star needs at least 1 vertex");
            for (int i = 1; i < sz; ++i) add(0, i);
            n += sz;
            return;
        default:
            throw FormatError("unknown graph name '" + part + "'");
    }
}

}  // namespace

CanonGraph named_graph(const std::string& name) {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::string part;
    std::istringstream is(name);
    while (std::getline(is, part, '+')) append_named_part(part, n, edges);
    if (n == 0 && name.find('+') == std::string::npos && name.empty())
        throw FormatError("empty graph name");
    return canonical_form(n, edges);
}

CanonGraph parse_edge_list_graph(const std::string& s) {
    auto semi = s.find(';');
    std::string head = semi == std::string::npos ? s : s.substr(0, semi);
    int n = 0;
    try {
        size_t pos = 0;
        n = std::stoi(head, &pos);
        if (pos != head.size()) throw FormatError("bad vertex count '" + head + "'");
    } catch (const std::exception&) {
        throw FormatError("bad vertex count '" + head + "'");
    }
    std::vector<std::pair<int, int>> edges;
    if (semi != std::string::npos) {
        std::string list = s.substr(semi + 1);
        std::istringstream is(list);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            if (tok.empty()) continue;
            auto dash = tok.find('-');
            if (dash == std::string::npos) throw FormatError("bad edge '" + tok + "', expected u-v");
            try {
                int u = std::stoi(tok.substr(0, dash));
                int v = std::stoi(tok.substr(dash + 1));
                edges.emplace_back(u, v);
            } catch (const std::exception&) {
                throw FormatError("bad edge '" + tok + "'");
            }
        }
    }
    for (auto& [u, v] : edges)
        if (u > v) std::swap(u, v);
    return canonical_form(n, edges);
}

}  // namespace gfl
