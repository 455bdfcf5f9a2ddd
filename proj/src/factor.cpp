#include "gfl/factor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <set>

#include "gfl/errors.hpp"
#include "json.hpp"

namespace gfl {

namespace {

int pair_rank(int i, int j, int n) {  // i < j, lexicographic pair order
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

// Distinct copies of the pattern inside the complete graph on ell vertices,
// as edge masks over pair ranks.
std::vector<std::uint32_t> copies_in_complete(const CanonGraph& pattern, int ell) {
    BitGraph complete(ell);
    for (int i = 0; i < ell; ++i)
        for (int j = i + 1; j < ell; ++j) complete.set_edge(i, j);

    std::set<std::uint32_t> masks;
    for_each_embedding(pattern, complete, false, [&](const std::vector<int>& image) {
        std::uint32_t m = 0;
        for (auto [u, v] : pattern.edges) {
            int a = image[u], b = image[v];
            if (a > b) std::swap(a, b);
            m |= std::uint32_t(1) << pair_rank(a, b, ell);
        }
        masks.insert(m);
    });
    return {masks.begin(), masks.end()};
}

std::uint32_t identity_mask(const CanonGraph& g, int ell) {
    std::uint32_t m = 0;
    for (auto [u, v] : g.edges) m |= std::uint32_t(1) << pair_rank(u, v, ell);
    return m;
}

// Sum over copies S' of S in K_ell of q^{|E(S') \ E(H0)|} for one fixed copy
// H0 of H. By the symmetry of K_ell this does not depend on which copy H0 is,
// and the full double sum factors as (#H-copies) times this.
QPoly fixed_host_poly(const CanonGraph& s, const CanonGraph& h) {
    int ell = h.num_vertices;
    std::uint32_t hmask = identity_mask(h, ell);
    QPoly out;
    for (std::uint32_t smask : copies_in_complete(s, ell))
        out.add_term(std::popcount(smask & ~hmask), 1);
    return out;
}

// Sum over copies H' of H in K_ell of q^{|E(S0) \ E(H')|} for one fixed copy
// S0 of S. This is the coefficient a single gamma_S factor actually carries:
// the symmetric double sum repeats it once per S-copy.
QPoly fixed_pattern_poly(const CanonGraph& s, const CanonGraph& h) {
    int ell = h.num_vertices;
    std::uint32_t smask = identity_mask(s, ell);
    QPoly out;
    for (std::uint32_t hm : copies_in_complete(h, ell)) out.add_term(std::popcount(smask & ~hm), 1);
    return out;
}

BigInt h_copy_count(const CanonGraph& h) { return factorial(h.num_vertices) / h.aut_order; }

const CanonGraph& empty_graph() {
    static const CanonGraph k0 = canonical_form(0, {});
    return k0;
}

std::vector<CanonGraph> classes_up_to(int ell) {
    std::vector<CanonGraph> out{empty_graph()};
    for (int k = 2; k <= ell; ++k)
        for (const CanonGraph& g : iso_classes(k, false)) out.push_back(g);
    return out;
}

// value = mant * (sqrt p)^a * (sqrt(1-p))^b with a, b reduced mod 2.
struct SqrtRat {
    Rational mant = 0;
    int a = 0, b = 0;

    void reduce(const Rational& p) {
        if (mant == 0) {
            a = b = 0;
            return;
        }
        auto fold = [](int& e, const Rational& base, Rational& m) {
            while (e >= 2) {
                m *= base;
                e -= 2;
            }
            while (e < 0) {
                m /= base;
                e += 2;
            }
        };
        fold(a, p, mant);
        fold(b, Rational(1) - p, mant);
    }
};

Rational require_rational(SqrtRat v, const Rational& p) {
    v.reduce(p);
    if (v.mant == 0) return 0;
    if (v.a == 1 && v.b == 1) {
        Rational r;
        if (!rational_sqrt(p * (Rational(1) - p), r))
            throw DomainError("exact evaluation needs p(1-p) to be a rational square");
        v.mant *= r;
        v.a = v.b = 0;
    }
    if (v.a != 0 || v.b != 0)
        throw DomainError("expression value is irrational at this p");
    return v.mant;
}

// Sum over copies of S in K_n of the product of (x_e - p) over the copy's
// edges. gamma_S is this divided by sqrt(p(1-p))^{e(S)}.
Rational chi_numerator_sum(const CanonGraph& s, const BitGraph& x, const Rational& p) {
    if (s.num_vertices == 0) return 1;
    BitGraph complete(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = i + 1; j < x.n; ++j) complete.set_edge(i, j);

    Rational total = 0;
    Rational on_edge = Rational(1) - p, off_edge = -p;
    for_each_embedding(s, complete, false, [&](const std::vector<int>& image) {
        Rational prod = 1;
        for (auto [u, v] : s.edges) prod *= x.has_edge(image[u], image[v]) ? on_edge : off_edge;
        total += prod;
    });
    return total / s.aut_order;
}

}  // namespace

std::pair<Rational, long long> structure_constants(const CanonGraph& s, const CanonGraph& h) {
    int ell = h.num_vertices;
    if (s.num_vertices == 0) return {Rational(factorial(ell), BigInt(h.aut_order)), 1};
    if (s.has_isolated) throw DomainError("structure constants are defined for classes without isolated vertices");
    if (s.num_vertices > ell) return {Rational(0), 0};
    Rational c(factorial(ell - s.num_vertices) * s.aut_order, BigInt(h.aut_order));
    long long d = copy_counts(s, to_bitgraph(h)).subgraph_copies;
    return {c, d};
}

FactorExpression subgraph_decomposition(const CanonGraph& h) {
    int ell = h.num_vertices;
    int eh = h.edge_count();
    FactorExpression expr;
    expr.ell = ell;
    for (const CanonGraph& s : classes_up_to(ell)) {
        auto [c, d] = structure_constants(s, h);
        if (d == 0) continue;
        CoeffTerm t;
        t.scalar = c * d;
        t.pow_sqrt_p = 2 * eh - s.edge_count();
        t.pow_sqrt_1mp = s.edge_count();
        t.binom_args = {s.num_vertices, ell};
        t.q_part = QPoly{1};
        expr.terms.emplace(s, t);
    }
    return expr;
}

QPoly f_poly(const CanonGraph& s, const CanonGraph& h) {
    if (s.has_isolated && s.num_vertices > 0)
        throw DomainError("f polynomials are defined for classes without isolated vertices");
    if (s.num_vertices > h.num_vertices) return {};
    QPoly g = fixed_host_poly(s, h);
    QPoly scale;
    scale.add_term(0, h_copy_count(h));
    return g * scale;
}

FactorExpression induced_decomposition(const CanonGraph& h) {
    int ell = h.num_vertices;
    int eh = h.edge_count();
    int ebar = ell * (ell - 1) / 2 - eh;
    FactorExpression expr;
    expr.ell = ell;
    for (const CanonGraph& s : classes_up_to(ell)) {
        // Coefficient polynomial for a fixed copy of S; the symmetric double
        // sum counts every S-copy and would overstate the coefficient.
        QPoly g = fixed_pattern_poly(s, h);
        if (g.is_zero()) continue;
        CoeffTerm t;
        t.scalar = 1;
        t.pow_sqrt_p = 2 * eh - s.edge_count();
        t.pow_sqrt_1mp = 2 * ebar + s.edge_count();
        t.binom_args = {s.num_vertices, ell};
        t.q_part = g;
        expr.terms.emplace(s, t);
    }
    return expr;
}

QPoly delta_ST(const CanonGraph& s, const CanonGraph& t) {
    if (s.num_vertices != 4) throw DomainError("delta is defined for 4-vertex hosts");
    std::uint32_t smask = identity_mask(s, 4);
    QPoly out;
    for (std::uint32_t tmask : copies_in_complete(t, 4)) out.add_term(std::popcount(tmask & ~smask), 1);
    return out;
}

std::vector<CriticalDensity> critical_densities(const CanonGraph& h) {
    int ell = h.num_vertices;
    if (ell < 3) throw DomainError("critical densities need a graph on at least 3 vertices");

    std::vector<CriticalDensity> out;
    auto add_root = [&](const QRoot& root, int level, const std::string& witness) {
        // p = q/(q-1) maps negative q into (0,1)
        CriticalDensity cd;
        cd.exact = root.exact;
        cd.level = level;
        cd.witness = witness;
        if (root.exact) {
            cd.p = root.value / (root.value - 1);
            cd.p_approx = cd.p.convert_to<double>();
        } else {
            cd.p_approx = root.approx / (root.approx - 1);
        }
        for (CriticalDensity& prev : out) {
            if (prev.exact && cd.exact && prev.p == cd.p) return;
            if (std::abs(prev.p_approx - cd.p_approx) < 1e-12) {
                if (cd.exact && !prev.exact) prev = cd;  // exact identification wins
                return;
            }
        }
        out.push_back(cd);
    };

    for (int k = 3; k <= ell; ++k) {
        std::vector<std::pair<int, int>> star_edges;
        for (int i = 1; i < k; ++i) star_edges.emplace_back(0, i);
        CanonGraph star = canonical_form(k, star_edges);
        QPoly f = f_poly(star, h);
        std::string witness = "star on " + std::to_string(k) + " vertices";
        if (!f.is_zero()) {
            for (const QRoot& r : negative_real_roots(f)) add_root(r, k, witness);
            continue;
        }
        // Degenerate level: a density is critical here only if every
        // connected class on k vertices vanishes at the same q, i.e. at the
        // common roots of all their f polynomials.
        std::vector<QPoly> polys;
        for (const CanonGraph& c : iso_classes(k, false))
            if (c.is_connected) polys.push_back(f_poly(c, h));
        for (const QRoot& r : common_negative_roots(polys))
            add_root(r, k, "all connected classes on " + std::to_string(k) + " vertices");
    }

    std::sort(out.begin(), out.end(),
              [](const CriticalDensity& x, const CriticalDensity& y) { return x.p_approx < y.p_approx; });
    return out;
}

Rational evaluate_gamma(const CanonGraph& s, const BitGraph& x, const Rational& p) {
    Rational r2 = p * (Rational(1) - p);
    Rational r;
    if (!rational_sqrt(r2, r)) throw DomainError("exact evaluation needs p(1-p) to be a rational square");
    Rational num = chi_numerator_sum(s, x, p);
    return num / rational_pow(r, s.edge_count());
}

Rational evaluate(const FactorExpression& expr, const BitGraph& x, int n, const Rational& p,
                  std::map<CanonGraph, Rational>* chi_cache) {
    if (n < expr.ell) throw DomainError("assignment has fewer vertices than the statistic needs");
    if (x.n != n) throw DomainError("assignment size disagrees with n");
    Rational one_m_p = Rational(1) - p;
    if (p <= 0 || one_m_p <= 0) throw DomainError("p must lie strictly between 0 and 1");
    Rational q = -p / one_m_p;

    Rational total = 0;
    for (const auto& [s, term] : expr.terms) {
        Rational chi_num;
        if (chi_cache) {
            auto it = chi_cache->find(s);
            if (it == chi_cache->end()) it = chi_cache->emplace(s, chi_numerator_sum(s, x, p)).first;
            chi_num = it->second;
        } else {
            chi_num = chi_numerator_sum(s, x, p);
        }
        if (chi_num == 0) continue;

        SqrtRat v;
        v.mant = term.scalar * chi_num * Rational(binomial(BigInt(n - term.binom_args.first),
                                                           term.binom_args.second - term.binom_args.first));
        v.mant *= term.q_part.eval(q);
        // gamma contributes sqrt(p(1-p))^{-e(S)}
        v.a = term.pow_sqrt_p - s.edge_count();
        v.b = term.pow_sqrt_1mp - s.edge_count();
        total += require_rational(v, p);
    }
    return total;
}

double evaluate_numeric(const FactorExpression& expr, const BitGraph& x, int n, double p) {
    if (n < expr.ell) throw DomainError("assignment has fewer vertices than the statistic needs");
    if (x.n != n) throw DomainError("assignment size disagrees with n");
    if (!(p > 0 && p < 1)) throw DomainError("p must lie strictly between 0 and 1");
    double r = std::sqrt(p * (1 - p));
    double q = -p / (1 - p);

    double total = 0;
    for (const auto& [s, term] : expr.terms) {
        double chi = 0;
        if (s.num_vertices == 0) {
            chi = 1;
        } else {
            BitGraph complete(x.n);
            for (int i = 0; i < x.n; ++i)
                for (int j = i + 1; j < x.n; ++j) complete.set_edge(i, j);
            for_each_embedding(s, complete, false, [&](const std::vector<int>& image) {
                double prod = 1;
                for (auto [u, v] : s.edges) prod *= (x.has_edge(image[u], image[v]) ? 1.0 : 0.0) - p;
                chi += prod;
            });
            chi /= double(s.aut_order) * std::pow(r, s.edge_count());
        }
        double v = term.scalar.convert_to<double>() * chi;
        v *= std::pow(std::sqrt(p), term.pow_sqrt_p) * std::pow(std::sqrt(1 - p), term.pow_sqrt_1mp);
        v *= binomial(BigInt(n - term.binom_args.first), term.binom_args.second - term.binom_args.first)
                 .convert_to<double>();
        v *= term.q_part.eval(q);
        total += v;
    }
    return total;
}

std::string factor_expression_json(const FactorExpression& expr) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [s, t] : expr.terms) {
        nlohmann::json cls = nlohmann::json::array();
        for (auto [u, v] : s.edges) cls.push_back({u, v});
        nlohmann::json qp = nlohmann::json::array();
        for (const BigInt& c : t.q_part.coeffs) qp.push_back(c.convert_to<long long>());
        terms.push_back({{"class", cls},
                         {"scalar", rational_str(t.scalar)},
                         {"sqrtp", t.pow_sqrt_p},
                         {"sqrt1mp", t.pow_sqrt_1mp},
                         {"binom", {t.binom_args.first, t.binom_args.second}},
                         {"qpoly", qp}});
    }
    return terms.dump(2);
}

}  // namespace gfl
