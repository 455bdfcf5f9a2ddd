#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gfl/canon.hpp"
#include "gfl/qpoly.hpp"
#include "gfl/rational.hpp"
#include "gfl/roots.hpp"

namespace gfl {

// One coefficient of a graph factor in a decomposition:
//   scalar * (sqrt p)^pow_sqrt_p * (sqrt(1-p))^pow_sqrt_1mp
//          * C(n - binom_args.first, binom_args.second - binom_args.first)
//          * q_part(q)              with q = -p/(1-p)
struct CoeffTerm {
    Rational scalar = 1;
    int pow_sqrt_p = 0;
    int pow_sqrt_1mp = 0;
    std::pair<int, int> binom_args{0, 0};  // (v(S), ell)
    QPoly q_part{1};
};

// A statistic written in the graph-factor basis: sum over classes S of
// CoeffTerm(S) * gamma_S. The empty graph carries the constant term.
struct FactorExpression {
    int ell = 0;
    std::map<CanonGraph, CoeffTerm> terms;
};

// c = (ell - v(S))! * aut(S) / aut(H), d = subgraph copies of S in H;
// the empty graph gets (ell!/aut(H), 1).
std::pair<Rational, long long> structure_constants(const CanonGraph& s, const CanonGraph& h);

// Exact expansion of the subgraph copy count of h as a factor expression.
FactorExpression subgraph_decomposition(const CanonGraph& h);

// f_{S,H}(q): double enumeration over copies of S and H inside the complete
// graph on v(H) vertices, weighted q^{|E(S') \ E(H')|}.
QPoly f_poly(const CanonGraph& s, const CanonGraph& h);

// Exact expansion of the induced copy count of h.
FactorExpression induced_decomposition(const CanonGraph& h);

// delta_{S,T}(q): T' runs over copies of T inside the complete graph on the
// 4 vertices of S, weighted q^{|E(T') \ E(S)|}.
QPoly delta_ST(const CanonGraph& s, const CanonGraph& t);

struct CriticalDensity {
    bool exact = false;
    Rational p;        // meaningful when exact
    double p_approx = 0;
    int level = 0;                 // vertex count of the witness star
    std::string witness;           // which convention produced the root
};

// Densities p in (0,1) where the induced-count lattice structure degenerates:
// for each level k in [3, v(h)], the negative real roots of f with the star
// on k vertices as witness, mapped through p = q/(q-1).
std::vector<CriticalDensity> critical_densities(const CanonGraph& h);

// gamma_S evaluated on a concrete 0/1 edge assignment, exactly. Requires
// p(1-p) to be the square of a rational.
Rational evaluate_gamma(const CanonGraph& s, const BitGraph& x, const Rational& p);

// Full expression evaluated on an assignment over K_n. Exact path; throws
// DomainError when n < ell or when the value would be irrational at this p.
// chi_cache, when given, memoizes the per-class copy sums so many
// expressions can be evaluated against one assignment cheaply.
Rational evaluate(const FactorExpression& expr, const BitGraph& x, int n, const Rational& p,
                  std::map<CanonGraph, Rational>* chi_cache = nullptr);

// Floating-point evaluation path for p where sqrt(p(1-p)) is irrational.
double evaluate_numeric(const FactorExpression& expr, const BitGraph& x, int n, double p);

// Serialization of a FactorExpression: JSON array of term objects.
std::string factor_expression_json(const FactorExpression& expr);

}  // namespace gfl
