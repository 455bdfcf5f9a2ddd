#!/usr/bin/env python3
"""Expand the triangle count on K_5 into the centered edge basis directly.

Writes each edge variable as x_e = p + r*chi_e with r = sqrt(p(1-p)), expands
the product over every triangle symbolically (exact fractions, for p where r
is rational), and groups the resulting chi monomials by the isomorphism class
of their edge support. All monomials in one class must share a coefficient,
and those coefficients are the values frozen in the unit tests.
"""
import itertools
from fractions import Fraction


def canon_class(edges):
    verts = sorted({v for e in edges for v in e})
    k = len(verts)
    relab = {v: i for i, v in enumerate(verts)}
    es = [(relab[a], relab[b]) for a, b in edges]
    best = None
    for perm in itertools.permutations(range(k)):
        m = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in es))
        if best is None or m < best:
            best = m
    return (k, best)


def main():
    n = 5
    pairs = list(itertools.combinations(range(n), 2))
    index = {e: i for i, e in enumerate(pairs)}
    triangles = list(itertools.combinations(range(n), 3))

    for p, r in [(Fraction(1, 2), Fraction(1, 2)), (Fraction(4, 5), Fraction(2, 5))]:
        # coefficient of each chi monomial (frozenset of edges)
        coeffs = {}
        for tri in triangles:
            tri_edges = [tuple(sorted(e)) for e in itertools.combinations(tri, 2)]
            for sub in range(8):
                chosen = [e for i, e in enumerate(tri_edges) if sub >> i & 1]
                c = p ** (3 - len(chosen)) * r ** len(chosen)
                key = frozenset(chosen)
                coeffs[key] = coeffs.get(key, Fraction(0)) + c

        by_class = {}
        for key, c in coeffs.items():
            cls = canon_class(sorted(key)) if key else (0, ())
            by_class.setdefault(cls, set()).add(c)

        print(f"p = {p}:")
        for cls in sorted(by_class):
            vals = by_class[cls]
            assert len(vals) == 1, f"class {cls} has mixed coefficients {vals}"
            print(f"  v={cls[0]} edges={cls[1]}: {next(iter(vals))}")


if __name__ == "__main__":
    main()
