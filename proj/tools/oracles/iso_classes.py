#!/usr/bin/env python3
"""Count isomorphism classes of graphs on v labeled vertices by brute force.

Enumerates every edge mask, canonicalizes by minimizing over all vertex
permutations, and reports the number of distinct classes. Used to freeze the
expected counts in the unit tests; independent of the C++ implementation.
"""
import itertools
import sys


def classes(v):
    pairs = list(itertools.combinations(range(v), 2))
    index = {e: i for i, e in enumerate(pairs)}
    seen = set()
    for mask in range(1 << len(pairs)):
        best = None
        for perm in itertools.permutations(range(v)):
            m = 0
            for i, (a, b) in enumerate(pairs):
                if mask >> i & 1:
                    pa, pb = perm[a], perm[b]
                    if pa > pb:
                        pa, pb = pb, pa
                    m |= 1 << index[(pa, pb)]
            if best is None or m < best:
                best = m
        seen.add(best)
    return len(seen)


def main():
    vs = [int(a) for a in sys.argv[1:]] or [3, 4, 5]
    for v in vs:
        print(f"v={v}: {classes(v)} classes")


if __name__ == "__main__":
    main()
