#pragma once

#include <vector>

#include "gfl/qpoly.hpp"

namespace gfl {

struct QRoot {
    bool exact = false;
    Rational value;      // meaningful when exact
    double approx = 0;   // always set
};

// All real roots q < 0 of f, each once (multiplicity ignored). Rational roots
// are identified exactly via the rational-root theorem; the rest are isolated
// with Sturm sequences and bisected to an interval of width 1e-12.
std::vector<QRoot> negative_real_roots(const QPoly& f);

// Negative real roots shared by every polynomial in the list, i.e. the
// negative roots of their gcd. Zero polynomials are skipped; if all entries
// are zero there is no finite root set and the result is empty.
std::vector<QRoot> common_negative_roots(const std::vector<QPoly>& fs);

}  // namespace gfl
