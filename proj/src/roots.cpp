#include "gfl/roots.hpp"

#include <algorithm>
#include <map>

namespace gfl {

namespace {

using RatPoly = std::vector<Rational>;  // index = power, no trailing zeros

void rp_normalize(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly rp_from(const QPoly& f) {
    RatPoly p;
    for (const BigInt& c : f.coeffs) p.emplace_back(c);
    rp_normalize(p);
    return p;
}

Rational rp_eval(const RatPoly& p, const Rational& x) {
    Rational r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

RatPoly rp_derivative(const RatPoly& p) {
    RatPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(Rational(i) * p[i]);
    return d;
}

// Remainder of a / b.
RatPoly rp_rem(RatPoly a, const RatPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        Rational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        rp_normalize(a);
        if (a.size() < b.size()) break;
    }
    return a;
}

RatPoly rp_gcd(RatPoly a, RatPoly b) {
    rp_normalize(a);
    rp_normalize(b);
    while (!b.empty()) {
        RatPoly r = rp_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (Rational& c : a) c /= lead;
    }
    return a;
}

// Exact division, asserting zero remainder.
RatPoly rp_div_exact(const RatPoly& a, const RatPoly& b) {
    RatPoly rem = a, quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    while (rem.size() >= b.size() && !rem.empty()) {
        Rational f = rem.back() / b.back();
        std::size_t shift = rem.size() - b.size();
        quot[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= f * b[i];
        rem.pop_back();
        rp_normalize(rem);
    }
    rp_normalize(quot);
    return quot;
}

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain{p, rp_derivative(p)};
    while (!chain.back().empty() && chain.back().size() > 1) {
        RatPoly r = rp_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (Rational& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_variations(const std::vector<RatPoly>& chain, const Rational& x) {
    int vars = 0, prev = 0;
    for (const RatPoly& p : chain) {
        Rational v = rp_eval(p, x);
        int s = v == 0 ? 0 : (v > 0 ? 1 : -1);
        if (s != 0) {
            if (prev != 0 && s != prev) ++vars;
            prev = s;
        }
    }
    return vars;
}

std::vector<BigInt> divisors_of(BigInt n) {
    n = abs(n);
    std::map<BigInt, int> fac;
    for (BigInt d = 2; d * d <= n && d <= 1000000; ++d)
        while (n % d == 0) {
            ++fac[d];
            n /= d;
        }
    if (n > 1) ++fac[n];
    std::vector<BigInt> divs{1};
    for (auto& [p, e] : fac) {
        std::size_t base = divs.size();
        BigInt pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) {
                divs.push_back(divs[j] * pk);
                if (divs.size() > 20000) return divs;  // defensive cap
            }
        }
    }
    return divs;
}

}  // namespace

std::vector<QRoot> negative_real_roots(const QPoly& f) {
    std::vector<QRoot> out;
    if (f.is_zero()) return out;

    RatPoly p = rp_from(f);
    // roots at q = 0 are not negative; strip them
    std::size_t lead_zeros = 0;
    while (lead_zeros < p.size() && p[lead_zeros] == 0) ++lead_zeros;
    p.erase(p.begin(), p.begin() + lead_zeros);
    if (p.size() <= 1) return out;

    // exact rational roots -a/b with a | constant, b | leading coefficient,
    // on the integer polynomial obtained by clearing denominators
    BigInt denlcm = 1;
    for (const Rational& c : p) denlcm = lcm(denlcm, denominator(c));
    std::vector<BigInt> ip;
    for (const Rational& c : p) ip.push_back(numerator(c * Rational(denlcm)));
    BigInt content = 0;
    for (const BigInt& c : ip) content = gcd(content, c);
    if (content > 1)
        for (BigInt& c : ip) c /= content;

    std::vector<QRoot> exact_roots;
    for (const BigInt& a : divisors_of(ip.front()))
        for (const BigInt& b : divisors_of(ip.back())) {
            Rational cand(-a, b);
            if (rp_eval(p, cand) == 0) {
                bool dup = false;
                for (const QRoot& r : exact_roots) dup = dup || r.value == cand;
                if (!dup) {
                    QRoot r;
                    r.exact = true;
                    r.value = cand;
                    r.approx = cand.convert_to<double>();
                    exact_roots.push_back(r);
                }
            }
        }

    // deflate the found rational roots, then take the square-free part
    for (const QRoot& r : exact_roots) {
        RatPoly lin{-r.value, Rational(1)};
        while (p.size() > 1 && rp_eval(p, r.value) == 0) p = rp_div_exact(p, lin);
    }
    out = exact_roots;
    rp_normalize(p);
    if (p.size() > 1) {
        RatPoly g = rp_gcd(p, rp_derivative(p));
        if (g.size() > 1) p = rp_div_exact(p, g);
    }

    if (p.size() > 1) {
        // Cauchy bound on root magnitude
        Rational bound = 0;
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
            Rational m = abs(p[i] / p.back());
            if (m > bound) bound = m;
        }
        bound += 1;

        auto chain = sturm_chain(p);
        auto count_in = [&](const Rational& a, const Rational& b) {
            return sign_variations(chain, a) - sign_variations(chain, b);
        };

        struct Interval {
            Rational a, b;
            int count;
        };
        std::vector<Interval> work{{-bound, Rational(0), count_in(-bound, Rational(0))}};
        const Rational eps(1, BigInt(1) << 40);  // < 1e-12

        while (!work.empty()) {
            Interval iv = work.back();
            work.pop_back();
            if (iv.count <= 0) continue;
            if (iv.count == 1) {
                // single simple root: bisect by sign change
                Rational a = iv.a, b = iv.b;
                Rational fa = rp_eval(p, a);
                while (fa == 0) {  // nudge off a root sitting on the endpoint
                    a += (b - a) / 1024;
                    fa = rp_eval(p, a);
                }
                bool found_exact = false;
                while (b - a > eps) {
                    Rational mid = (a + b) / 2;
                    Rational fm = rp_eval(p, mid);
                    if (fm == 0) {
                        QRoot r;
                        r.exact = true;  // landed exactly on a rational root
                        r.value = mid;
                        r.approx = mid.convert_to<double>();
                        out.push_back(r);
                        found_exact = true;
                        break;
                    }
                    if ((fa > 0) == (fm > 0)) {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                if (!found_exact) {
                    QRoot r;
                    r.exact = false;
                    r.approx = ((a + b) / 2).convert_to<double>();
                    out.push_back(r);
                }
            } else {
                Rational mid = (iv.a + iv.b) / 2;
                if (rp_eval(p, mid) == 0) {
                    QRoot r;
                    r.exact = true;
                    r.value = mid;
                    r.approx = mid.convert_to<double>();
                    out.push_back(r);
                    // split strictly around the midpoint root, shrinking the
                    // excluded gap until no other root can hide inside it
                    Rational delta = (iv.b - iv.a) / 1024;
                    int cl = count_in(iv.a, mid - delta);
                    int cr = count_in(mid + delta, iv.b);
                    while (cl + 1 + cr < iv.count) {
                        delta /= 2;
                        cl = count_in(iv.a, mid - delta);
                        cr = count_in(mid + delta, iv.b);
                    }
                    if (cl > 0) work.push_back({iv.a, mid - delta, cl});
                    if (cr > 0) work.push_back({mid + delta, iv.b, cr});
                } else {
                    int cl = count_in(iv.a, mid);
                    int cr = iv.count - cl;
                    if (cl > 0) work.push_back({iv.a, mid, cl});
                    if (cr > 0) work.push_back({mid, iv.b, cr});
                }
            }
        }
    }

    std::sort(out.begin(), out.end(), [](const QRoot& x, const QRoot& y) { return x.approx < y.approx; });
    return out;
}

std::vector<QRoot> common_negative_roots(const std::vector<QPoly>& fs) {
    RatPoly g;
    bool any = false;
    for (const QPoly& f : fs) {
        if (f.is_zero()) continue;
        g = any ? rp_gcd(g, rp_from(f)) : rp_from(f);
        any = true;
        if (g.size() == 1) return {};  // coprime already
    }
    if (!any || g.size() <= 1) return {};

    BigInt denlcm = 1;
    for (const Rational& c : g) denlcm = lcm(denlcm, denominator(c));
    QPoly gi;
    for (const Rational& c : g) gi.coeffs.push_back(numerator(c * Rational(denlcm)));
    gi.normalize();
    return negative_real_roots(gi);
}

}  // namespace gfl
