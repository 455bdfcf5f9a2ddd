#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gfl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(const BigInt& n, int k) {
    if (k < 0 || n < k) return 0;
    BigInt r = 1;
    for (int i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);  // exact: r is always a binomial coefficient here
    }
    return r;
}

inline BigInt falling_factorial(const BigInt& n, int k) {
    BigInt r = 1;
    for (int i = 0; i < k; ++i) r *= (n - i);
    return r;
}

inline Rational rational_pow(const Rational& x, long e) {
    if (e == 0) return 1;
    Rational base = e > 0 ? x : Rational(1) / x;
    unsigned long k = e > 0 ? e : -e;
    Rational r = 1;
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

// Parses "num/den" or a plain integer. Rejects floats and malformed input.
inline Rational parse_rational(const std::string& s) {
    auto bad = [&] { throw std::invalid_argument("not a rational of the form num/den: '" + s + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    auto check_int = [&](const std::string& t) {
        if (t.empty()) bad();
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) bad();
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) bad();
    };
    if (slash == std::string::npos) {
        check_int(s);
        return Rational(BigInt(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check_int(num);
    check_int(den);
    BigInt d(den);
    if (d == 0) bad();
    return Rational(BigInt(num), d);
}

inline std::string rational_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

// Exact integer square root test: returns true and sets root if x is a perfect square.
inline bool perfect_square(const BigInt& x, BigInt& root) {
    if (x < 0) return false;
    root = sqrt(x);
    return root * root == x;
}

// If r = a/b is the square of a rational, returns true and sets out to that square root.
inline bool rational_sqrt(const Rational& r, Rational& out) {
    BigInt rn, rd;
    if (!perfect_square(numerator(r), rn)) return false;
    if (!perfect_square(denominator(r), rd)) return false;
    out = Rational(rn, rd);
    return true;
}

}  // namespace gfl
