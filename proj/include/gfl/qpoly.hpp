#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gfl/rational.hpp"

namespace gfl {

// Polynomial in q with exact integer coefficients, index = power of q.
// Canonical form strips trailing zeros; the zero polynomial is empty.
struct QPoly {
    std::vector<BigInt> coeffs;

    QPoly() = default;
    QPoly(std::initializer_list<long long> c) {
        for (long long x : c) coeffs.emplace_back(x);
        normalize();
    }
    explicit QPoly(std::vector<BigInt> c) : coeffs(std::move(c)) { normalize(); }

    void normalize() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }  // -1 for zero

    const BigInt& coeff(int i) const {
        static const BigInt zero = 0;
        return i >= 0 && i < static_cast<int>(coeffs.size()) ? coeffs[i] : zero;
    }

    void add_term(int power, const BigInt& c) {
        if (power >= static_cast<int>(coeffs.size())) coeffs.resize(power + 1, BigInt(0));
        coeffs[power] += c;
        normalize();
    }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        QPoly r;
        r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), BigInt(0));
        for (std::size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] += a.coeffs[i];
        for (std::size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
        r.normalize();
        return r;
    }

    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        QPoly r;
        r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < a.coeffs.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
        r.normalize();
        return r;
    }

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs == b.coeffs; }

    Rational eval(const Rational& q) const {
        Rational r = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * q + Rational(*it);
        return r;
    }

    double eval(double q) const {
        double r = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * q + it->convert_to<double>();
        return r;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const BigInt& c = coeffs[i];
            if (c == 0) continue;
            if (!s.empty()) s += c > 0 ? " + " : " - ";
            else if (c < 0) s += "-";
            BigInt a = abs(c);
            if (a != 1 || i == 0) s += a.str();
            if (i >= 1) s += "q";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }
};

}  // namespace gfl
