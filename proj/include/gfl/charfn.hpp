#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gfl/errors.hpp"
#include "gfl/rational.hpp"

namespace gfl {

// Uniform distribution on {0,1}^n conditioned on exactly s ones, observed
// through the weighted sum  sum_j weights[j] * x_j.
struct SliceSpec {
    int n = 0;
    int s = 0;
    std::vector<double> weights;
};

// E[e^{it sum a_j x_j}] over the uniform slice, by dynamic programming over
// (prefix length, ones used). Exact up to double rounding; O(n*s) per t.
std::complex<double> slice_charfn_exact(const SliceSpec& spec, double t);

// One grid point of a pointwise |phi| <= bound check. Points where the
// inequality's admissibility condition fails are reported but not judged.
struct BoundPoint {
    double t = 0;
    double phi = 0;    // |characteristic function|, computed exactly
    double bound = 0;  // the closed-form right-hand side
    bool admissible = true;
    bool pass = true;
};

// |E e^{itY}| = sqrt(1 - 2p(1-p)(1 - cos t)) against 1 - 2p(1-p)t^2/pi^2,
// admissible for |t| <= pi.
std::vector<BoundPoint> verify_pointwise_bounds(double p, const std::vector<double>& ts);

// slice modulus against (n+1)exp(-2p(1-p)t^2 Var[a_j] n / pi^2) with p = s/n,
// admissible when |(a_j - a_k)t| <= pi for every pair of weights.
std::vector<BoundPoint> verify_pointwise_bounds(const SliceSpec& spec,
                                                const std::vector<double>& ts);

std::string bound_report_json(const std::vector<BoundPoint>& report);

// Alternating resample operator: maps f(X, Y_1..Y_k) to the function of
// (X, Y^0, Y^1) given by  sum over v in {0,1}^k of (-1)^|v| f(X, Y^v).
// Costs 2^k evaluations of f per call.
template <typename V>
std::function<double(const V&, const std::vector<V>&, const std::vector<V>&)> alpha_operator(
    std::function<double(const V&, const std::vector<V>&)> f, int k) {
    if (k < 0) throw DomainError("alpha operator needs k >= 0");
    if (k > 20) throw DomainError("alpha operator: k too large");
    return [f, k](const V& x, const std::vector<V>& y0, const std::vector<V>& y1) {
        if (int(y0.size()) != k || int(y1.size()) != k)
            throw DomainError("alpha operator: block count mismatch");
        double sum = 0;
        std::vector<V> pick(static_cast<std::size_t>(k));
        for (std::uint32_t v = 0; v < (1u << k); ++v) {
            int bits = 0;
            for (int j = 0; j < k; ++j) {
                bool one = (v >> j) & 1;
                pick[std::size_t(j)] = one ? y1[std::size_t(j)] : y0[std::size_t(j)];
                bits += one;
            }
            sum += (bits % 2 ? -1.0 : 1.0) * f(x, pick);
        }
        return sum;
    };
}

// Multilinear function of x in {0,1}^n: each monomial is the product of the
// coordinates in its mask.
struct MultilinearF {
    std::map<std::uint32_t, long long> coeffs;
    double eval_mask(std::uint32_t x) const {
        double sum = 0;
        for (auto [mono, c] : coeffs)
            if ((mono & x) == mono) sum += double(c);
        return sum;
    }
};

// Independent Bernoulli coordinates conditioned on total sum target_sum,
// partitioned into a base block A (block_of[i] == 0) and resample blocks
// B_1..B_k (block_of[i] == j). The conditioned law is uniform on the slice,
// so p only has to be a valid density.
struct DecouplingInstance {
    int n = 0;
    int target_sum = 0;
    Rational p = Rational(1, 2);
    std::vector<int> block_of;
    int k = 0;
    MultilinearF f;
};

struct DecouplingReport {
    double lhs = 0;  // |phi(t)|^(2^k)
    double rhs = 0;  // E_{Z,Y}|E_X[e^{it alpha(f)} | Z]|
    bool pass = false;
};

// Both sides of the conditioned decoupling inequality, by exhaustive
// enumeration of the slice and of all resample configurations.
DecouplingReport verify_decoupling(const DecouplingInstance& inst, double t);

std::string decoupling_report_json(const std::vector<std::pair<double, DecouplingReport>>& rows);

// Finitely supported law on the lattice {offset + step * j}.
struct LatticePMF {
    double offset = 0;
    double step = 1;
    std::map<long long, double> mass;
};

struct InversionReport {
    double lhs = 0;  // sup over the lattice of |step * N(x) - P[X = x]|
    double rhs = 0;  // step * (integral of |phi_N - phi_X| over [-pi/step, pi/step] + tail)
    bool pass = false;
};

// Gaussian inversion bound for a lattice law, with the characteristic
// function computed exactly from the pmf and the integral by adaptive
// Simpson quadrature to tolerance 1e-8.
InversionReport verify_inversion(const LatticePMF& pmf);

}  // namespace gfl
