#include "gfl/lclt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "gfl/errors.hpp"

namespace gfl {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Tallies of anchored progression pairs (P, Q) over Z/n, keyed by the support
// sizes of P and Q and the size of their support intersection. Progressions
// are indexed by (anchor a, step d) with d in 1..n/2; two progressions with
// anchor offset c intersect in as many points as the multiset
// {u - w mod n : u in supp(P at 0), w in supp(Q at 0)} hits c.
struct PairClasses {
    int k = 0;
    std::vector<long long> anchors_by_support;  // [s] -> number of (a, d) with |supp| = s
    std::vector<long long> cnt;                 // [s][s2][t] flattened

    long long& at(int s, int s2, int t) {
        return cnt[std::size_t((s * (k + 1) + s2) * (k + 1) + t)];
    }
    long long get(int s, int s2, int t) const {
        return cnt[std::size_t((s * (k + 1) + s2) * (k + 1) + t)];
    }
};

PairClasses classify_ap_pairs(int n, int k) {
    PairClasses cls;
    cls.k = k;
    cls.anchors_by_support.assign(std::size_t(k) + 1, 0);
    cls.cnt.assign(std::size_t(k + 1) * (k + 1) * (k + 1), 0);

    int half = n / 2;
    std::vector<std::vector<int>> supp(std::size_t(half) + 1);
    for (int d = 1; d <= half; ++d) {
        std::vector<int>& s = supp[std::size_t(d)];
        long long x = 0;
        for (int i = 0; i < k; ++i, x = (x + d) % n) s.push_back(int(x));
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        cls.anchors_by_support[s.size()] += n;
    }

    std::vector<int> diffs;
    diffs.reserve(std::size_t(k) * k);
    for (int d = 1; d <= half; ++d) {
        const std::vector<int>& a = supp[std::size_t(d)];
        for (int d2 = 1; d2 <= half; ++d2) {
            const std::vector<int>& b = supp[std::size_t(d2)];
            diffs.clear();
            for (int u : a)
                for (int w : b) diffs.push_back((u - w + n) % n);
            std::sort(diffs.begin(), diffs.end());
            int s = int(a.size()), s2 = int(b.size()), distinct = 0;
            for (std::size_t i = 0; i < diffs.size();) {
                std::size_t j = i;
                while (j < diffs.size() && diffs[j] == diffs[i]) ++j;
                cls.at(s, s2, int(j - i)) += n;
                ++distinct;
                i = j;
            }
            cls.at(s, s2, 0) += (long long)n * (n - distinct);
        }
    }
    return cls;
}

std::vector<Rational> rational_powers(const Rational& p, int top) {
    std::vector<Rational> pow(std::size_t(top) + 1, Rational(1));
    for (int i = 1; i <= top; ++i) pow[std::size_t(i)] = pow[std::size_t(i - 1)] * p;
    return pow;
}

void check_kap_args(int n, int k) {
    if (n <= 0) throw DomainError("progression moments need n >= 1");
    if (k < 3) throw DomainError("progression length must be at least 3");
}

}  // namespace

ThetaMultiplier kap_multiplier(int n, int k, double p, double comb_width) {
    ThetaMultiplier m;
    m.comb_width = comb_width;
    m.arg0 = p * n + (1 - p) * (k - 1) / 2;
    m.arg1 = std::sqrt(p * (1 - p) * n);
    m.arg2 = -(1 - p) * (k - 1) / 2;
    return m;
}

double gaussian_density(double z) { return std::exp(-z * z / 2) / std::sqrt(kTwoPi); }

double theta_comb(double x, double width) {
    if (!(width > 0)) throw DomainError("theta comb width must be positive");
    long long center = std::llround(x);
    double sum = 0;
    for (long long m = center;; --m) {
        double term = gaussian_density((x - double(m)) / width) / width;
        sum += term;
        if (term < 1e-16) break;
    }
    for (long long m = center + 1;; ++m) {
        double term = gaussian_density((x - double(m)) / width) / width;
        sum += term;
        if (term < 1e-16) break;
    }
    return sum;
}

double law_density(const LatticeLaw& law, double z) {
    double d = gaussian_density(z);
    if (law.multiplier) {
        const ThetaMultiplier& m = *law.multiplier;
        d *= theta_comb(m.arg0 + m.arg1 * z + m.arg2 * z * z, m.comb_width);
    }
    return d;
}

double law_mass(const LatticeLaw& law, double x) {
    return law.lattice_step / law.std * law_density(law, (x - law.mean) / law.std);
}

double theta_prediction(double z, int n, int k, double p, double comb_width) {
    ThetaMultiplier m = kap_multiplier(n, k, p, comb_width);
    return gaussian_density(z) * theta_comb(m.arg0 + m.arg1 * z + m.arg2 * z * z, m.comb_width);
}

DistanceReport lclt_distances(const EmpiricalPMF& pmf, const LatticeLaw& law,
                              double window_sigmas) {
    if (!(law.std > 0)) throw DomainError("lattice law needs positive std");
    if (!(law.lattice_step > 0)) throw DomainError("lattice law needs positive step");
    if (pmf.total_samples <= 0) throw DomainError("empty empirical pmf");

    double lo = law.mean - window_sigmas * law.std;
    double hi = law.mean + window_sigmas * law.std;
    long long jlo = (long long)std::ceil((lo - law.lattice_offset) / law.lattice_step - 1e-9);
    long long jhi = (long long)std::floor((hi - law.lattice_offset) / law.lattice_step + 1e-9);

    DistanceReport rep;
    double total = double(pmf.total_samples), matched = 0;
    for (long long j = jlo; j <= jhi; ++j) {
        double x = law.lattice_offset + law.lattice_step * double(j);
        double z = (x - law.mean) / law.std;
        double predicted = law.lattice_step / law.std * law_density(law, z);
        double empirical = 0;
        long long key = std::llround(x);
        if (std::fabs(x - double(key)) < 1e-6) {
            auto it = pmf.histogram.find(key);
            if (it != pmf.histogram.end()) empirical = double(it->second) / total;
        }
        matched += empirical;
        rep.sup_dist = std::max(
            rep.sup_dist, std::fabs(law.std * empirical / law.lattice_step - law_density(law, z)));
        rep.l1_dist += std::fabs(empirical - predicted);
    }
    rep.outside_mass = std::max(0.0, 1.0 - matched);
    rep.l1_dist += rep.outside_mass;
    return rep;
}

std::string law_curve_csv(const EmpiricalPMF& pmf, const LatticeLaw& law, double window_sigmas) {
    if (!(law.std > 0)) throw DomainError("lattice law needs positive std");
    if (pmf.total_samples <= 0) throw DomainError("empty empirical pmf");

    long long jlo = (long long)std::ceil(
        (law.mean - window_sigmas * law.std - law.lattice_offset) / law.lattice_step - 1e-9);
    long long jhi = (long long)std::floor(
        (law.mean + window_sigmas * law.std - law.lattice_offset) / law.lattice_step + 1e-9);

    std::ostringstream out;
    out.precision(12);
    out << "z,predicted_mass,empirical_mass\n";
    for (long long j = jlo; j <= jhi; ++j) {
        double x = law.lattice_offset + law.lattice_step * double(j);
        double z = (x - law.mean) / law.std;
        double empirical = 0;
        long long key = std::llround(x);
        if (std::fabs(x - double(key)) < 1e-6) {
            auto it = pmf.histogram.find(key);
            if (it != pmf.histogram.end())
                empirical = double(it->second) / double(pmf.total_samples);
        }
        out << z << ',' << law_mass(law, x) << ',' << empirical << '\n';
    }
    return out.str();
}

KapMoments kap_moments(int n, int k, const Rational& p, KapModel model) {
    check_kap_args(n, k);
    PairClasses cls = classify_ap_pairs(n, k);

    KapMoments out;
    if (model == KapModel::independent) {
        std::vector<Rational> pw = rational_powers(p, 2 * k);
        for (int s = 1; s <= k; ++s)
            out.mean += Rational(cls.anchors_by_support[std::size_t(s)]) * pw[std::size_t(s)];
        for (int s = 1; s <= k; ++s)
            for (int s2 = 1; s2 <= k; ++s2)
                for (int t = 1; t <= std::min(s, s2); ++t) {
                    long long c = cls.get(s, s2, t);
                    if (c == 0) continue;
                    out.variance +=
                        Rational(c) * (pw[std::size_t(s + s2 - t)] - pw[std::size_t(s + s2)]);
                }
    } else {
        // exactly m = p*n ones: a support of size u is fully hit with
        // probability lambda_u = prod_{i<u} (m - i)/(n - i)
        std::vector<Rational> lambda(std::size_t(2 * k) + 1, Rational(1));
        Rational m = p * n;
        for (int u = 1; u <= 2 * k; ++u)
            lambda[std::size_t(u)] =
                lambda[std::size_t(u - 1)] * (m - (u - 1)) / Rational(n - (u - 1));
        for (int s = 1; s <= k; ++s)
            out.mean += Rational(cls.anchors_by_support[std::size_t(s)]) * lambda[std::size_t(s)];
        for (int s = 1; s <= k; ++s)
            for (int s2 = 1; s2 <= k; ++s2)
                for (int t = 0; t <= std::min(s, s2); ++t) {
                    long long c = cls.get(s, s2, t);
                    if (c == 0) continue;
                    out.variance += Rational(c) * (lambda[std::size_t(s + s2 - t)] -
                                                   lambda[std::size_t(s)] * lambda[std::size_t(s2)]);
                }
    }

    double pd = p.convert_to<double>();
    out.sigma_asymptotic =
        std::pow(pd, k - 0.5) * std::sqrt(1 - pd) * k * std::pow(double(n), 1.5) / 2;
    return out;
}

Rational kap_chi_tail_variance(int n, int k, const Rational& p, int min_degree) {
    check_kap_args(n, k);
    if (min_degree < 0) throw DomainError("min_degree must be non-negative");
    PairClasses cls = classify_ap_pairs(n, k);

    // Orthonormal expansion: the squared coefficient mass of the monomials of
    // degree tau supported inside both P and Q is C(|supp intersection|, tau)
    // p^(sP - tau) p^(sQ - tau) (p(1-p))^tau, summed over anchored pairs.
    std::vector<Rational> pw = rational_powers(p, 2 * k);
    Rational r2 = p * (Rational(1) - p);
    std::vector<Rational> r2pow = rational_powers(r2, k);

    Rational sum;
    for (int s = 1; s <= k; ++s)
        for (int s2 = 1; s2 <= k; ++s2)
            for (int t = std::max(1, min_degree); t <= std::min(s, s2); ++t) {
                long long c = cls.get(s, s2, t);
                if (c == 0) continue;
                Rational inner;
                for (int tau = std::max(1, min_degree); tau <= t; ++tau)
                    inner += Rational(binomial(BigInt(t), tau)) * r2pow[std::size_t(tau)] *
                             pw[std::size_t(s - tau)] * pw[std::size_t(s2 - tau)];
                sum += Rational(c) * inner;
            }
    return sum;
}

double ckp(int n, int k, const Rational& p) {
    check_kap_args(n, k);
    Rational tail = kap_chi_tail_variance(n, k, p, 3);
    Rational full = kap_moments(n, k, p, KapModel::independent).variance;
    if (full == 0) throw DomainError("degenerate progression count");
    double sigma = std::sqrt(tail.convert_to<double>());
    double sigma_k = std::sqrt(full.convert_to<double>());
    double pd = p.convert_to<double>();
    return sigma * std::sqrt(double(n) * pd * (1 - pd)) / sigma_k;
}

Rational expected_count_given_m(const CanonGraph& h, int n, long long m) {
    if (n < 0) throw DomainError("vertex count must be non-negative");
    BigInt slots = BigInt(n) * (n - 1) / 2;
    if (m < 0 || BigInt(m) > slots) throw DomainError("edge count out of range");
    if (h.num_vertices > n) return Rational(0);

    Rational out = Rational(binomial(BigInt(n), h.num_vertices)) *
                   Rational(factorial(h.num_vertices), h.aut_order);
    for (int i = 0; i < h.edge_count(); ++i) {
        if (m == i) return Rational(0);  // fewer edges than the pattern needs
        out *= Rational(BigInt(m - i), slots - i);
    }
    return out;
}

GraphMoments triangle_moments(const ModelSpec& model) {
    validate_model(model);
    if (model.kind != ModelKind::gnp && model.kind != ModelKind::gnm)
        throw DomainError("triangle moments need an independent or fixed-edge-count graph model");

    int n = model.n;
    BigInt slots = BigInt(n) * (n - 1) / 2;
    // probability that j prescribed pairs are all edges
    auto lam = [&](int j) {
        if (model.kind == ModelKind::gnp) return rational_pow(model.p, j);
        Rational r(1);
        for (int i = 0; i < j; ++i) {
            if (model.m == i) return Rational(0);
            r *= Rational(BigInt(model.m - i), slots - i);
        }
        return r;
    };

    // ordered pairs of triangles, classified by how many vertices they share:
    // identical (3 edges up), sharing an edge (5), sharing at most a vertex (6)
    Rational t3 = Rational(binomial(BigInt(n), 3));
    Rational share_edge = Rational(slots) * (n - 2) * (n - 3);
    Rational mean = t3 * lam(3);
    Rational second = t3 * lam(3) + share_edge * lam(5) + (t3 * t3 - t3 - share_edge) * lam(6);
    return {mean, second - mean * mean};
}

}  // namespace gfl
