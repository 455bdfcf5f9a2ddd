#include "gfl/charfn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "json.hpp"

namespace gfl {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_slice(const SliceSpec& spec) {
    if (spec.n < 0 || spec.n > 40) throw DomainError("slice size out of range (0..40)");
    if (spec.s < 0 || spec.s > spec.n) throw DomainError("conditioned sum out of range");
    if (int(spec.weights.size()) != spec.n) throw DomainError("weight list length mismatch");
}

double binom_double(int n, int k) { return binomial(BigInt(n), k).convert_to<double>(); }

// adaptive Simpson with the classic Richardson acceptance test
double simpson_slab(const std::function<double(double)>& f, double a, double fa, double m,
                    double fm, double b, double fb, double whole, double eps, int depth) {
    double lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15 * eps)
        return left + right + (left + right - whole) / 15;
    return simpson_slab(f, a, fa, lm, flm, m, fm, left, eps / 2, depth - 1) +
           simpson_slab(f, m, fm, rm, frm, b, fb, right, eps / 2, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double eps) {
    double m = (a + b) / 2;
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return simpson_slab(f, a, fa, m, fm, b, fb, whole, eps, 48);
}

}  // namespace

std::complex<double> slice_charfn_exact(const SliceSpec& spec, double t) {
    check_slice(spec);
    std::vector<std::complex<double>> dp(std::size_t(spec.s) + 1);
    dp[0] = 1.0;
    for (int j = 0; j < spec.n; ++j) {
        std::complex<double> phase = std::polar(1.0, t * spec.weights[std::size_t(j)]);
        for (int k = std::min(j + 1, spec.s); k >= 1; --k)
            dp[std::size_t(k)] += dp[std::size_t(k - 1)] * phase;
    }
    return dp[std::size_t(spec.s)] / binom_double(spec.n, spec.s);
}

std::vector<BoundPoint> verify_pointwise_bounds(double p, const std::vector<double>& ts) {
    if (!(p >= 0 && p <= 1)) throw DomainError("density must lie in [0,1]");
    double pq = p * (1 - p);
    std::vector<BoundPoint> out;
    out.reserve(ts.size());
    for (double t : ts) {
        BoundPoint row;
        row.t = t;
        row.phi = std::sqrt(std::max(0.0, 1 - 2 * pq * (1 - std::cos(t))));
        row.bound = 1 - 2 * pq * t * t / (kPi * kPi);
        row.admissible = std::fabs(t) <= kPi + 1e-12;
        row.pass = !row.admissible || row.phi <= row.bound + 1e-12;
        out.push_back(row);
    }
    return out;
}

std::vector<BoundPoint> verify_pointwise_bounds(const SliceSpec& spec,
                                                const std::vector<double>& ts) {
    check_slice(spec);
    if (spec.n == 0) throw DomainError("slice bound needs n >= 1");
    double mean = 0, meansq = 0;
    double lo = spec.weights[0], hi = spec.weights[0];
    for (double a : spec.weights) {
        mean += a / spec.n;
        meansq += a * a / spec.n;
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    double var = meansq - mean * mean;
    double p = double(spec.s) / spec.n;
    double spread = hi - lo;

    std::vector<BoundPoint> out;
    out.reserve(ts.size());
    for (double t : ts) {
        BoundPoint row;
        row.t = t;
        row.phi = std::abs(slice_charfn_exact(spec, t));
        row.bound =
            (spec.n + 1) * std::exp(-2 * p * (1 - p) * t * t * var * spec.n / (kPi * kPi));
        row.admissible = spread * std::fabs(t) <= kPi + 1e-12;
        row.pass = !row.admissible || row.phi <= row.bound + 1e-12;
        out.push_back(row);
    }
    return out;
}

std::string bound_report_json(const std::vector<BoundPoint>& report) {
    nlohmann::json arr = nlohmann::json::array();
    for (const BoundPoint& row : report)
        arr.push_back({{"t", row.t},
                       {"lhs", row.phi},
                       {"rhs", row.bound},
                       {"admissible", row.admissible},
                       {"pass", row.pass}});
    return arr.dump(2);
}

DecouplingReport verify_decoupling(const DecouplingInstance& inst, double t) {
    if (inst.n < 0 || inst.n > 20) throw DomainError("decoupling check limited to n <= 20");
    if (inst.k < 0 || inst.k > 8) throw DomainError("decoupling check limited to k <= 8");
    if (inst.target_sum < 0 || inst.target_sum > inst.n)
        throw DomainError("conditioned sum out of range");
    if (int(inst.block_of.size()) != inst.n) throw DomainError("block map length mismatch");
    if (!(inst.p > 0 && inst.p < 1)) throw DomainError("density must lie in (0,1)");

    std::vector<std::vector<int>> members(std::size_t(inst.k) + 1);
    for (int i = 0; i < inst.n; ++i) {
        int b = inst.block_of[std::size_t(i)];
        if (b < 0 || b > inst.k) throw DomainError("block index out of range");
        members[std::size_t(b)].push_back(i);
    }

    // left side: the slice characteristic function itself
    std::complex<double> phi = 0;
    long long slice_size = 0;
    for (std::uint32_t x = 0; x < (1u << inst.n); ++x) {
        if (std::popcount(x) != inst.target_sum) continue;
        phi += std::polar(1.0, t * inst.f.eval_mask(x));
        ++slice_size;
    }
    phi /= double(slice_size);

    DecouplingReport rep;
    rep.lhs = std::pow(std::abs(phi), double(1u << inst.k));

    // masks of each block grouped by popcount
    auto masks_by_count = [&](const std::vector<int>& idx) {
        std::vector<std::vector<std::uint32_t>> by(idx.size() + 1);
        for (std::uint32_t sub = 0; sub < (1u << idx.size()); ++sub) {
            std::uint32_t m = 0;
            for (std::size_t b = 0; b < idx.size(); ++b)
                if (sub >> b & 1) m |= 1u << idx[b];
            by[std::size_t(std::popcount(sub))].push_back(m);
        }
        return by;
    };
    std::vector<std::vector<std::vector<std::uint32_t>>> by_count;
    for (int b = 0; b <= inst.k; ++b) by_count.push_back(masks_by_count(members[std::size_t(b)]));

    // enumerate block sums z_1..z_k, then all resample pairs, then X
    std::vector<int> z(std::size_t(inst.k) + 1, 0);
    double rhs = 0;
    double total_weight = binom_double(inst.n, inst.target_sum);

    std::function<void(int)> loop_z = [&](int j) {
        if (j <= inst.k) {
            for (z[std::size_t(j)] = 0;
                 z[std::size_t(j)] <= int(members[std::size_t(j)].size()); ++z[std::size_t(j)])
                loop_z(j + 1);
            return;
        }
        int z0 = inst.target_sum;
        for (int b = 1; b <= inst.k; ++b) z0 -= z[std::size_t(b)];
        if (z0 < 0 || z0 > int(members[0].size())) return;
        z[0] = z0;

        double weight = binom_double(int(members[0].size()), z0) / total_weight;
        double config_share = 1;
        for (int b = 1; b <= inst.k; ++b) {
            double c = binom_double(int(members[std::size_t(b)].size()), z[std::size_t(b)]);
            weight *= c;
            config_share /= c * c;
        }

        std::vector<std::uint32_t> y0(std::size_t(inst.k)), y1(std::size_t(inst.k));
        std::function<void(int)> loop_y = [&](int j2) {
            if (j2 <= inst.k) {
                const auto& opts = by_count[std::size_t(j2)][std::size_t(z[std::size_t(j2)])];
                for (std::uint32_t m0 : opts)
                    for (std::uint32_t m1 : opts) {
                        y0[std::size_t(j2 - 1)] = m0;
                        y1[std::size_t(j2 - 1)] = m1;
                        loop_y(j2 + 1);
                    }
                return;
            }
            const auto& xs = by_count[0][std::size_t(z[0])];
            std::complex<double> inner = 0;
            for (std::uint32_t xm : xs) {
                double alpha = 0;
                for (std::uint32_t v = 0; v < (1u << inst.k); ++v) {
                    std::uint32_t full = xm;
                    for (int b = 1; b <= inst.k; ++b)
                        full |= (v >> (b - 1) & 1) ? y1[std::size_t(b - 1)] : y0[std::size_t(b - 1)];
                    alpha += (std::popcount(v) % 2 ? -1.0 : 1.0) * inst.f.eval_mask(full);
                }
                inner += std::polar(1.0, t * alpha);
            }
            inner /= double(xs.size());
            rhs += weight * config_share * std::abs(inner);
        };
        loop_y(1);
    };
    loop_z(1);

    rep.rhs = rhs;
    rep.pass = rep.lhs <= rep.rhs + 1e-12;
    return rep;
}

std::string decoupling_report_json(const std::vector<std::pair<double, DecouplingReport>>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [t, rep] : rows)
        arr.push_back({{"t", t}, {"lhs", rep.lhs}, {"rhs", rep.rhs}, {"pass", rep.pass}});
    return arr.dump(2);
}

InversionReport verify_inversion(const LatticePMF& pmf) {
    if (!(pmf.step > 0)) throw DomainError("lattice step must be positive");
    if (pmf.mass.empty()) throw DomainError("empty pmf");
    double total = 0;
    for (auto [j, m] : pmf.mass) {
        if (m < -1e-15) throw DomainError("negative mass");
        total += m;
    }
    if (std::fabs(total - 1) > 1e-9) throw DomainError("pmf mass must equal 1");

    auto point = [&](long long j) { return pmf.offset + pmf.step * double(j); };
    auto density = [](double x) { return std::exp(-x * x / 2) / std::sqrt(2 * kPi); };

    // cover the support plus everywhere the Gaussian is non-negligible
    long long jlo = std::min(pmf.mass.begin()->first,
                             (long long)std::floor((-12 - pmf.offset) / pmf.step));
    long long jhi = std::max(pmf.mass.rbegin()->first,
                             (long long)std::ceil((12 - pmf.offset) / pmf.step));

    InversionReport rep;
    for (long long j = jlo; j <= jhi; ++j) {
        auto it = pmf.mass.find(j);
        double mass = it == pmf.mass.end() ? 0 : it->second;
        rep.lhs = std::max(rep.lhs, std::fabs(pmf.step * density(point(j)) - mass));
    }

    auto integrand = [&](double t) {
        std::complex<double> phi = 0;
        for (auto [j, m] : pmf.mass) phi += m * std::polar(1.0, t * point(j));
        return std::abs(std::exp(-t * t / 2) - phi);
    };
    // fixed panels first: the integrand can vanish at the endpoints and the
    // midpoint simultaneously, which would fool a single adaptive pass
    double limit = kPi / pmf.step;
    int panels = std::max(8, (int)std::ceil(2 * limit));
    double integral = 0;
    for (int i = 0; i < panels; ++i) {
        double a = -limit + 2 * limit * i / panels;
        double b = -limit + 2 * limit * (i + 1) / panels;
        integral += adaptive_simpson(integrand, a, b, 1e-8 / panels);
    }
    rep.rhs = pmf.step * (integral + std::exp(-kPi * kPi / (2 * pmf.step * pmf.step)));
    rep.pass = rep.lhs <= rep.rhs;
    return rep;
}

}  // namespace gfl
