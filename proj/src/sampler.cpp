#include "gfl/sampler.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "gfl/errors.hpp"
#include "gfl/philox.hpp"
#include "json.hpp"

namespace gfl {

namespace {

bool is_graph_kind(ModelKind k) {
    return k == ModelKind::gnp || k == ModelKind::gnm || k == ModelKind::gnp_coupled_to_gnm;
}

// Exact Bernoulli(p) draw for rational p. Degenerate densities short-circuit
// so p = 0 and p = 1 are deterministic, not merely almost sure.
struct BernoulliGate {
    enum class Mode { never, always, exact, threshold } mode = Mode::never;
    std::uint64_t num = 0, den = 1;
    std::uint64_t threshold = 0;

    explicit BernoulliGate(const Rational& p) {
        if (p <= 0) {
            mode = Mode::never;
        } else if (p >= 1) {
            mode = Mode::always;
        } else if (denominator(p) <= BigInt(~std::uint64_t(0))) {
            mode = Mode::exact;
            num = numerator(p).convert_to<std::uint64_t>();
            den = denominator(p).convert_to<std::uint64_t>();
        } else {
            mode = Mode::threshold;
            threshold = ((numerator(p) << 64) / denominator(p)).convert_to<std::uint64_t>();
        }
    }

    bool draw(PhiloxRng& rng) const {
        switch (mode) {
            case Mode::never: return false;
            case Mode::always: return true;
            case Mode::exact: return rng.uniform_below(den) < num;
            default: return rng.next_u64() < threshold;
        }
    }
};

// m slots chosen uniformly without replacement from {0, ..., total-1}:
// partial Fisher-Yates with the permutation stored sparsely.
std::vector<long long> choose_slots(PhiloxRng& rng, long long total, long long m) {
    std::vector<long long> picked;
    picked.reserve(m);
    std::unordered_map<long long, long long> moved;
    moved.reserve(std::size_t(m) * 2);
    for (long long i = 0; i < m; ++i) {
        long long j = i + (long long)rng.uniform_below(std::uint64_t(total - i));
        auto jt = moved.find(j);
        long long value_j = jt == moved.end() ? j : jt->second;
        auto it = moved.find(i);
        long long value_i = it == moved.end() ? i : it->second;
        picked.push_back(value_j);
        moved[j] = value_i;
    }
    return picked;
}

BitGraph gnp_draw(int n, const BernoulliGate& gate, PhiloxRng& rng) {
    BitGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (gate.draw(rng)) g.set_edge(i, j);
    return g;
}

BitGraph gnm_draw(int n, long long m, PhiloxRng& rng) {
    long long total = (long long)n * (n - 1) / 2;
    BitGraph g(n);
    for (long long slot : choose_slots(rng, total, m)) {
        auto [u, v] = pair_unrank(slot, n);
        g.set_edge(u, v);
    }
    return g;
}

// Precomputed plan for repeated statistic evaluation.
struct StatPlan {
    enum class Path { edge, three_vertex, four_vertex, generic, kap } path;
    StatisticKind kind;
    CanonGraph pattern;
    int k = 0;
    int class4 = -1;                     // index in the 4-vertex census
    std::array<long long, 11> weight{};  // subgraph copies inside each census class
    bool two_disjoint_edges = false;     // subgraph count has a degree-sum closed form
};

StatPlan make_plan(const StatisticSpec& stat) {
    StatPlan plan;
    plan.kind = stat.kind;
    if (stat.kind == StatisticKind::kap) {
        if (stat.k < 3) throw DomainError("progression length must be at least 3");
        plan.path = StatPlan::Path::kap;
        plan.k = stat.k;
        return plan;
    }
    plan.pattern = stat.pattern;
    int v = stat.pattern.num_vertices;
    if (v == 2 && stat.pattern.edge_count() == 1) {
        plan.path = StatPlan::Path::edge;
    } else if (v == 3 && !stat.pattern.has_isolated) {
        plan.path = StatPlan::Path::three_vertex;
    } else if (v == 4) {
        plan.path = StatPlan::Path::four_vertex;
        plan.two_disjoint_edges =
            stat.kind == StatisticKind::subgraph && stat.pattern == named_graph("K2+K2");
        const std::vector<CanonGraph>& order = ind4_class_order();
        for (int c = 0; c < 11; ++c) {
            if (order[c] == stat.pattern) plan.class4 = c;
            plan.weight[c] = copy_counts(stat.pattern, to_bitgraph(order[c])).subgraph_copies;
        }
    } else {
        plan.path = StatPlan::Path::generic;
    }
    return plan;
}

long long eval_plan(const StatPlan& plan, const BitGraph& x) {
    switch (plan.path) {
        case StatPlan::Path::edge:
            return x.edge_count();
        case StatPlan::Path::three_vertex: {
            long long tri = 0, cherries = 0;
            for (int i = 0; i < x.n; ++i) {
                long long d = x.degree(i);
                cherries += d * (d - 1) / 2;
                for (int j = i + 1; j < x.n; ++j)
                    if (x.has_edge(i, j)) tri += x.common_neighbors(i, j);
            }
            tri /= 3;
            if (plan.pattern.edge_count() == 3) return tri;
            return plan.kind == StatisticKind::subgraph ? cherries : cherries - 3 * tri;
        }
        case StatPlan::Path::four_vertex: {
            if (plan.two_disjoint_edges) {
                // pairs of edges minus pairs sharing a vertex
                long long e = x.edge_count(), shared = 0;
                for (int i = 0; i < x.n; ++i) {
                    long long d = x.degree(i);
                    shared += d * (d - 1) / 2;
                }
                return e * (e - 1) / 2 - shared;
            }
            Ind4Vector iv = ind4_vector(x);
            if (plan.kind == StatisticKind::induced) return iv[plan.class4];
            long long total = 0;
            for (int c = 0; c < 11; ++c) total += plan.weight[c] * iv[c];
            return total;
        }
        case StatPlan::Path::generic: {
            CopyCounts cc = copy_counts(plan.pattern, x);
            return plan.kind == StatisticKind::subgraph ? cc.subgraph_copies : cc.induced_copies;
        }
        default:
            throw DomainError("progression statistics need a subset model");
    }
}

}  // namespace

void validate_model(const ModelSpec& spec) {
    if (spec.n < 0) throw DomainError("vertex count must be nonnegative");
    long long slots = is_graph_kind(spec.kind) ? (long long)spec.n * (spec.n - 1) / 2 : spec.n;
    switch (spec.kind) {
        case ModelKind::gnp:
        case ModelKind::subset_independent:
            if (spec.p < 0 || spec.p > 1) throw DomainError("p must lie in [0,1]");
            break;
        case ModelKind::gnm:
        case ModelKind::subset_fixed_size:
            if (spec.m < 0 || spec.m > slots)
                throw DomainError("m must lie between 0 and the number of available slots");
            break;
        case ModelKind::gnp_coupled_to_gnm:
            if (spec.p < 0 || spec.p > 1) throw DomainError("p must lie in [0,1]");
            if (spec.m < 0 || spec.m > slots)
                throw DomainError("m must lie between 0 and the number of available slots");
            break;
    }
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("GFL_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) return w;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::gnp: return "gnp";
        case ModelKind::gnm: return "gnm";
        case ModelKind::gnp_coupled_to_gnm: return "gnp_coupled_to_gnm";
        case ModelKind::subset_fixed_size: return "subset_fixed_size";
        default: return "subset_independent";
    }
}

GraphSample sample_graph(const ModelSpec& spec, std::uint64_t sample_index) {
    validate_model(spec);
    if (!is_graph_kind(spec.kind)) throw DomainError("not a graph model");
    PhiloxRng rng(spec.seed, sample_index);
    GraphSample out;

    if (spec.kind == ModelKind::gnp) {
        out.graph = gnp_draw(spec.n, BernoulliGate(spec.p), rng);
        return out;
    }
    if (spec.kind == ModelKind::gnm) {
        out.graph = gnm_draw(spec.n, spec.m, rng);
        return out;
    }

    // coupled: draw G(n,p), then flip a uniformly chosen minimal set of
    // edges (surplus) or non-edges (deficit) to land on exactly m
    BitGraph gp = gnp_draw(spec.n, BernoulliGate(spec.p), rng);
    BitGraph gm = gp;
    long long e = gp.edge_count();
    if (e != spec.m) {
        bool removing = e > spec.m;
        std::vector<long long> pool;
        pool.reserve(std::size_t(removing ? e : (long long)spec.n * (spec.n - 1) / 2 - e));
        for (int i = 0; i < spec.n; ++i)
            for (int j = i + 1; j < spec.n; ++j)
                if (gp.has_edge(i, j) == removing) pool.push_back(pair_rank(i, j, spec.n));
        long long adjust = removing ? e - spec.m : spec.m - e;
        for (long long idx : choose_slots(rng, (long long)pool.size(), adjust)) {
            auto [u, v] = pair_unrank(pool[std::size_t(idx)], spec.n);
            gm.flip_edge(u, v);
        }
    }
    out.graph = std::move(gm);
    out.independent_half = std::move(gp);
    return out;
}

std::vector<std::uint8_t> sample_subset(const ModelSpec& spec, std::uint64_t sample_index) {
    validate_model(spec);
    if (is_graph_kind(spec.kind)) throw DomainError("not a subset model");
    PhiloxRng rng(spec.seed, sample_index);
    std::vector<std::uint8_t> x(spec.n, 0);
    if (spec.kind == ModelKind::subset_independent) {
        BernoulliGate gate(spec.p);
        for (int i = 0; i < spec.n; ++i) x[i] = gate.draw(rng) ? 1 : 0;
    } else {
        for (long long slot : choose_slots(rng, spec.n, spec.m)) x[std::size_t(slot)] = 1;
    }
    return x;
}

long long count_kap(const std::vector<std::uint8_t>& x, int k, std::string* warning) {
    if (k < 3) throw DomainError("progression length must be at least 3");
    int n = int(x.size());
    if (n == 0) return 0;
    if (warning) {
        for (int i = 2; i < k; ++i)
            if (std::gcd(n, i) > 1) {
                *warning = "n shares a factor with (k-1)!, progressions may degenerate";
                break;
            }
    }
    long long total = 0;
    for (int d = 1; d <= n / 2; ++d) {
        for (int a = 0; a < n; ++a) {
            int idx = a;
            bool all = true;
            for (int i = 0; i < k; ++i) {
                if (!x[std::size_t(idx)]) {
                    all = false;
                    break;
                }
                idx += d;
                if (idx >= n) idx -= n;
            }
            total += all;
        }
    }
    return total;
}

std::string StatisticSpec::id() const {
    switch (kind) {
        case StatisticKind::subgraph: return "subgraph(" + pattern.to_string() + ")";
        case StatisticKind::induced: return "induced(" + pattern.to_string() + ")";
        default: return "kap(" + std::to_string(k) + ")";
    }
}

long long statistic_value(const StatisticSpec& stat, const BitGraph& x) {
    if (stat.kind == StatisticKind::kap) throw DomainError("progression statistics need a subset model");
    return eval_plan(make_plan(stat), x);
}

long long statistic_value(const StatisticSpec& stat, const std::vector<std::uint8_t>& x) {
    if (stat.kind != StatisticKind::kap) throw DomainError("graph statistics need a graph model");
    return count_kap(x, stat.k);
}

EmpiricalPMF run_simulation(const ModelSpec& spec, const StatisticSpec& stat, long long samples,
                            int workers) {
    validate_model(spec);
    if (samples < 1) throw DomainError("need at least one sample");
    bool graph_model = is_graph_kind(spec.kind);
    if (graph_model != (stat.kind != StatisticKind::kap))
        throw DomainError("statistic does not apply to this model");

    StatPlan plan = make_plan(stat);
    int w = resolve_workers(workers);
    w = int(std::min<long long>(w, samples));

    std::vector<std::map<long long, long long>> local(static_cast<std::size_t>(w));
    std::vector<std::thread> threads;
    threads.reserve(std::size_t(w));
    for (int t = 0; t < w; ++t) {
        threads.emplace_back([&, t] {
            std::map<long long, long long>& hist = local[std::size_t(t)];
            for (long long i = t; i < samples; i += w) {
                long long value;
                if (graph_model) {
                    GraphSample s = sample_graph(spec, std::uint64_t(i));
                    value = eval_plan(plan, s.graph);
                } else {
                    value = statistic_value(stat, sample_subset(spec, std::uint64_t(i)));
                }
                ++hist[value];
            }
        });
    }
    for (std::thread& th : threads) th.join();

    EmpiricalPMF pmf;
    pmf.model = spec;
    pmf.statistic_id = stat.id();
    pmf.total_samples = samples;
    for (const auto& hist : local)
        for (auto [value, count] : hist) pmf.histogram[value] += count;
    return pmf;
}

EmpiricalPMF merge_pmf(const EmpiricalPMF& a, const EmpiricalPMF& b) {
    if (a.statistic_id != b.statistic_id) throw DomainError("cannot merge different statistics");
    if (a.model.kind != b.model.kind || a.model.n != b.model.n || a.model.p != b.model.p ||
        a.model.m != b.model.m)
        throw DomainError("cannot merge different models");
    EmpiricalPMF out = a;
    out.total_samples += b.total_samples;
    for (auto [value, count] : b.histogram) out.histogram[value] += count;
    return out;
}

std::string pmf_to_csv(const EmpiricalPMF& pmf) {
    std::string out = "value,count\n";
    for (auto [value, count] : pmf.histogram)
        out += std::to_string(value) + "," + std::to_string(count) + "\n";
    return out;
}

std::string pmf_to_json(const EmpiricalPMF& pmf) {
    nlohmann::json model{{"kind", model_kind_name(pmf.model.kind)},
                         {"n", pmf.model.n},
                         {"seed", pmf.model.seed}};
    ModelKind k = pmf.model.kind;
    if (k == ModelKind::gnp || k == ModelKind::subset_independent || k == ModelKind::gnp_coupled_to_gnm)
        model["p"] = rational_str(pmf.model.p);
    if (k == ModelKind::gnm || k == ModelKind::subset_fixed_size || k == ModelKind::gnp_coupled_to_gnm)
        model["m"] = pmf.model.m;

    nlohmann::json hist = nlohmann::json::array();
    for (auto [value, count] : pmf.histogram) hist.push_back({value, count});
    nlohmann::json doc{{"statistic", pmf.statistic_id},
                       {"model", model},
                       {"total_samples", pmf.total_samples},
                       {"histogram", hist}};
    return doc.dump(2);
}

}  // namespace gfl
