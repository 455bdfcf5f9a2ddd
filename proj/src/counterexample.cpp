#include "gfl/counterexample.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>
#include <utility>

#include <nlohmann/json.hpp>

#include "gfl/errors.hpp"
#include "gfl/factor.hpp"
#include "gfl/philox.hpp"
#include "gfl/sampler.hpp"

namespace gfl {

namespace {

using nlohmann::json;

struct PhiPattern {
    std::string name;
    CanonGraph pattern;
};

const std::vector<PhiPattern>& connected_patterns() {
    static const std::vector<PhiPattern> patterns = [] {
        std::vector<PhiPattern> out;
        out.push_back({"P2", named_graph("P2")});
        out.push_back({"K3", named_graph("K3")});
        out.push_back({"P3", named_graph("P3")});
        out.push_back({"K1,3", named_graph("K1,3")});
        out.push_back({"C4", named_graph("C4")});
        out.push_back({"paw", canonical_form(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}})});
        out.push_back({"diamond", canonical_form(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}})});
        out.push_back({"K4", named_graph("K4")});
        return out;
    }();
    return patterns;
}

// delta row of t over the 11 census classes.
std::vector<QPoly> delta_row(const CanonGraph& t) {
    std::vector<QPoly> row;
    for (const CanonGraph& s : ind4_class_order()) row.push_back(delta_ST(s, t));
    return row;
}

BigInt integer_value(const Rational& r, const char* what) {
    if (denominator(r) != 1) throw DomainError(std::string(what) + " is not an integer");
    return numerator(r);
}

long long checked_pairs(int n) { return (long long)n * (n - 1) / 2; }

// Census mask of the four vertices q0 < q1 < q2 < q3, bit order
// (q0,q1),(q0,q2),(q0,q3),(q1,q2),(q1,q3),(q2,q3).
int quad_mask(const BitGraph& g, const std::array<int, 4>& q) {
    return g.has_edge(q[0], q[1]) | (g.has_edge(q[0], q[2]) << 1) |
           (g.has_edge(q[0], q[3]) << 2) | (g.has_edge(q[1], q[2]) << 3) |
           (g.has_edge(q[1], q[3]) << 4) | (g.has_edge(q[2], q[3]) << 5);
}

int pair_bit(int pos_a, int pos_b) {
    static constexpr int table[4][4] = {
        {-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[pos_a][pos_b];
}

long long objective_of(const Ind4Vector& cur, const Ind4Vector& target,
                       const std::array<long long, 11>& weights) {
    long long obj = 0;
    for (int c = 0; c < 11; ++c) obj += weights[std::size_t(c)] * std::llabs(cur[c] - target[c]);
    return obj;
}

struct RestartOutcome {
    bool found = false;
    long long objective = 0;
    BitGraph graph;
    std::vector<TracePoint> trace;
};

// One full local-search restart. Deterministic in (cfg, restart).
RestartOutcome run_restart(const SearchConfig& cfg, int restart, long long init_edges,
                           const std::atomic<int>& best_hit) {
    int n = cfg.num_vertices;
    ModelSpec init;
    init.kind = ModelKind::gnm;
    init.n = n;
    init.m = init_edges;
    init.seed = cfg.seed;
    BitGraph g = sample_graph(init, std::uint64_t(restart)).graph;

    PhiloxRng rng(cfg.seed ^ 0x9E3779B97F4A7C15ull, std::uint64_t(restart));
    Ind4Vector cur = ind4_vector(g);
    long long obj = objective_of(cur, cfg.target, cfg.weights);

    RestartOutcome out;
    out.trace.push_back({0, obj});
    long long trace_stride = 1, improvements = 0;

    long long pairs = checked_pairs(n);
    long long edges = g.edge_count();

    auto random_pair = [&rng, pairs, n] {
        return pair_unrank((long long)rng.uniform_below(std::uint64_t(pairs)), n);
    };

    for (long long step = 1; step <= cfg.max_steps && obj != 0; ++step) {
        if ((step & 1023) == 0 && best_hit.load(std::memory_order_relaxed) < restart)
            break;  // a lower restart already hit the target; this one cannot win

        // Proposals: a corrective flip while the edge count is off the value
        // the target implies, otherwise a swap of a present pair for an
        // absent one, which keeps the walk on that edge-count shell.
        int u1, v1, u2 = -1, v2 = -1;
        if (edges != init_edges) {
            bool want_removal = edges > init_edges;
            do {
                auto [a, b] = random_pair();
                u1 = a;
                v1 = b;
            } while (g.has_edge(u1, v1) != want_removal);
        } else if (edges == 0 || edges == pairs) {
            auto [a, b] = random_pair();  // no swap exists on a full or empty shell
            u1 = a;
            v1 = b;
        } else {
            do {
                auto [a, b] = random_pair();
                u1 = a;
                v1 = b;
            } while (!g.has_edge(u1, v1));
            do {
                auto [a, b] = random_pair();
                u2 = a;
                v2 = b;
            } while (g.has_edge(u2, v2));
        }

        std::array<long long, 11> delta = census_flip_delta(g, u1, v1);
        if (u2 >= 0) {
            g.flip_edge(u1, v1);
            std::array<long long, 11> second = census_flip_delta(g, u2, v2);
            g.flip_edge(u1, v1);
            for (int c = 0; c < 11; ++c) delta[std::size_t(c)] += second[std::size_t(c)];
        }

        long long cand = 0;
        for (int c = 0; c < 11; ++c)
            cand += cfg.weights[std::size_t(c)] *
                    std::llabs(cur[c] + delta[std::size_t(c)] - cfg.target[c]);

        bool accept = cand < obj || (cand == obj && rng.uniform_below(10) == 0);
        if (!accept) continue;
        bool removed = g.has_edge(u1, v1);
        g.flip_edge(u1, v1);
        if (u2 >= 0)
            g.flip_edge(u2, v2);
        else
            edges += removed ? -1 : 1;
        for (int c = 0; c < 11; ++c) cur.counts[std::size_t(c)] += delta[std::size_t(c)];
        if (cand < obj) {
            ++improvements;
            if (improvements % trace_stride == 0) {
                out.trace.push_back({step, cand});
                if (out.trace.size() > 16384) {  // thin deterministically
                    std::vector<TracePoint> kept;
                    for (std::size_t i = 0; i < out.trace.size(); i += 2)
                        kept.push_back(out.trace[i]);
                    out.trace = std::move(kept);
                    trace_stride *= 2;
                }
            }
        }
        obj = cand;
    }

    out.found = obj == 0;
    out.objective = obj;
    out.graph = std::move(g);
    if (out.trace.back().objective != obj) out.trace.push_back({cfg.max_steps, obj});
    return out;
}

json phi_report_to_json(const PhiReport& rep) {
    json entries = json::array();
    for (const PhiEntry& entry : rep.connected)
        entries.push_back({{"pattern", entry.name}, {"value", entry.value.str()}});
    return {{"connected", entries}, {"edge_value", rep.edge_value.str()}, {"pass", rep.pass}};
}

}  // namespace

std::array<long long, 11> census_flip_delta(const BitGraph& g, int u, int v) {
    if (g.n < 4) throw DomainError("census needs a host with at least 4 vertices");
    if (u == v || u < 0 || v < 0 || u >= g.n || v >= g.n)
        throw DomainError("flip endpoints must be two distinct vertices");
    const auto& table = ind4_mask_table();
    std::array<long long, 11> delta{};
    for (int a = 0; a < g.n; ++a) {
        if (a == u || a == v) continue;
        for (int b = a + 1; b < g.n; ++b) {
            if (b == u || b == v) continue;
            std::array<int, 4> quad = {u, v, a, b};
            std::sort(quad.begin(), quad.end());
            int pos_u = int(std::find(quad.begin(), quad.end(), u) - quad.begin());
            int pos_v = int(std::find(quad.begin(), quad.end(), v) - quad.begin());
            int mask = quad_mask(g, quad);
            --delta[std::size_t(table[std::size_t(mask)])];
            ++delta[std::size_t(table[std::size_t(mask ^ (1 << pair_bit(pos_u, pos_v)))])];
        }
    }
    return delta;
}

Rational phi_coefficient(const CanonGraph& t, const Ind4Vector& ind4, const Rational& q) {
    if (t.num_vertices > 4) throw DomainError("pattern must have at most 4 vertices");
    if (t.has_isolated) throw DomainError("pattern must not have isolated vertices");
    std::vector<QPoly> row = delta_row(t);
    Rational total = 0;
    for (int c = 0; c < 11; ++c) total += row[std::size_t(c)].eval(q) * Rational(ind4[c]);
    return total;
}

Rational phi_coefficient(const CanonGraph& t, const BitGraph& host, const Rational& q) {
    return phi_coefficient(t, ind4_vector(host), q);
}

PhiReport phi_report(const Ind4Vector& ind4) {
    PhiReport rep;
    const Rational minus_one(-1);
    bool all_zero = true;
    for (const PhiPattern& entry : connected_patterns()) {
        BigInt value = integer_value(phi_coefficient(entry.pattern, ind4, minus_one),
                                     "vanishing condition");
        all_zero = all_zero && value == 0;
        rep.connected.push_back({entry.name, value});
    }
    rep.edge_value =
        integer_value(phi_coefficient(named_graph("K2"), ind4, minus_one), "edge condition");
    rep.pass = all_zero && rep.edge_value != 0;
    return rep;
}

const Ind4Vector& counterexample64_ind4() {
    static const Ind4Vector reference{
        {11835, 67163, 126632, 31723, 39646, 119198, 39646, 27941, 111504, 52035, 8053}};
    return reference;
}

CounterexampleReport verify_counterexample(const BitGraph& host) {
    CounterexampleReport rep;
    rep.num_vertices = host.n;
    rep.num_edges = host.edge_count();
    rep.ind4 = ind4_vector(host);
    rep.phi = phi_report(rep.ind4);
    rep.matches_reference = host.n == kCounterexample64Vertices &&
                            rep.num_edges == kCounterexample64Edges &&
                            rep.ind4 == counterexample64_ind4();
    return rep;
}

std::string counterexample_report_json(const CounterexampleReport& rep) {
    json out;
    out["num_vertices"] = rep.num_vertices;
    out["num_edges"] = rep.num_edges;
    out["ind4"] = rep.ind4.counts;
    out["phi"] = phi_report_to_json(rep.phi);
    out["matches_reference"] = rep.matches_reference;
    out["pass"] = rep.phi.pass;
    return out.dump(2);
}

TargetDiagnostic diagnose_target(const Ind4Vector& target, int num_vertices) {
    if (num_vertices < 4) throw DomainError("need at least 4 vertices");
    TargetDiagnostic diag;
    diag.phi = phi_report(target);

    BigInt sum = 0;
    for (int c = 0; c < 11; ++c) sum += BigInt(target[c]);
    diag.sum_matches = sum == binomial(BigInt(num_vertices), 4);

    BigInt weighted = 0;
    const std::vector<CanonGraph>& order = ind4_class_order();
    for (int c = 0; c < 11; ++c) weighted += BigInt(order[std::size_t(c)].edge_count()) * target[c];
    diag.implied_edges = Rational(weighted, BigInt(checked_pairs(num_vertices - 2)));
    diag.edges_integral = denominator(diag.implied_edges) == 1 &&
                          diag.implied_edges >= 0 &&
                          diag.implied_edges <= Rational(checked_pairs(num_vertices));
    return diag;
}

SearchResult search_counterexample(const SearchConfig& cfg) {
    if (cfg.num_vertices < 4) throw DomainError("need at least 4 vertices");
    if (cfg.restarts < 1) throw DomainError("need at least one restart");
    if (cfg.max_steps < 0) throw DomainError("step budget must be nonnegative");
    for (long long w : cfg.weights)
        if (w <= 0) throw DomainError("objective weights must be positive");
    for (long long c : cfg.target.counts)
        if (c < 0) throw DomainError("target counts must be nonnegative");

    SearchResult res;
    res.diagnostic = diagnose_target(cfg.target, cfg.num_vertices);
    if (!res.diagnostic.sum_matches)
        throw DomainError("target counts must sum to the number of 4-subsets");

    long long init_edges = 0;
    if (res.diagnostic.implied_edges > 0) {
        init_edges = llround(res.diagnostic.implied_edges.convert_to<double>());
        init_edges = std::clamp(init_edges, 0ll, checked_pairs(cfg.num_vertices));
    }

    int workers = std::min(resolve_workers(cfg.workers), cfg.restarts);
    std::vector<RestartOutcome> outcomes(std::size_t(cfg.restarts));
    std::atomic<int> best_hit{cfg.restarts};
    std::atomic<int> next{0};

    auto drain = [&] {
        for (int r; (r = next.fetch_add(1)) < cfg.restarts;) {
            if (best_hit.load(std::memory_order_relaxed) < r) continue;
            RestartOutcome out = run_restart(cfg, r, init_edges, best_hit);
            if (out.found) {
                int seen = best_hit.load(std::memory_order_relaxed);
                while (r < seen && !best_hit.compare_exchange_weak(seen, r)) {
                }
            }
            outcomes[std::size_t(r)] = std::move(out);
        }
    };
    if (workers <= 1) {
        drain();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
        for (std::thread& th : pool) th.join();
    }

    // lowest restart with an exact hit wins; otherwise lowest objective
    int pick = -1;
    for (int r = 0; r < cfg.restarts; ++r)
        if (outcomes[std::size_t(r)].found) {
            pick = r;
            break;
        }
    if (pick < 0)
        for (int r = 0; r < cfg.restarts; ++r)
            if (pick < 0 || outcomes[std::size_t(r)].objective <
                                outcomes[std::size_t(pick)].objective)
                pick = r;

    RestartOutcome& won = outcomes[std::size_t(pick)];
    res.found = won.found;
    res.restart_index = pick;
    res.best_objective = won.objective;
    res.graph = std::move(won.graph);
    res.trace = std::move(won.trace);
    return res;
}

std::string search_trace_json(const SearchResult& res) {
    json trace = json::array();
    for (const TracePoint& pt : res.trace)
        trace.push_back({{"step", pt.step}, {"objective", pt.objective}});
    json diag;
    diag["phi"] = phi_report_to_json(res.diagnostic.phi);
    diag["sum_matches"] = res.diagnostic.sum_matches;
    diag["implied_edges"] = res.diagnostic.implied_edges.str();
    diag["edges_integral"] = res.diagnostic.edges_integral;
    json out;
    out["found"] = res.found;
    out["restart_index"] = res.restart_index;
    out["best_objective"] = res.best_objective;
    out["trace"] = trace;
    out["diagnostic"] = diag;
    return out.dump(2);
}

std::vector<K2K2Row> k2k2_experiment(const std::vector<int>& n_list, const Rational& p,
                                     long long samples, std::uint64_t seed, int workers) {
    if (samples < 1) throw DomainError("need at least one sample");
    StatisticSpec stat;
    stat.kind = StatisticKind::subgraph;
    stat.pattern = named_graph("K2+K2");

    std::vector<K2K2Row> rows;
    for (int n : n_list) {
        if (n < 6) throw DomainError("need at least 6 vertices per row");
        ModelSpec model;
        model.kind = ModelKind::gnp;
        model.n = n;
        model.p = p;
        model.seed = seed;
        EmpiricalPMF pmf = run_simulation(model, stat, samples, workers);

        double total = double(pmf.total_samples);
        double mean = 0;
        long long peak = 0;
        for (auto [value, count] : pmf.histogram) {
            mean += double(value) * double(count);
            peak = std::max(peak, count);
        }
        mean /= total;
        double var = 0;
        for (auto [value, count] : pmf.histogram) {
            double dev = double(value) - mean;
            var += dev * dev * double(count);
        }
        var /= total;

        K2K2Row row;
        row.n = n;
        row.sigma_hat = std::sqrt(var);
        row.max_point_prob = double(peak) / total;
        row.scaled = row.max_point_prob * row.sigma_hat / std::sqrt(double(n));
        rows.push_back(row);
    }
    return rows;
}

std::string k2k2_table_csv(const std::vector<K2K2Row>& rows) {
    std::ostringstream os;
    os.precision(17);  // round-trips doubles, so CSV and JSON agree exactly
    os << "n,sigma_hat,max_point_prob,scaled\n";
    for (const K2K2Row& row : rows)
        os << row.n << ',' << row.sigma_hat << ',' << row.max_point_prob << ',' << row.scaled
           << '\n';
    return os.str();
}

}  // namespace gfl
