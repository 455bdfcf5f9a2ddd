#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gfl/bitgraph.hpp"
#include "gfl/canon.hpp"
#include "gfl/rational.hpp"

namespace gfl {

// Dot product of the delta row for pattern t at the given q with the
// 4-vertex census of the host, exact. t must have at most 4 vertices and no
// isolated ones (the single edge and the empty pattern both qualify).
Rational phi_coefficient(const CanonGraph& t, const BitGraph& host, const Rational& q);
Rational phi_coefficient(const CanonGraph& t, const Ind4Vector& ind4, const Rational& q);

// The same linear forms at q = -1 for every connected pattern on 3 or 4
// vertices plus the single edge, in exact integer arithmetic. A census
// passes when all eight connected values vanish and the edge value does not.
struct PhiEntry {
    std::string name;
    BigInt value;
};

struct PhiReport {
    std::vector<PhiEntry> connected;  // P2, K3, P3, K1,3, C4, paw, diamond, K4
    BigInt edge_value = 0;
    bool pass = false;
};

PhiReport phi_report(const Ind4Vector& ind4);

// Change to the 4-vertex census when the edge (u, v) of g is flipped; only
// the subsets holding both endpoints are re-examined. The search maintains
// its census with this.
std::array<long long, 11> census_flip_delta(const BitGraph& g, int u, int v);

// Census vector and size of the graph shipped in data/counterexample64.txt.
const Ind4Vector& counterexample64_ind4();
inline constexpr int kCounterexample64Vertices = 64;
inline constexpr long long kCounterexample64Edges = 976;

struct CounterexampleReport {
    int num_vertices = 0;
    long long num_edges = 0;
    Ind4Vector ind4;
    PhiReport phi;
    bool matches_reference = false;  // census and edge count, 64-vertex hosts only
};

CounterexampleReport verify_counterexample(const BitGraph& host);
std::string counterexample_report_json(const CounterexampleReport& rep);

// Feasibility diagnostic for a target census: the vanishing conditions
// evaluated on the raw vector, the total-count identity, and the edge count
// the vector implies through the pairs-per-4-subset relation. Informational;
// only the total-count identity gates a search.
struct TargetDiagnostic {
    PhiReport phi;
    bool sum_matches = false;
    Rational implied_edges = Rational(0);
    bool edges_integral = false;
};

TargetDiagnostic diagnose_target(const Ind4Vector& target, int num_vertices);

struct SearchConfig {
    Ind4Vector target;
    int num_vertices = 0;
    std::uint64_t seed = 0;
    long long max_steps = 100000;  // move proposals per restart
    int restarts = 1;
    std::array<long long, 11> weights{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
    int workers = 0;  // <= 0: GFL_WORKERS, then the hardware count
};

struct TracePoint {
    long long step = 0;
    long long objective = 0;
};

// Outcome of the restart that won: the first one (by index) to reach the
// target exactly, otherwise the one with the lowest final objective.
struct SearchResult {
    bool found = false;
    int restart_index = -1;
    long long best_objective = 0;
    BitGraph graph;
    std::vector<TracePoint> trace;
    TargetDiagnostic diagnostic;
};

SearchResult search_counterexample(const SearchConfig& cfg);
std::string search_trace_json(const SearchResult& res);

// Monte Carlo mode-mass table for the two-disjoint-edges count over G(n, p).
struct K2K2Row {
    int n = 0;
    double sigma_hat = 0;
    double max_point_prob = 0;
    double scaled = 0;  // max_point_prob * sigma_hat / sqrt(n)
};

std::vector<K2K2Row> k2k2_experiment(const std::vector<int>& n_list, const Rational& p,
                                     long long samples, std::uint64_t seed, int workers = 0);
std::string k2k2_table_csv(const std::vector<K2K2Row>& rows);

}  // namespace gfl
