#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gfl/canon.hpp"
#include "gfl/rational.hpp"

namespace gfl {

enum class ModelKind { gnp, gnm, gnp_coupled_to_gnm, subset_fixed_size, subset_independent };

// A fully specified random model. p is used by the independent kinds, m by
// the fixed-size kinds; the coupled kind uses both.
struct ModelSpec {
    ModelKind kind = ModelKind::gnp;
    int n = 0;
    Rational p = Rational(1, 2);
    long long m = 0;
    std::uint64_t seed = 0;
};

// Throws DomainError when the parameters are outside the model's domain.
void validate_model(const ModelSpec& spec);

std::string model_kind_name(ModelKind kind);

// requested when positive, else GFL_WORKERS, else the hardware count.
int resolve_workers(int requested);

// One graph draw. The coupled kind fills independent_half with the G(n,p)
// graph and puts the adjusted exactly-m graph in graph.
struct GraphSample {
    BitGraph graph;
    std::optional<BitGraph> independent_half;
};

GraphSample sample_graph(const ModelSpec& spec, std::uint64_t sample_index);

std::vector<std::uint8_t> sample_subset(const ModelSpec& spec, std::uint64_t sample_index);

// Number of k-term progressions a, a+d, ..., a+(k-1)d (mod n) fully inside
// the set, over a in Z/nZ and d in {1..floor(n/2)}. When gcd(n,(k-1)!) > 1
// the count is still well-defined; a note is written to *warning if given.
long long count_kap(const std::vector<std::uint8_t>& x, int k, std::string* warning = nullptr);

enum class StatisticKind { subgraph, induced, kap };

struct StatisticSpec {
    StatisticKind kind = StatisticKind::subgraph;
    CanonGraph pattern;  // subgraph/induced
    int k = 0;           // kap

    std::string id() const;
};

// Exact statistic value on one draw. Graph statistics use closed-form
// degree/triangle kernels for 3-vertex patterns and the 4-vertex census for
// 4-vertex patterns, falling back to generic embedding counting otherwise.
long long statistic_value(const StatisticSpec& stat, const BitGraph& x);
long long statistic_value(const StatisticSpec& stat, const std::vector<std::uint8_t>& x);

struct EmpiricalPMF {
    std::map<long long, long long> histogram;
    long long total_samples = 0;
    ModelSpec model;
    std::string statistic_id;
};

// Deterministic for fixed (spec, stat, samples) regardless of workers.
// workers <= 0 reads GFL_WORKERS, then falls back to the hardware count.
EmpiricalPMF run_simulation(const ModelSpec& spec, const StatisticSpec& stat, long long samples,
                            int workers = 0);

// Histograms add; statistic ids must agree. The seed of the left operand is
// kept as the nominal seed of the merged result.
EmpiricalPMF merge_pmf(const EmpiricalPMF& a, const EmpiricalPMF& b);

std::string pmf_to_csv(const EmpiricalPMF& pmf);
std::string pmf_to_json(const EmpiricalPMF& pmf);

}  // namespace gfl
