#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsc/graph.h"
#include "qsc/rng.h"
#include "qsc/stats.h"

namespace qsc {

enum class HaltReason { kFull, kAlphaFraction, kMaxRounds };

std::string_view to_string(HaltReason r);

/// Termination policy for the sampling loops. With no alpha the loop runs
/// until zero violations; a cap turns the run into a censored one when hit.
struct HaltCondition {
    std::optional<double> alpha;
    std::optional<long> max_rounds;

    static HaltCondition full() { return {}; }
    static HaltCondition alpha_fraction(double a, std::optional<long> cap = std::nullopt);
    static HaltCondition capped(long cap);
    HaltCondition with_cap(long cap) const;

    /// Checks one layer of syndrome results. Returns the reason to stop, if any.
    std::optional<HaltReason> evaluate(int violating_edges, int total_edges, long rounds) const;
};

struct SampleResult {
    VertexAssignment assignment;
    /// Violation-check layers executed, including the final one.
    long rounds = 0;
    HaltReason halted_by = HaltReason::kFull;
    ViolationSet violations_at_halt;
};

/// P(1) = lambda / (1 + lambda).
double inclusion_probability(double lambda);
std::uint8_t bernoulli_vertex(double lambda, Rng& rng);

/// Partial rejection sampling of the hardcore (Gibbs-lambda) law on
/// independent sets: draw all vertices, then repeatedly redraw the endpoints
/// of violating edges together with their neighbors.
SampleResult sample_once(const Graph& g, double lambda, const HaltCondition& halt, Rng& rng);
SampleResult sample_once(const Graph& g, double lambda, const HaltCondition& halt, std::uint64_t seed);

struct EmpiricalDistribution {
    std::map<std::uint64_t, long> counts;  ///< keyed by basis index
    long trials = 0;
    ChiSquareResult fit;                   ///< against lambda^|s| / Z
};

inline constexpr int kEmpiricalMaxVertices = 20;

EmpiricalDistribution empirical_distribution(const Graph& g, double lambda, long trials, std::uint64_t seed);

/// Oracle law lambda^|s|/Z over basis indices, zero off the independent sets.
std::vector<double> gibbs_law(const Graph& g, double lambda);

enum class GraphClassKind { kRegular, kPlanar, kStar, kFixed };

struct GraphClass {
    GraphClassKind kind = GraphClassKind::kRegular;
    Graph fixed;  ///< used when kind == kFixed

    std::string label() const;
    Graph generate(int n, int d, std::uint64_t seed) const;
};

GraphClass parse_graph_class(std::string_view name);

struct RuntimeRecord {
    std::string graph_class;
    int n = 0;
    int d = 0;
    double lambda = 1.0;
    std::optional<double> alpha;
    std::uint64_t seed = 0;
    int trial = 0;
    long rounds = 0;
    HaltReason halted_by = HaltReason::kFull;
};

struct ExperimentSpec {
    GraphClass graph_class;
    std::vector<int> n_values;
    int d = 3;
    double lambda = 1.0;
    HaltCondition halt;
    int trials_per_point = 1;
    std::uint64_t base_seed = 0;
    int threads = 1;
};

/// One record per (n, trial), each trial on a freshly generated graph. The
/// graph seed depends only on (base_seed, class, n, d, trial), so sweeps over
/// lambda or alpha reuse the same graphs.
std::vector<RuntimeRecord> run_experiment(const ExperimentSpec& spec);

std::uint64_t trial_seed(std::uint64_t base_seed, const GraphClass& cls, int n, int d, int trial);

}  // namespace qsc
