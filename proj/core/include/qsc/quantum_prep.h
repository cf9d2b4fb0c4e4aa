#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qsc/graph.h"
#include "qsc/prs.h"
#include "qsc/statevector.h"

namespace qsc {

enum class AncillaMode {
    /// Measure |11><11| on each edge directly.
    kImplicit,
    /// Toffoli onto a per-edge ancilla, measure and reset the ancilla.
    kExplicit,
};

inline constexpr int kExplicitMaxEdges = 4;

struct QscRunResult {
    StateVector final_state{1};  ///< data qubits only
    long rounds = 0;
    std::vector<ViolationSet> violation_log;  ///< one entry per round
    HaltReason halted_by = HaltReason::kFull;

    const ViolationSet& last_violations() const { return violation_log.back(); }
};

/// Measure-and-reset preparation of the Gibbs-lambda state over independent
/// sets. Each round measures the edges whose state is unknown (all edges in
/// the first round, then the edges touching any qubit reset in the previous
/// round) in sorted order, and resets the endpoints of violating edges and
/// their neighbors to |lambda_+>.
QscRunResult prepare_distribution(const Graph& g, double lambda, const HaltCondition& halt, std::uint64_t seed,
                                  AncillaMode mode = AncillaMode::kImplicit);
QscRunResult prepare_distribution(const Graph& g, double lambda, const HaltCondition& halt, Rng& rng,
                                  AncillaMode mode = AncillaMode::kImplicit);

inline constexpr int kLawCheckMaxVertices = 14;

/// max_s | |a_s|^2 - lambda^|s| [s in IS] / Z |. Requires a full-halted result.
double verify_gibbs_law(const QscRunResult& r, const Graph& g, double lambda);

/// Total probability on basis states that violate some edge.
double non_independent_weight(const StateVector& s, const Graph& g);

/// Structure of an alpha-halted state: violating-edge qubits read 1 with
/// certainty, their other neighbors read 0 with certainty, and the rest is
/// supported only on independent sets of the remaining induced subgraph.
/// Full-halted results pass vacuously; capped results are rejected.
bool check_alpha_halt_structure(const QscRunResult& r, const Graph& g, double tol = 1e-12);

/// Max deviation of the remaining-subgraph marginal from its own Gibbs law.
double alpha_state_law_deviation(const QscRunResult& r, const Graph& g, double lambda);

struct RoundEquivalence {
    ChiSquareResult test;
    std::map<long, long> quantum_rounds;
    std::map<long, long> classical_rounds;
};

inline constexpr int kEquivalenceMaxVertices = 10;

/// Runs `trials` quantum preparations and `trials` classical samples and
/// compares the round-count distributions with a two-sample chi-square test.
RoundEquivalence round_distribution_equivalence(const Graph& g, double lambda, long trials, std::uint64_t seed,
                                                AncillaMode mode = AncillaMode::kImplicit);

/// Exact outcome-probability tree of the first syndrome round: for each
/// outcome string over the sorted edges, its probability. Used to compare the
/// two ancilla modes branch by branch.
std::map<std::vector<int>, double> first_round_outcome_tree(const Graph& g, double lambda, AncillaMode mode);

}  // namespace qsc
