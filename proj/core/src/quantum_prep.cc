#include "qsc/quantum_prep.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace qsc {

namespace {

class Register {
  public:
    Register(const Graph& g, double lambda, AncillaMode mode)
        : g_(g), mode_(mode), n_(g.num_vertices()), state_(make_initial(g, lambda, mode)) {}

    StateVector& state() { return state_; }

    int measure_edge(int edge_index, Rng& rng) {
        const Edge& e = g_.edges()[edge_index];
        if (mode_ == AncillaMode::kImplicit) {
            return state_.measure_edge_projector(e.u, e.v, rng).bit;
        }
        const int ancilla = n_ + edge_index;
        state_.apply_toffoli(e.u, e.v, ancilla);
        int bit = state_.measure_qubit(ancilla, rng).bit;
        if (bit == 1) {
            state_.apply_x(ancilla);
        }
        return bit;
    }

    double project_edge(int edge_index, int outcome) {
        const Edge& e = g_.edges()[edge_index];
        if (mode_ == AncillaMode::kImplicit) {
            return state_.project_edge(e.u, e.v, outcome);
        }
        const int ancilla = n_ + edge_index;
        state_.apply_toffoli(e.u, e.v, ancilla);
        double w = state_.project_qubit(ancilla, outcome);
        if (outcome == 1) {
            state_.apply_x(ancilla);
        }
        return w;
    }

    StateVector data_state() const {
        if (mode_ == AncillaMode::kImplicit) {
            return state_;
        }
        // Ancillas are all back in |0>, so the data amplitudes sit in the low block.
        const auto& amps = state_.amplitudes();
        std::vector<Complex> low(amps.begin(), amps.begin() + (std::ptrdiff_t{1} << n_));
        return StateVector::from_amplitudes(std::move(low));
    }

  private:
    static StateVector make_initial(const Graph& g, double lambda, AncillaMode mode) {
        std::vector<Qubit> qubits(g.num_vertices(), lambda_plus_state(lambda));
        if (mode == AncillaMode::kExplicit) {
            if (g.num_edges() > kExplicitMaxEdges) {
                throw GuardError("explicit ancilla mode supports at most " + std::to_string(kExplicitMaxEdges) +
                                 " edges, got " + std::to_string(g.num_edges()));
            }
            qubits.resize(g.num_vertices() + g.num_edges(), Qubit{1.0, 0.0});
        }
        if (static_cast<int>(qubits.size()) > kMaxQubits) {
            throw GuardError("graph needs " + std::to_string(qubits.size()) + " qubits, simulator cap is " +
                             std::to_string(kMaxQubits));
        }
        return StateVector::product(qubits);
    }

    const Graph& g_;
    AncillaMode mode_;
    int n_;
    StateVector state_;
};

}  // namespace

QscRunResult prepare_distribution(const Graph& g, double lambda, const HaltCondition& halt, Rng& rng,
                                  AncillaMode mode) {
    const Qubit target = lambda_plus_state(lambda);
    Register reg(g, lambda, mode);
    QscRunResult out;

    std::vector<int> unknown(g.num_edges());
    for (int k = 0; k < g.num_edges(); ++k) {
        unknown[k] = k;
    }
    std::vector<std::uint8_t> edge_mark(g.num_edges(), 0);

    for (long rounds = 1;; ++rounds) {
        std::vector<Edge> bad;
        for (int k : unknown) {
            if (reg.measure_edge(k, rng) == 1) {
                bad.push_back(g.edges()[k]);
            }
        }
        out.violation_log.push_back(violations_from_edges(g, std::move(bad)));
        const ViolationSet& vs = out.violation_log.back();
        if (auto reason = halt.evaluate(static_cast<int>(vs.edges.size()), g.num_edges(), rounds)) {
            out.rounds = rounds;
            out.halted_by = *reason;
            break;
        }
        const auto reset = vs.reset_set();
        for (Vertex v : reset) {
            reg.state().reset_qubit(v, target, rng);
        }
        unknown.clear();
        for (Vertex v : reset) {
            for (int k : g.incident_edges(v)) {
                if (!edge_mark[k]) {
                    edge_mark[k] = 1;
                    unknown.push_back(k);
                }
            }
        }
        std::sort(unknown.begin(), unknown.end());
        for (int k : unknown) {
            edge_mark[k] = 0;
        }
    }
    out.final_state = reg.data_state();
    return out;
}

QscRunResult prepare_distribution(const Graph& g, double lambda, const HaltCondition& halt, std::uint64_t seed,
                                  AncillaMode mode) {
    Rng rng(seed);
    return prepare_distribution(g, lambda, halt, rng, mode);
}

double non_independent_weight(const StateVector& s, const Graph& g) {
    double w = 0.0;
    for (std::uint64_t k = 0; k < s.dimension(); ++k) {
        if (!is_independent_index(g, k)) {
            w += std::norm(s.amplitude(k));
        }
    }
    return w;
}

double verify_gibbs_law(const QscRunResult& r, const Graph& g, double lambda) {
    if (r.halted_by != HaltReason::kFull) {
        throw std::invalid_argument("Gibbs law check needs a full-halted run");
    }
    if (g.num_vertices() > kLawCheckMaxVertices) {
        throw GuardError("Gibbs law check limited to n <= " + std::to_string(kLawCheckMaxVertices));
    }
    const auto law = gibbs_law(g, lambda);
    double worst = 0.0;
    for (std::uint64_t k = 0; k < law.size(); ++k) {
        worst = std::max(worst, std::abs(std::norm(r.final_state.amplitude(k)) - law[k]));
    }
    return worst;
}

namespace {

struct AlphaRegions {
    std::uint64_t ones = 0;       // B
    std::uint64_t zeros = 0;      // N(B)
    std::vector<Vertex> remaining;
};

AlphaRegions alpha_regions(const QscRunResult& r, const Graph& g) {
    if (r.halted_by == HaltReason::kMaxRounds) {
        throw std::invalid_argument("structure check needs a full- or alpha-halted run");
    }
    AlphaRegions regions;
    const ViolationSet& vs = r.last_violations();
    for (Vertex v : vs.endpoints) {
        regions.ones |= std::uint64_t{1} << v;
    }
    for (Vertex v : vs.boundary) {
        regions.zeros |= std::uint64_t{1} << v;
    }
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (!(((regions.ones | regions.zeros) >> v) & 1U)) {
            regions.remaining.push_back(v);
        }
    }
    return regions;
}

Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& keep) {
    std::vector<int> relabel(g.num_vertices(), -1);
    for (std::size_t k = 0; k < keep.size(); ++k) {
        relabel[keep[k]] = static_cast<int>(k);
    }
    std::vector<std::pair<int, int>> pairs;
    for (const Edge& e : g.edges()) {
        if (relabel[e.u] >= 0 && relabel[e.v] >= 0) {
            pairs.emplace_back(relabel[e.u], relabel[e.v]);
        }
    }
    return Graph::from_edge_list(std::max<int>(1, static_cast<int>(keep.size())), pairs);
}

std::uint64_t gather_bits(std::uint64_t index, const std::vector<Vertex>& vertices) {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        out |= ((index >> vertices[k]) & 1U) << k;
    }
    return out;
}

}  // namespace

bool check_alpha_halt_structure(const QscRunResult& r, const Graph& g, double tol) {
    const AlphaRegions regions = alpha_regions(r, g);
    const Graph sub = induced_subgraph(g, regions.remaining);
    for (std::uint64_t k = 0; k < r.final_state.dimension(); ++k) {
        if (std::norm(r.final_state.amplitude(k)) <= tol) {
            continue;
        }
        if ((k & regions.ones) != regions.ones || (k & regions.zeros) != 0) {
            return false;
        }
        if (!regions.remaining.empty() && !is_independent_index(sub, gather_bits(k, regions.remaining))) {
            return false;
        }
    }
    return true;
}

double alpha_state_law_deviation(const QscRunResult& r, const Graph& g, double lambda) {
    const AlphaRegions regions = alpha_regions(r, g);
    if (regions.remaining.empty()) {
        return 0.0;
    }
    const Graph sub = induced_subgraph(g, regions.remaining);
    const auto law = gibbs_law(sub, lambda);
    std::vector<double> marginal(law.size(), 0.0);
    for (std::uint64_t k = 0; k < r.final_state.dimension(); ++k) {
        marginal[gather_bits(k, regions.remaining)] += std::norm(r.final_state.amplitude(k));
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < law.size(); ++k) {
        worst = std::max(worst, std::abs(marginal[k] - law[k]));
    }
    return worst;
}

RoundEquivalence round_distribution_equivalence(const Graph& g, double lambda, long trials, std::uint64_t seed,
                                                AncillaMode mode) {
    if (g.num_vertices() > kEquivalenceMaxVertices) {
        throw GuardError("round equivalence limited to n <= " + std::to_string(kEquivalenceMaxVertices));
    }
    RoundEquivalence out;
    std::vector<long> quantum;
    std::vector<long> classical;
    Rng qrng(derive_seed({seed, 0x9a}));
    Rng crng(derive_seed({seed, 0xc1}));
    for (long t = 0; t < trials; ++t) {
        long rq = prepare_distribution(g, lambda, HaltCondition::full(), qrng, mode).rounds;
        long rc = sample_once(g, lambda, HaltCondition::full(), crng).rounds;
        quantum.push_back(rq);
        classical.push_back(rc);
        ++out.quantum_rounds[rq];
        ++out.classical_rounds[rc];
    }
    out.test = two_sample_chi_square(quantum, classical);
    return out;
}

std::map<std::vector<int>, double> first_round_outcome_tree(const Graph& g, double lambda, AncillaMode mode) {
    std::map<std::vector<int>, double> tree;
    std::vector<int> outcomes;
    std::function<void(Register&, int, double)> branch = [&](Register& reg, int k, double p) {
        if (k == g.num_edges()) {
            tree[outcomes] += p;
            return;
        }
        for (int bit : {0, 1}) {
            Register copy = reg;
            const Edge& e = g.edges()[k];
            double w = mode == AncillaMode::kImplicit ? copy.state().edge_violation_probability(e.u, e.v) : -1.0;
            if (mode == AncillaMode::kExplicit) {
                StateVector probe = copy.state();
                probe.apply_toffoli(e.u, e.v, g.num_vertices() + k);
                w = probe.probability_one(g.num_vertices() + k);
            }
            double branch_weight = bit == 1 ? w : 1.0 - w;
            if (branch_weight < kImpossibleBranch) {
                continue;
            }
            copy.project_edge(k, bit);
            outcomes.push_back(bit);
            branch(copy, k + 1, p * branch_weight);
            outcomes.pop_back();
        }
    };
    Register reg(g, lambda, mode);
    branch(reg, 0, 1.0);
    return tree;
}

}  // namespace qsc
