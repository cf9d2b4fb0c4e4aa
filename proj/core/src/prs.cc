#include "qsc/prs.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qsc/generators.h"

namespace qsc {

std::string_view to_string(HaltReason r) {
    switch (r) {
        case HaltReason::kFull:
            return "full";
        case HaltReason::kAlphaFraction:
            return "alpha";
        case HaltReason::kMaxRounds:
            return "max_rounds";
    }
    return "unknown";
}

HaltCondition HaltCondition::alpha_fraction(double a, std::optional<long> cap) {
    if (!(a > 0.0 && a <= 1.0)) {
        throw std::invalid_argument("alpha must lie in (0, 1]");
    }
    HaltCondition h;
    h.alpha = a;
    h.max_rounds = cap;
    return h;
}

HaltCondition HaltCondition::capped(long cap) { return full().with_cap(cap); }

HaltCondition HaltCondition::with_cap(long cap) const {
    if (cap < 1) {
        throw std::invalid_argument("round cap must be positive");
    }
    HaltCondition h = *this;
    h.max_rounds = cap;
    return h;
}

std::optional<HaltReason> HaltCondition::evaluate(int violating_edges, int total_edges, long rounds) const {
    if (violating_edges == 0) {
        return HaltReason::kFull;
    }
    if (alpha && static_cast<double>(violating_edges) <= *alpha * static_cast<double>(total_edges)) {
        return HaltReason::kAlphaFraction;
    }
    if (max_rounds && rounds >= *max_rounds) {
        return HaltReason::kMaxRounds;
    }
    return std::nullopt;
}

double inclusion_probability(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be a positive finite number");
    }
    return lambda / (1.0 + lambda);
}

std::uint8_t bernoulli_vertex(double lambda, Rng& rng) {
    return uniform01(rng) < inclusion_probability(lambda) ? 1 : 0;
}

SampleResult sample_once(const Graph& g, double lambda, const HaltCondition& halt, Rng& rng) {
    const double p = inclusion_probability(lambda);
    const int n = g.num_vertices();
    const auto& edges = g.edges();

    SampleResult out;
    out.assignment.resize(n);
    for (auto& bit : out.assignment) {
        bit = uniform01(rng) < p ? 1 : 0;
    }

    std::vector<int> bad;
    for (int k = 0; k < g.num_edges(); ++k) {
        if (out.assignment[edges[k].u] && out.assignment[edges[k].v]) {
            bad.push_back(k);
        }
    }

    std::vector<std::uint8_t> in_reset(n, 0);
    std::vector<std::uint8_t> edge_seen(g.num_edges(), 0);
    std::vector<Vertex> reset;
    std::vector<int> touched;
    for (long rounds = 1;; ++rounds) {
        if (auto reason = halt.evaluate(static_cast<int>(bad.size()), g.num_edges(), rounds)) {
            out.rounds = rounds;
            out.halted_by = *reason;
            std::vector<Edge> bad_edges;
            for (int k : bad) {
                bad_edges.push_back(edges[k]);
            }
            out.violations_at_halt = violations_from_edges(g, std::move(bad_edges));
            return out;
        }

        // Every violating edge has both endpoints in the reset set, so after
        // redrawing, new violations can only touch redrawn vertices.
        reset.clear();
        auto mark = [&](Vertex v) {
            if (!in_reset[v]) {
                in_reset[v] = 1;
                reset.push_back(v);
            }
        };
        for (int k : bad) {
            for (Vertex v : {edges[k].u, edges[k].v}) {
                mark(v);
                for (Vertex w : g.neighbors(v)) {
                    mark(w);
                }
            }
        }
        for (Vertex v : reset) {
            out.assignment[v] = uniform01(rng) < p ? 1 : 0;
        }
        bad.clear();
        touched.clear();
        for (Vertex v : reset) {
            for (int k : g.incident_edges(v)) {
                if (!edge_seen[k]) {
                    edge_seen[k] = 1;
                    touched.push_back(k);
                }
            }
        }
        std::sort(touched.begin(), touched.end());
        for (int k : touched) {
            edge_seen[k] = 0;
            if (out.assignment[edges[k].u] && out.assignment[edges[k].v]) {
                bad.push_back(k);
            }
        }
        for (Vertex v : reset) {
            in_reset[v] = 0;
        }
    }
}

SampleResult sample_once(const Graph& g, double lambda, const HaltCondition& halt, std::uint64_t seed) {
    Rng rng(seed);
    return sample_once(g, lambda, halt, rng);
}

std::vector<double> gibbs_law(const Graph& g, double lambda) {
    if (g.num_vertices() > kOracleMaxVertices) {
        throw GuardError("Gibbs law oracle limited to n <= " + std::to_string(kOracleMaxVertices));
    }
    const double z = partition_function(g, lambda);
    const std::uint64_t dim = std::uint64_t{1} << g.num_vertices();
    std::vector<double> law(dim, 0.0);
    for (std::uint64_t s = 0; s < dim; ++s) {
        if (is_independent_index(g, s)) {
            law[s] = std::pow(lambda, std::popcount(s)) / z;
        }
    }
    return law;
}

EmpiricalDistribution empirical_distribution(const Graph& g, double lambda, long trials, std::uint64_t seed) {
    if (g.num_vertices() > kEmpiricalMaxVertices) {
        throw GuardError("empirical distribution limited to n <= " + std::to_string(kEmpiricalMaxVertices));
    }
    EmpiricalDistribution dist;
    Rng rng(seed);
    for (long t = 0; t < trials; ++t) {
        SampleResult r = sample_once(g, lambda, HaltCondition::full(), rng);
        ++dist.counts[to_index(r.assignment)];
    }
    dist.trials = trials;

    const auto law = gibbs_law(g, lambda);
    std::vector<double> observed(law.size(), 0.0);
    for (const auto& [index, count] : dist.counts) {
        observed[index] = static_cast<double>(count);
    }
    dist.fit = chi_square_goodness_of_fit(observed, law);
    return dist;
}

std::string GraphClass::label() const {
    switch (kind) {
        case GraphClassKind::kRegular:
            return "regular";
        case GraphClassKind::kPlanar:
            return "planar";
        case GraphClassKind::kStar:
            return "star";
        case GraphClassKind::kFixed:
            return "file";
    }
    return "unknown";
}

Graph GraphClass::generate(int n, int d, std::uint64_t seed) const {
    switch (kind) {
        case GraphClassKind::kRegular:
            return gen_regular(n, d, seed);
        case GraphClassKind::kPlanar:
            return gen_bounded_planar(n, d, seed);
        case GraphClassKind::kStar:
            return gen_star(n - 1);
        case GraphClassKind::kFixed:
            return fixed;
    }
    throw std::logic_error("unhandled graph class");
}

GraphClass parse_graph_class(std::string_view name) {
    GraphClass c;
    if (name == "regular") {
        c.kind = GraphClassKind::kRegular;
    } else if (name == "planar") {
        c.kind = GraphClassKind::kPlanar;
    } else if (name == "star") {
        c.kind = GraphClassKind::kStar;
    } else if (name == "file") {
        c.kind = GraphClassKind::kFixed;
    } else {
        throw std::invalid_argument("unknown graph class '" + std::string(name) +
                                    "' (expected regular, planar, star or file)");
    }
    return c;
}

std::uint64_t trial_seed(std::uint64_t base_seed, const GraphClass& cls, int n, int d, int trial) {
    return derive_seed({base_seed, static_cast<std::uint64_t>(cls.kind), static_cast<std::uint64_t>(n),
                        static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(trial)});
}

std::vector<RuntimeRecord> run_experiment(const ExperimentSpec& spec) {
    inclusion_probability(spec.lambda);
    struct Job {
        int n;
        int trial;
    };
    std::vector<Job> jobs;
    for (int n : spec.n_values) {
        for (int t = 0; t < spec.trials_per_point; ++t) {
            jobs.push_back({n, t});
        }
    }
    // Generator parameter errors surface before any work starts.
    for (int n : spec.n_values) {
        spec.graph_class.generate(n, spec.d, 0);
    }

    const std::uint64_t halt_key = derive_seed({std::bit_cast<std::uint64_t>(spec.lambda),
                                                std::bit_cast<std::uint64_t>(spec.halt.alpha.value_or(0.0)),
                                                static_cast<std::uint64_t>(spec.halt.max_rounds.value_or(0))});
    std::vector<RuntimeRecord> records(jobs.size());
    auto run_job = [&](std::size_t k) {
        const Job& job = jobs[k];
        std::uint64_t seed = trial_seed(spec.base_seed, spec.graph_class, job.n, spec.d, job.trial);
        Graph g = spec.graph_class.generate(job.n, spec.d, derive_seed({seed, 0}));
        SampleResult r = sample_once(g, spec.lambda, spec.halt, derive_seed({seed, 1, halt_key}));
        RuntimeRecord& rec = records[k];
        rec.graph_class = spec.graph_class.label();
        rec.n = job.n;
        rec.d = spec.d;
        rec.lambda = spec.lambda;
        rec.alpha = spec.halt.alpha;
        rec.seed = seed;
        rec.trial = job.trial;
        rec.rounds = r.rounds;
        rec.halted_by = r.halted_by;
    };

    const int threads = std::max(1, spec.threads);
    if (threads == 1) {
        for (std::size_t k = 0; k < jobs.size(); ++k) {
            run_job(k);
        }
        return records;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < jobs.size(); k = next++) {
                run_job(k);
            }
        });
    }
    pool.clear();
    return records;
}

}  // namespace qsc
