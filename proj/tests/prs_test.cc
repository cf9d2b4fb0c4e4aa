#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.h"
#include "qsc/generators.h"
#include "qsc/prs.h"

namespace {

using qsc::Graph;
using qsc::HaltCondition;
using qsc::HaltReason;

TEST(Bernoulli, InclusionProbability) {
    EXPECT_DOUBLE_EQ(qsc::inclusion_probability(1.0), 0.5);
    EXPECT_DOUBLE_EQ(qsc::inclusion_probability(3.0), 0.75);
    EXPECT_LT(qsc::inclusion_probability(1e-12), 1e-11);
    EXPECT_THROW(qsc::inclusion_probability(0.0), std::invalid_argument);
    EXPECT_THROW(qsc::inclusion_probability(-1.0), std::invalid_argument);
}

TEST(Bernoulli, FrequencyWithinFourSigma) {
    qsc::Rng rng(5);
    const int trials = 40000;
    int ones = 0;
    for (int k = 0; k < trials; ++k) {
        ones += qsc::bernoulli_vertex(3.0, rng);
    }
    const double sigma = std::sqrt(trials * 0.75 * 0.25);
    EXPECT_NEAR(ones, 0.75 * trials, 4 * sigma);
}

TEST(HaltConditionTest, Evaluate) {
    EXPECT_EQ(HaltCondition::full().evaluate(0, 5, 1), HaltReason::kFull);
    EXPECT_FALSE(HaltCondition::full().evaluate(1, 5, 1000).has_value());
    const auto a = HaltCondition::alpha_fraction(0.2);
    EXPECT_EQ(a.evaluate(1, 5, 1), HaltReason::kAlphaFraction);
    EXPECT_FALSE(a.evaluate(2, 5, 1).has_value());
    EXPECT_EQ(HaltCondition::capped(3).evaluate(2, 5, 3), HaltReason::kMaxRounds);
    EXPECT_THROW(HaltCondition::alpha_fraction(0.0), std::invalid_argument);
    EXPECT_THROW(HaltCondition::capped(0), std::invalid_argument);
}

TEST(SampleOnce, K2FullIsIndependent) {
    const Graph g = qsc::path_graph(2);
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const auto r = qsc::sample_once(g, 1.0, HaltCondition::full(), seed);
        EXPECT_NE(qsc::to_index(r.assignment), 3u);
        EXPECT_EQ(r.halted_by, HaltReason::kFull);
        EXPECT_TRUE(r.violations_at_halt.empty());
        EXPECT_GE(r.rounds, 1);
    }
}

TEST(SampleOnce, K2MeanRoundsIsFourThirds) {
    // Each draw succeeds with probability 3/4, so rounds ~ Geometric(3/4).
    const Graph g = qsc::path_graph(2);
    qsc::Rng rng(2024);
    const int trials = 100000;
    double sum = 0.0;
    double sum2 = 0.0;
    for (int k = 0; k < trials; ++k) {
        const double r = static_cast<double>(qsc::sample_once(g, 1.0, HaltCondition::full(), rng).rounds);
        sum += r;
        sum2 += r * r;
    }
    const double mean = sum / trials;
    const double var = sum2 / trials - mean * mean;
    const double expected = 1.0 / 0.75;
    const double expected_var = 0.25 / (0.75 * 0.75);
    EXPECT_NEAR(mean, expected, 3 * std::sqrt(expected_var / trials));
    EXPECT_NEAR(var, expected_var, 0.05);
}

TEST(SampleOnce, CapOfOneRunsOneLayer) {
    const Graph g = qsc::gen_regular(20, 3, 4);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto r = qsc::sample_once(g, 1.0, HaltCondition::capped(1), seed);
        EXPECT_EQ(r.rounds, 1);
        if (r.halted_by == HaltReason::kMaxRounds) {
            EXPECT_FALSE(r.violations_at_halt.empty());
        }
    }
}

TEST(SampleOnce, EdgelessHaltsAfterOneLayer) {
    const auto r = qsc::sample_once(qsc::empty_graph(6), 2.0, HaltCondition::full(), 3);
    EXPECT_EQ(r.rounds, 1);
    EXPECT_EQ(r.halted_by, HaltReason::kFull);
}

TEST(SampleOnce, FullHaltAlwaysIndependent) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Graph g = qsc::gen_regular(30, 3, seed);
        const auto r = qsc::sample_once(g, 0.7, HaltCondition::full(), seed + 1);
        ASSERT_EQ(r.halted_by, HaltReason::kFull);
        EXPECT_TRUE(qsc::is_independent(g, r.assignment));
    }
}

TEST(SampleOnce, AlphaHaltRespectsFraction) {
    const double alpha = 0.1;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Graph g = qsc::gen_regular(40, 3, seed);
        const auto r = qsc::sample_once(g, 1.0, HaltCondition::alpha_fraction(alpha), seed);
        const auto v = qsc::violations(g, r.assignment);
        EXPECT_LE(static_cast<double>(v.edges.size()), alpha * g.num_edges());
        EXPECT_EQ(v.edges, r.violations_at_halt.edges);
    }
}

TEST(SampleOnce, ResamplingIsLocal) {
    // Same seed, one more layer allowed: only B plus N(B) of the earlier halt may change.
    const Graph g = qsc::gen_regular(40, 3, 8);
    int compared = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        for (long cap = 1; cap <= 6; ++cap) {
            const auto before = qsc::sample_once(g, 1.0, HaltCondition::capped(cap), seed);
            if (before.halted_by != HaltReason::kMaxRounds) {
                break;
            }
            const auto after = qsc::sample_once(g, 1.0, HaltCondition::capped(cap + 1), seed);
            const auto reset = before.violations_at_halt.reset_set();
            for (int v = 0; v < g.num_vertices(); ++v) {
                if (!std::binary_search(reset.begin(), reset.end(), v)) {
                    EXPECT_EQ(before.assignment[v], after.assignment[v]);
                }
            }
            ++compared;
        }
    }
    EXPECT_GT(compared, 50);
}

TEST(SampleOnce, ResetSetIsViolatorsAndNeighbors) {
    const Graph g = qsc::path_graph(5);
    const auto v = qsc::violations(g, {0, 1, 1, 0, 1});
    EXPECT_EQ(v.endpoints, (std::vector<int>{1, 2}));
    EXPECT_EQ(v.boundary, (std::vector<int>{0, 3}));
    EXPECT_EQ(v.reset_set(), (std::vector<int>{0, 1, 2, 3}));
}

TEST(Empirical, K2UniformFit) {
    const auto e = qsc::empirical_distribution(qsc::path_graph(2), 1.0, 30000, 17);
    EXPECT_EQ(e.trials, 30000);
    EXPECT_EQ(e.counts.count(3), 0u);
    for (std::uint64_t s : {0u, 1u, 2u}) {
        EXPECT_NEAR(e.counts.at(s) / 30000.0, 1.0 / 3.0, 0.015);
    }
    EXPECT_GT(e.fit.p_value, 1e-3);
}

TEST(Empirical, K2LambdaTwoLaw) {
    const auto law = qsc::gibbs_law(qsc::path_graph(2), 2.0);
    EXPECT_NEAR(law[0], 0.2, 1e-15);
    EXPECT_NEAR(law[1], 0.4, 1e-15);
    EXPECT_NEAR(law[2], 0.4, 1e-15);
    EXPECT_EQ(law[3], 0.0);
    const auto e = qsc::empirical_distribution(qsc::path_graph(2), 2.0, 30000, 5);
    EXPECT_GT(e.fit.p_value, 1e-3);
}

TEST(Empirical, SingleVertex) {
    const auto e = qsc::empirical_distribution(qsc::empty_graph(1), 1.0, 20000, 9);
    EXPECT_NEAR(e.counts.at(1) / 20000.0, 0.5, 4 * std::sqrt(0.25 / 20000));
}

TEST(Empirical, GibbsLawMatchesOracle) {
    const auto edges = oracle::petersen_prefix(8);
    const Graph g = Graph::from_edge_list(8, edges);
    for (double lambda : {0.3, 1.0, 2.0}) {
        const auto law = qsc::gibbs_law(g, lambda);
        const auto expected = oracle::gibbs(8, edges, lambda);
        for (std::size_t s = 0; s < law.size(); ++s) {
            EXPECT_NEAR(law[s], expected[s], 1e-14);
        }
    }
}

TEST(Empirical, DistributionLawOnSmallGraphs) {
    const std::vector<Graph> graphs = {qsc::path_graph(3), qsc::cycle_graph(5), qsc::complete_graph(3),
                                       Graph::from_edge_list(10, oracle::petersen_prefix(10)),
                                       qsc::gen_regular(12, 3, 2)};
    std::uint64_t seed = 100;
    for (const Graph& g : graphs) {
        for (double lambda : {0.3, 1.0, 2.0}) {
            const auto e = qsc::empirical_distribution(g, lambda, 30000, ++seed);
            EXPECT_GT(e.fit.p_value, 1e-3) << "n=" << g.num_vertices() << " lambda=" << lambda;
            for (const auto& [s, c] : e.counts) {
                EXPECT_TRUE(qsc::is_independent_index(g, s));
            }
        }
    }
}

TEST(Empirical, MeanRoundsMonotoneInLambda) {
    const Graph g = qsc::gen_regular(40, 3, 12);
    double previous = 0.0;
    for (double lambda : {0.1, 0.3, 0.7, 1.0}) {
        qsc::Rng rng(77);
        double sum = 0.0;
        for (int k = 0; k < 200; ++k) {
            sum += static_cast<double>(qsc::sample_once(g, lambda, HaltCondition::full(), rng).rounds);
        }
        const double mean = sum / 200;
        EXPECT_GE(mean, previous) << "lambda=" << lambda;
        previous = mean;
    }
}

TEST(Experiment, SingleRecord) {
    qsc::ExperimentSpec spec;
    spec.graph_class = qsc::parse_graph_class("regular");
    spec.n_values = {4};
    spec.d = 3;
    spec.trials_per_point = 1;
    const auto records = qsc::run_experiment(spec);
    ASSERT_EQ(records.size(), 1u);
    EXPECT_EQ(records[0].n, 4);
    EXPECT_GE(records[0].rounds, 1);
}

TEST(Experiment, CensoredRecordsMarked) {
    qsc::ExperimentSpec spec;
    spec.graph_class = qsc::parse_graph_class("planar");
    spec.n_values = {30};
    spec.d = 4;
    spec.lambda = 1.0;
    spec.halt = HaltCondition::capped(2);
    spec.trials_per_point = 20;
    int censored = 0;
    for (const auto& r : qsc::run_experiment(spec)) {
        EXPECT_LE(r.rounds, 2);
        censored += r.halted_by == HaltReason::kMaxRounds;
    }
    EXPECT_GT(censored, 0);
}

TEST(Experiment, ThreadCountDoesNotChangeRecords) {
    qsc::ExperimentSpec spec;
    spec.graph_class = qsc::parse_graph_class("regular");
    spec.n_values = {8, 16, 24};
    spec.trials_per_point = 10;
    spec.base_seed = 3;
    const auto serial = qsc::run_experiment(spec);
    spec.threads = 4;
    const auto parallel = qsc::run_experiment(spec);
    ASSERT_EQ(serial.size(), parallel.size());
    for (std::size_t k = 0; k < serial.size(); ++k) {
        EXPECT_EQ(serial[k].seed, parallel[k].seed);
        EXPECT_EQ(serial[k].rounds, parallel[k].rounds);
    }
}

TEST(Experiment, SeedsIgnoreLambda) {
    const auto cls = qsc::parse_graph_class("regular");
    EXPECT_EQ(qsc::trial_seed(1, cls, 16, 3, 4), qsc::trial_seed(1, cls, 16, 3, 4));
    EXPECT_NE(qsc::trial_seed(1, cls, 16, 3, 4), qsc::trial_seed(1, cls, 16, 3, 5));
    EXPECT_NE(qsc::trial_seed(1, cls, 16, 3, 4), qsc::trial_seed(2, cls, 16, 3, 4));
}

TEST(GraphClassTest, ParseAndGenerate) {
    EXPECT_EQ(qsc::parse_graph_class("star").generate(5, 0, 1), qsc::gen_star(4));
    EXPECT_THROW(qsc::parse_graph_class("tree"), std::invalid_argument);
}

}  // namespace
