#include "runner/commands.h"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qsc/adiabatic.h"
#include "qsc/generators.h"
#include "qsc/prs.h"
#include "qsc/quantum_prep.h"
#include "qsc/stabilizer.h"
#include "qsc/stats.h"
#include "runner/summary.h"
#include "runner/svg.h"

namespace qsc::runner {

namespace fs = std::filesystem;

namespace {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t k = 0; k < count; ++k) {
            fn(k);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < count; k = next++) {
                fn(k);
            }
        });
    }
}

fs::path out_path(const Config& cfg, const std::string& name) {
    fs::path dir = cfg.get_string("out-dir");
    fs::create_directories(dir);
    return dir / name;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + p.string() + "'");
    }
    return out;
}

int positive_int(const Config& cfg, const std::string& key) {
    const long long v = cfg.get_int(key);
    if (v < 1) {
        throw ConfigError("key '" + key + "' must be positive");
    }
    return static_cast<int>(v);
}

std::optional<long> cap_of(const Config& cfg) {
    const long long cap = cfg.get_int("cap");
    if (cap < 0) {
        throw ConfigError("key 'cap' must be >= 0");
    }
    return cap == 0 ? std::nullopt : std::optional<long>(cap);
}

HaltCondition halt_of(std::optional<double> alpha, std::optional<long> cap) {
    if (alpha) {
        if (!(*alpha > 0 && *alpha <= 1)) {
            throw ConfigError("alpha must lie in (0, 1]");
        }
        return HaltCondition::alpha_fraction(*alpha, cap);
    }
    return cap ? HaltCondition::capped(*cap) : HaltCondition::full();
}

}  // namespace

Graph resolve_graph(const std::string& spec) {
    static const std::regex family(R"((path|cycle|complete|star|empty):([0-9]+))");
    std::smatch m;
    if (std::regex_match(spec, m, family)) {
        const int k = std::stoi(m[2].str());
        const std::string name = m[1].str();
        if (k < 1) {
            throw ConfigError("graph '" + spec + "': size must be positive");
        }
        if (name == "path") {
            return path_graph(k);
        }
        if (name == "cycle") {
            return cycle_graph(k);
        }
        if (name == "complete") {
            return complete_graph(k);
        }
        if (name == "star") {
            return gen_star(k);
        }
        return empty_graph(k);
    }
    if (spec == "petersen") {
        return petersen_graph();
    }
    if (spec.empty()) {
        throw ConfigError("no graph given");
    }
    if (!fs::exists(spec)) {
        throw ConfigError("graph file '" + spec + "' not found");
    }
    try {
        return read_graph_file(spec);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("graph file '" + spec + "': " + e.what());
    }
}

void run_sample(const Config& cfg, std::ostream& log) {
    ExperimentSpec base;
    base.graph_class = parse_graph_class(cfg.get_string("graph-class"));
    std::vector<int> ns;
    if (base.graph_class.kind == GraphClassKind::kFixed) {
        base.graph_class.fixed = resolve_graph(cfg.get_string("graph"));
        ns.push_back(base.graph_class.fixed.num_vertices());
    } else {
        for (long long n : cfg.get_int_list("n")) {
            if (n < 1) {
                throw ConfigError("key 'n': vertex counts must be positive");
            }
            ns.push_back(static_cast<int>(n));
        }
    }
    base.n_values = ns;
    base.d = static_cast<int>(cfg.get_int("d"));
    base.trials_per_point = positive_int(cfg, "trials");
    base.base_seed = cfg.get_uint("seed");
    base.threads = positive_int(cfg, "threads");
    const auto cap = cap_of(cfg);

    std::vector<std::optional<double>> alphas;
    for (double a : cfg.get_double_list("alpha")) {
        alphas.emplace_back(a);
    }
    if (alphas.empty()) {
        alphas.emplace_back(std::nullopt);
    }

    std::vector<RuntimeRecord> records;
    for (double lambda : cfg.get_double_list("lambda")) {
        if (!(lambda > 0)) {
            throw ConfigError("key 'lambda': values must be positive");
        }
        for (const auto& alpha : alphas) {
            ExperimentSpec spec = base;
            spec.lambda = lambda;
            spec.halt = halt_of(alpha, cap);
            if (spec.n_values.empty()) {
                continue;
            }
            auto part = run_experiment(spec);
            log << "lambda=" << format_number(lambda) << " alpha=" << (alpha ? format_number(*alpha) : "none")
                << ": " << part.size() << " trials\n";
            records.insert(records.end(), part.begin(), part.end());
        }
    }

    const auto rows = summarize(records);
    {
        auto out = open_out(out_path(cfg, "runs.csv"));
        write_runs_csv(out, records);
    }
    {
        auto out = open_out(out_path(cfg, "summary.csv"));
        write_summary_csv(out, rows);
    }
    const std::string svg = cfg.get_string("svg");
    if (!svg.empty() && !rows.empty()) {
        AxesSpec axes;
        axes.x_log = cfg.get_string("x-scale") == "log";
        axes.y_log = cfg.get_string("y-scale") == "log";
        auto doc = emit_svg(rows, axes);
        for (const auto& w : doc.warnings) {
            log << "warning: " << w << '\n';
        }
        auto out = open_out(out_path(cfg, svg));
        out << doc.text;
    }
}

void run_qsim(const Config& cfg, std::ostream& log) {
    const Graph g = resolve_graph(cfg.get_string("graph"));
    const double lambda = cfg.get_double("lambda");
    if (!(lambda > 0)) {
        throw ConfigError("key 'lambda' must be positive");
    }
    const auto alpha = cfg.get_optional_double("alpha");
    const auto cap = cap_of(cfg);
    const HaltCondition halt = halt_of(alpha, cap);
    const int trials = positive_int(cfg, "trials");
    const std::uint64_t seed = cfg.get_uint("seed");
    const AncillaMode mode = cfg.get_string("ancilla") == "explicit" ? AncillaMode::kExplicit : AncillaMode::kImplicit;
    if (g.num_vertices() > kMaxQubits) {
        throw GuardError("graph has " + std::to_string(g.num_vertices()) + " vertices, simulator limit is " +
                         std::to_string(kMaxQubits));
    }

    struct TrialOut {
        long rounds = 0;
        HaltReason halted_by = HaltReason::kFull;
        double law_deviation = -1;
        double leak = 0;
        bool structured = true;
        std::uint64_t outcome = 0;
    };
    const bool law_check = g.num_vertices() <= kLawCheckMaxVertices;
    std::vector<TrialOut> results(static_cast<std::size_t>(trials));
    parallel_for(results.size(), positive_int(cfg, "threads"), [&](std::size_t k) {
        const std::uint64_t s = derive_seed({seed, k});
        QscRunResult r = prepare_distribution(g, lambda, halt, s, mode);
        TrialOut& t = results[k];
        t.rounds = r.rounds;
        t.halted_by = r.halted_by;
        if (r.halted_by == HaltReason::kFull) {
            t.leak = non_independent_weight(r.final_state, g);
            if (law_check) {
                t.law_deviation = verify_gibbs_law(r, g, lambda);
            }
            // One computational-basis readout per trial for the sampling test.
            Rng rng(derive_seed({s, 2}));
            const auto probs = r.final_state.probabilities();
            double u = uniform01(rng);
            std::uint64_t idx = 0;
            for (; idx + 1 < probs.size(); ++idx) {
                u -= probs[idx];
                if (u < 0) {
                    break;
                }
            }
            t.outcome = idx;
        }
        if (r.halted_by == HaltReason::kAlphaFraction) {
            t.structured = check_alpha_halt_structure(r, g);
        }
    });

    std::map<long, long> hist;
    std::map<std::string, long> halted;
    double max_dev = 0;
    double max_leak = 0;
    bool structured = true;
    long full = 0;
    std::map<std::uint64_t, double> outcome_counts;
    for (const auto& t : results) {
        ++hist[t.rounds];
        ++halted[std::string(to_string(t.halted_by))];
        structured = structured && t.structured;
        if (t.halted_by == HaltReason::kFull) {
            ++full;
            max_dev = std::max(max_dev, t.law_deviation);
            max_leak = std::max(max_leak, t.leak);
            outcome_counts[t.outcome] += 1;
        }
    }

    nlohmann::ordered_json report;
    report["graph"] = {{"spec", cfg.get_string("graph")}, {"n", g.num_vertices()}, {"m", g.num_edges()}};
    report["lambda"] = lambda;
    report["alpha"] = alpha ? nlohmann::ordered_json(*alpha) : nlohmann::ordered_json(nullptr);
    report["cap"] = cap ? nlohmann::ordered_json(*cap) : nlohmann::ordered_json(nullptr);
    report["ancilla"] = cfg.get_string("ancilla");
    report["trials"] = trials;
    report["seed"] = seed;
    nlohmann::ordered_json h = nlohmann::ordered_json::object();
    for (const auto& [rounds, count] : hist) {
        h[std::to_string(rounds)] = count;
    }
    report["rounds_histogram"] = h;
    report["halted_by"] = halted;
    std::vector<double> rounds_d;
    for (const auto& t : results) {
        rounds_d.push_back(static_cast<double>(t.rounds));
    }
    report["mean_rounds"] = mean(rounds_d);
    report["max_law_deviation"] = (law_check && full > 0) ? nlohmann::ordered_json(max_dev) : nullptr;
    report["max_non_independent_weight"] = full > 0 ? nlohmann::ordered_json(max_leak) : nullptr;
    if (alpha) {
        report["alpha_structure_ok"] = structured;
    }

    nlohmann::ordered_json pvals = nlohmann::ordered_json::object();
    if (full > 0 && g.num_vertices() <= kEmpiricalMaxVertices) {
        const auto law = gibbs_law(g, lambda);
        std::vector<double> observed;
        std::vector<double> expected;
        for (std::uint64_t k = 0; k < law.size(); ++k) {
            if (law[k] > 0) {
                observed.push_back(outcome_counts.count(k) ? outcome_counts[k] : 0.0);
                expected.push_back(law[k]);
            }
        }
        pvals["readout_vs_gibbs"] = chi_square_goodness_of_fit(observed, expected).p_value;
    }
    if (!alpha && !cap && g.num_vertices() <= kEquivalenceMaxVertices) {
        auto eq = round_distribution_equivalence(g, lambda, trials, derive_seed({seed, 0x5eedULL}), mode);
        pvals["rounds_quantum_vs_classical"] = eq.test.p_value;
    }
    report["p_values"] = pvals;

    auto out = open_out(out_path(cfg, cfg.get_string("report")));
    out << report.dump(2) << '\n';
    log << "qsim: " << trials << " trials, mean rounds " << format_number(mean(rounds_d)) << '\n';
}

void run_stabilizer(const Config& cfg, std::ostream& out) {
    Constraint c = [&] {
        const std::string table = cfg.get_string("truth-table");
        if (!table.empty()) {
            std::ifstream in(table);
            if (!in) {
                throw ConfigError("cannot read truth table '" + table + "'");
            }
            try {
                return Constraint::from_truth_table_text(in, fs::path(table).stem().string());
            } catch (const std::invalid_argument& e) {
                throw ConfigError("truth table '" + table + "': " + e.what());
            }
        }
        return constraint_by_name(cfg.get_string("constraint"));
    }();

    std::ostringstream text;
    const std::string which = cfg.get_string("matrix");
    if (which == "stabilizer" || which == "both") {
        const auto s = build_stabilizer(c);
        text << "# stabilizer " << c.label() << ' ' << s.dimension() << 'x' << s.dimension() << '\n';
        write_matrix(text, s);
    }
    if (which == "syndrome" || which == "both") {
        const auto g = build_syndrome_unitary(c);
        text << "# syndrome " << c.label() << ' ' << g.dim << 'x' << g.dim << '\n';
        write_matrix(text, g);
    }
    const std::string output = cfg.get_string("output");
    if (output.empty()) {
        out << text.str();
    } else {
        auto f = open_out(out_path(cfg, output));
        f << text.str();
    }
}

void run_adiabatic(const Config& cfg, std::ostream& log) {
    const Graph g = resolve_graph(cfg.get_string("graph"));
    if (g.num_vertices() > kAdiabaticMaxVertices) {
        throw GuardError("adiabatic simulation limited to n <= " + std::to_string(kAdiabaticMaxVertices));
    }
    Schedule base = Schedule::for_graph(g, 1);
    if (const double t = cfg.get_double("total-time"); t > 0) {
        base.total_time = t;
    } else if (t < 0) {
        throw ConfigError("key 'total-time' must be >= 0");
    }
    base.delta = cfg.get_double("delta");
    if (!(base.delta > 0)) {
        throw ConfigError("key 'delta' must be positive");
    }
    base.qsc_interval = static_cast<int>(cfg.get_int("qsc-interval"));
    if (base.qsc_interval < 0) {
        throw ConfigError("key 'qsc-interval' must be >= 0");
    }
    base.theta_convention =
        cfg.get_string("theta-convention") == "linear" ? ThetaConvention::kLinear : ThetaConvention::kLiteralRate;
    const int trials = positive_int(cfg, "trials");
    const std::uint64_t seed = cfg.get_uint("seed");

    std::vector<QscMode> modes;
    const std::string q = cfg.get_string("qsc");
    if (q == "off" || q == "both") {
        modes.push_back(QscMode::kOff);
    }
    if (q == "on" || q == "both") {
        modes.push_back(QscMode::kOn);
    }
    struct Point {
        int nt;
        QscMode mode;
        AdiabaticResult result;
    };
    std::vector<Point> points;
    for (long long nt : cfg.get_int_list("nt")) {
        if (nt < 1) {
            throw ConfigError("key 'nt': step counts must be positive");
        }
        for (QscMode m : modes) {
            points.push_back({static_cast<int>(nt), m, {}});
        }
    }
    parallel_for(points.size(), positive_int(cfg, "threads"), [&](std::size_t k) {
        Schedule s = base;
        s.trotter_steps = points[k].nt;
        points[k].result = run_trotter_trials(g, s, points[k].mode, trials,
                                              derive_seed({seed, static_cast<std::uint64_t>(points[k].nt)}));
    });

    auto out = open_out(out_path(cfg, cfg.get_string("output")));
    out << "N_T,qsc,figure_of_merit";
    for (int k = 0; k <= g.num_vertices(); ++k) {
        out << ",p_size_" << k;
    }
    out << ",p_invalid\n";
    for (const auto& p : points) {
        out << p.nt << ',' << (p.mode == QscMode::kOn ? "on" : "off") << ','
            << format_number(p.result.figure_of_merit);
        for (double v : p.result.sizes.by_size) {
            out << ',' << format_number(v);
        }
        out << ',' << format_number(p.result.sizes.invalid) << '\n';
    }
    log << "adiabatic: " << points.size() << " points written\n";
}

void run_plot(const Config& cfg, std::ostream& log) {
    const std::string input = cfg.get_string("input");
    std::ifstream in(input);
    if (!in) {
        throw ConfigError("cannot read summary '" + input + "'");
    }
    const auto rows = read_summary_csv(in);
    if (rows.empty()) {
        throw ConfigError("summary '" + input + "' has no rows to plot");
    }
    AxesSpec axes;
    axes.x_log = cfg.get_string("x-scale") == "log";
    axes.y_log = cfg.get_string("y-scale") == "log";
    axes.title = cfg.get_string("title");
    auto doc = emit_svg(rows, axes);
    for (const auto& w : doc.warnings) {
        log << "warning: " << w << '\n';
    }
    auto out = open_out(out_path(cfg, cfg.get_string("output")));
    out << doc.text;
}

int execute(const Config& cfg, std::ostream& out, std::ostream& err) {
    try {
        const std::string& c = cfg.command();
        if (c == "sample") {
            run_sample(cfg, err);
        } else if (c == "qsim") {
            run_qsim(cfg, err);
        } else if (c == "stabilizer") {
            run_stabilizer(cfg, out);
        } else if (c == "adiabatic") {
            run_adiabatic(cfg, err);
        } else if (c == "plot") {
            run_plot(cfg, err);
        } else {
            throw ConfigError("unknown command '" + c + "'");
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const GuardError& e) {
        err << "size guard: " << e.what() << '\n';
        return kExitGuard;
    } catch (const std::invalid_argument& e) {
        err << "invalid parameter: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

int run_config(const std::string& command, const std::string& path, std::ostream& out, std::ostream& err) {
    try {
        Config cfg(command);
        cfg.merge_file(path);
        return execute(cfg, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace qsc::runner
