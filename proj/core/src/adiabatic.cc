#include "qsc/adiabatic.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsc {

namespace {

constexpr double kPi = std::numbers::pi;
// Step bound for the reference single-edge integration.
constexpr double kIsolatedEdgeMaxStep = 1e-3;

void check_size(const Graph& g) {
    if (g.num_vertices() > kAdiabaticMaxVertices) {
        throw GuardError("adiabatic simulation limited to n <= " + std::to_string(kAdiabaticMaxVertices) +
                         ", got n=" + std::to_string(g.num_vertices()));
    }
}

void check_schedule(const Schedule& s) {
    if (!(s.total_time > 0) || s.trotter_steps < 1 || !(s.delta > 0)) {
        throw std::invalid_argument("schedule needs T > 0, delta > 0 and at least one Trotter step");
    }
}

std::vector<Complex> phases_for(std::span<const double> energies, double h) {
    std::vector<Complex> out(energies.size());
    for (std::size_t k = 0; k < energies.size(); ++k) {
        out[k] = std::polar(1.0, -h * energies[k]);
    }
    return out;
}

void apply_phases(StateVector& s, std::span<const Complex> phases) { s.apply_diagonal(phases); }

}  // namespace

Schedule Schedule::for_graph(const Graph& g, int trotter_steps) {
    Schedule s;
    s.total_time = static_cast<double>(g.num_vertices()) * g.num_vertices();
    s.trotter_steps = trotter_steps;
    return s;
}

double Schedule::theta(double t) const {
    if (theta_convention == ThetaConvention::kLinear) {
        return kPi * t / total_time;
    }
    return kPi * t * t / (2.0 * total_time);
}

double Schedule::theta_rate(double t) const {
    if (theta_convention == ThetaConvention::kLinear) {
        return kPi / total_time;
    }
    return kPi * t / total_time;
}

int Schedule::effective_qsc_interval() const {
    if (qsc_interval > 0) {
        return qsc_interval;
    }
    return std::max(1, std::min(10, trotter_steps / 4));
}

Gate1Q u_b_1q(double theta, double phi) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return {{-c, std::polar(s, phi), std::polar(s, -phi), c}};
}

Gate1Q u_b_at(const Schedule& s, double t) { return u_b_1q(s.theta(t), s.phi(t)); }

std::vector<double> constraint_energies(const Graph& g, double delta) {
    const std::uint64_t dim = std::uint64_t{1} << g.num_vertices();
    std::vector<double> e(dim, 0.0);
    for (std::uint64_t k = 0; k < dim; ++k) {
        double total = 0.0;
        for (const Edge& edge : g.edges()) {
            bool violated = ((k >> edge.u) & 1U) && ((k >> edge.v) & 1U);
            total += violated ? 3.0 * delta : -delta;
        }
        e[k] = total;
    }
    return e;
}

SizeLaw size_law(std::span<const double> law, const Graph& g) {
    SizeLaw out;
    out.by_size.assign(g.num_vertices() + 1, 0.0);
    for (std::uint64_t k = 0; k < law.size(); ++k) {
        if (is_independent_index(g, k)) {
            out.by_size[std::popcount(k)] += law[k];
        } else {
            out.invalid += law[k];
        }
    }
    return out;
}

double figure_of_merit(std::span<const double> law, const Graph& g, int mis_size) {
    if (mis_size <= 0) {
        return 0.0;
    }
    double expected = 0.0;
    for (std::uint64_t k = 0; k < law.size(); ++k) {
        if (is_independent_index(g, k)) {
            expected += law[k] * std::popcount(k);
        }
    }
    return expected / mis_size;
}

double figure_of_merit(std::span<const double> law, const Graph& g) {
    if (g.num_vertices() > 20) {
        throw GuardError("figure of merit needs brute-force MIS, limited to n <= 20");
    }
    return figure_of_merit(law, g, max_independent_set_size(g));
}

void evolve_rotating_frame(StateVector& frame_state, const Graph& g, const Schedule& sched, double t0, double t1,
                           long substeps) {
    if (substeps < 1) {
        throw std::invalid_argument("substeps must be positive");
    }
    if (t1 == t0) {
        return;
    }
    const double h = (t1 - t0) / static_cast<double>(substeps);
    const auto energies = constraint_energies(g, sched.delta);
    const auto phases = phases_for(energies, h);

    // Midpoint step in the lab frame, U_B(tm) e^{-ih H_A} U_B(tm)^-1, conjugated
    // into the rotating frame. Adjacent rotations fuse into U_B(tm_k) U_B(tm_{k-1}).
    Gate1Q previous = u_b_at(sched, t0);
    for (long k = 0; k < substeps; ++k) {
        const double tm = t0 + (static_cast<double>(k) + 0.5) * h;
        const Gate1Q mid = u_b_at(sched, tm);
        frame_state.apply_1q_all(mid * previous);
        apply_phases(frame_state, phases);
        previous = mid;
    }
    frame_state.apply_1q_all(u_b_at(sched, t1) * previous);
}

namespace {

AdiabaticResult finish(StateVector state, const Graph& g, int mis_size) {
    AdiabaticResult r;
    r.law = state.probabilities();
    r.sizes = size_law(r.law, g);
    r.figure_of_merit = figure_of_merit(r.law, g, mis_size);
    r.final_state = std::move(state);
    return r;
}

long auto_substeps(double span) {
    return std::max<long>(1, static_cast<long>(std::ceil(std::abs(span) / kIsolatedEdgeMaxStep)));
}

// Recovery targets for every correction time of one schedule, computed once
// by a single incremental integration of the isolated edge.
std::map<int, TwoQubitState> recovery_targets(const Schedule& sched) {
    std::map<int, TwoQubitState> targets;
    const int interval = sched.effective_qsc_interval();
    const Graph edge = Graph::from_edge_list(2, {{0, 1}});
    StateVector frame(2);
    double t = 0.0;
    for (int step = interval; step <= sched.trotter_steps; step += interval) {
        const double t_next = step * sched.dt();
        evolve_rotating_frame(frame, edge, sched, t, t_next, auto_substeps(t_next - t));
        t = t_next;
        TwoQubitState psi{frame.amplitude(0), frame.amplitude(1), frame.amplitude(2), Complex{0}};
        double w = std::norm(psi[0]) + std::norm(psi[1]) + std::norm(psi[2]);
        for (auto& a : psi) {
            a /= std::sqrt(w);
        }
        targets[step] = psi;
    }
    return targets;
}

AdiabaticResult run_trotter_impl(const Graph& g, const Schedule& sched, QscMode qsc, Rng& rng,
                                 const std::map<int, TwoQubitState>& targets, int mis_size) {
    const double dt = sched.dt();
    const auto phases = phases_for(constraint_energies(g, sched.delta), dt);
    const int interval = sched.effective_qsc_interval();

    StateVector state(g.num_vertices());
    std::vector<Recovery> log;
    std::vector<double> post_round;
    for (int n = 1; n <= sched.trotter_steps; ++n) {
        state.apply_1q_all(u_b_at(sched, n * dt) * u_b_at(sched, (n - 1) * dt));
        apply_phases(state, phases);
        if (qsc == QscMode::kOff || n % interval != 0) {
            continue;
        }
        const TwoQubitSequence recover = prepare_two_qubit(targets.at(n));
        for (const Edge& e : g.edges()) {
            if (state.measure_edge_projector(e.u, e.v, rng).bit == 0) {
                continue;
            }
            state.apply_x(e.u);
            state.apply_x(e.v);
            recover.apply(state, e.u, e.v);
            log.push_back({n, e});
        }
        double invalid = 0.0;
        const auto probs = state.probabilities();
        for (std::uint64_t k = 0; k < probs.size(); ++k) {
            if (!is_independent_index(g, k)) {
                invalid += probs[k];
            }
        }
        post_round.push_back(invalid);
    }
    AdiabaticResult r = finish(std::move(state), g, mis_size);
    r.recovery_log = std::move(log);
    r.post_round_violation_weight = std::move(post_round);
    return r;
}

}  // namespace

AdiabaticResult run_exact(const Graph& g, const Schedule& sched, long substeps) {
    check_size(g);
    check_schedule(sched);
    StateVector frame(g.num_vertices());
    evolve_rotating_frame(frame, g, sched, 0.0, sched.total_time, substeps);
    return finish(std::move(frame), g, max_independent_set_size(g));
}

AdiabaticResult run_trotter(const Graph& g, const Schedule& sched, QscMode qsc, Rng& rng) {
    check_size(g);
    check_schedule(sched);
    std::map<int, TwoQubitState> targets;
    if (qsc == QscMode::kOn) {
        targets = recovery_targets(sched);
    }
    return run_trotter_impl(g, sched, qsc, rng, targets, max_independent_set_size(g));
}

AdiabaticResult run_trotter(const Graph& g, const Schedule& sched, QscMode qsc, std::uint64_t seed) {
    Rng rng(seed);
    return run_trotter(g, sched, qsc, rng);
}

AdiabaticResult run_trotter_trials(const Graph& g, const Schedule& sched, QscMode qsc, int trials,
                                   std::uint64_t seed) {
    check_size(g);
    check_schedule(sched);
    if (trials < 1) {
        throw std::invalid_argument("trials must be positive");
    }
    const int mis = max_independent_set_size(g);
    if (qsc == QscMode::kOff) {
        Rng unused(seed);
        return run_trotter_impl(g, sched, qsc, unused, {}, mis);
    }
    const auto targets = recovery_targets(sched);
    Rng rng(seed);
    AdiabaticResult total;
    std::vector<double> law(std::size_t{1} << g.num_vertices(), 0.0);
    for (int t = 0; t < trials; ++t) {
        AdiabaticResult r = run_trotter_impl(g, sched, qsc, rng, targets, mis);
        for (std::size_t k = 0; k < law.size(); ++k) {
            law[k] += r.law[k] / trials;
        }
        total.recovery_log.insert(total.recovery_log.end(), r.recovery_log.begin(), r.recovery_log.end());
        total.post_round_violation_weight.insert(total.post_round_violation_weight.end(),
                                                 r.post_round_violation_weight.begin(),
                                                 r.post_round_violation_weight.end());
        if (t == trials - 1) {
            total.final_state = std::move(r.final_state);
        }
    }
    total.law = std::move(law);
    total.sizes = size_law(total.law, g);
    total.figure_of_merit = figure_of_merit(total.law, g, mis);
    return total;
}

StateVector trotter_lab_product(const Graph& g, const Schedule& sched) {
    check_size(g);
    check_schedule(sched);
    const double dt = sched.dt();
    const auto phases = phases_for(constraint_energies(g, sched.delta), dt);
    StateVector state(g.num_vertices());
    for (int n = 0; n <= sched.trotter_steps; ++n) {
        const Gate1Q u = u_b_at(sched, n * dt);
        state.apply_1q_all(u);
        apply_phases(state, phases);
        state.apply_1q_all(u);
    }
    return state;
}

TwoQubitState isolated_edge_state(double t, const Schedule& sched, long substeps) {
    if (t < 0 || t > sched.total_time) {
        throw std::invalid_argument("isolated edge time must lie in [0, T]");
    }
    const Graph edge = Graph::from_edge_list(2, {{0, 1}});
    StateVector frame(2);
    evolve_rotating_frame(frame, edge, sched, 0.0, t, substeps > 0 ? substeps : auto_substeps(t));
    return {frame.amplitude(0), frame.amplitude(1), frame.amplitude(2), frame.amplitude(3)};
}

TwoQubitState isolated_edge_recovery_target(double t, const Schedule& sched) {
    TwoQubitState psi = isolated_edge_state(t, sched);
    psi[3] = 0.0;
    double w = std::norm(psi[0]) + std::norm(psi[1]) + std::norm(psi[2]);
    for (auto& a : psi) {
        a /= std::sqrt(w);
    }
    return psi;
}

Eigen::Matrix4cd moving_frame_hamiltonian(double theta, double phi, double theta_rate, double phi_rate,
                                          double delta) {
    using Eigen::Matrix2cd;
    using Eigen::Matrix4cd;
    const Complex i{0.0, 1.0};
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const Complex e_plus = std::polar(1.0, phi);
    const Complex e_minus = std::polar(1.0, -phi);

    Matrix2cd u;
    u << -c, e_plus * s, e_minus * s, c;
    Matrix2cd du_theta;
    du_theta << 0.5 * s, 0.5 * e_plus * c, 0.5 * e_minus * c, -0.5 * s;
    Matrix2cd du_phi;
    du_phi << 0.0, i * e_plus * s, -i * e_minus * s, 0.0;

    // Index = b0 + 2 b1, so the second qubit's factor is the outer block.
    auto kron = [](const Matrix2cd& second, const Matrix2cd& first) {
        Matrix4cd out;
        for (int a1 = 0; a1 < 2; ++a1) {
            for (int b1 = 0; b1 < 2; ++b1) {
                out.block<2, 2>(2 * a1, 2 * b1) = second(a1, b1) * first;
            }
        }
        return out;
    };
    const Matrix4cd big_u = kron(u, u);
    const Matrix4cd d_theta = kron(du_theta, u) + kron(u, du_theta);
    const Matrix4cd d_phi = kron(du_phi, u) + kron(u, du_phi);

    Matrix4cd h = Matrix4cd::Zero();
    h(0, 0) = -delta;
    h(1, 1) = -delta;
    h(2, 2) = -delta;
    h(3, 3) = 3.0 * delta;
    h += -i * (theta_rate * (big_u.adjoint() * d_theta) + phi_rate * (big_u.adjoint() * d_phi));
    return h;
}

Eigen::Matrix4cd moving_frame_hamiltonian(double t, const Schedule& sched) {
    return moving_frame_hamiltonian(sched.theta(t), sched.phi(t), sched.theta_rate(t), sched.phi_rate(t),
                                    sched.delta);
}

Eigen::Vector4cd integrate_moving_frame(double t, const Schedule& sched, long steps) {
    if (steps < 1) {
        throw std::invalid_argument("steps must be positive");
    }
    const double sqrt3 = std::sqrt(3.0);
    const double c1 = 0.5 - sqrt3 / 6.0;
    const double c2 = 0.5 + sqrt3 / 6.0;
    const double a1 = (3.0 - 2.0 * sqrt3) / 12.0;
    const double a2 = (3.0 + 2.0 * sqrt3) / 12.0;
    const double h = t / static_cast<double>(steps);

    auto expm_herm = [](const Eigen::Matrix4cd& m, double scale) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m);
        Eigen::Vector4cd phases;
        for (int k = 0; k < 4; ++k) {
            phases(k) = std::polar(1.0, -scale * es.eigenvalues()(k));
        }
        return Eigen::Matrix4cd(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
    };

    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi(0) = 1.0;
    for (long k = 0; k < steps; ++k) {
        const double tk = static_cast<double>(k) * h;
        const Eigen::Matrix4cd h1 = moving_frame_hamiltonian(tk + c1 * h, sched);
        const Eigen::Matrix4cd h2 = moving_frame_hamiltonian(tk + c2 * h, sched);
        psi = expm_herm(a2 * h1 + a1 * h2, h) * psi;
        psi = expm_herm(a1 * h1 + a2 * h2, h) * psi;
    }
    return psi;
}

}  // namespace qsc
