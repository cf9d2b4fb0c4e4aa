#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qsc/graph.h"
#include "qsc/rng.h"
#include "qsc/statevector.h"
#include "qsc/two_qubit_prep.h"

namespace qsc {

enum class ThetaConvention {
    /// theta(t) = pi t / T, so theta(T) = pi.
    kLinear,
    /// theta'(t) = pi t / T, so theta(t) = pi t^2 / (2T).
    kLiteralRate,
};

/// Time parameterization of the global rotation. phi(t) = t^2 / 2 in both
/// conventions (phi'(t) = t).
struct Schedule {
    double total_time = 1.0;
    double delta = 1.0;
    int trotter_steps = 100;
    ThetaConvention theta_convention = ThetaConvention::kLinear;
    /// Steps between subspace-correction rounds; 0 picks min(10, N_T / 4), at least 1.
    int qsc_interval = 0;

    /// T = n^2 for an n-vertex graph.
    static Schedule for_graph(const Graph& g, int trotter_steps);

    double dt() const { return total_time / trotter_steps; }
    double theta(double t) const;
    double theta_rate(double t) const;
    double phi(double t) const { return 0.5 * t * t; }
    double phi_rate(double t) const { return t; }
    int effective_qsc_interval() const;
};

/// Single-qubit factor of the global rotation:
/// [[-cos(theta/2), e^{i phi} sin(theta/2)], [e^{-i phi} sin(theta/2), cos(theta/2)]].
/// Hermitian and unitary, hence its own inverse.
Gate1Q u_b_1q(double theta, double phi);
Gate1Q u_b_at(const Schedule& s, double t);

/// Energy of each basis state under the edge constraint Hamiltonian:
/// -delta on 00, 01, 10 and 3 delta on 11, summed over edges.
std::vector<double> constraint_energies(const Graph& g, double delta);

/// Probability summary of a computational-basis law.
struct SizeLaw {
    std::vector<double> by_size;  ///< P(independent set of size k)
    double invalid = 0.0;         ///< weight on non-independent bitstrings
};

SizeLaw size_law(std::span<const double> law, const Graph& g);

/// sum_s P(s) |s| [s in IS] / |MIS|; violating bitstrings contribute 0.
double figure_of_merit(std::span<const double> law, const Graph& g);
double figure_of_merit(std::span<const double> law, const Graph& g, int mis_size);

struct Recovery {
    int step = 0;
    Edge edge;
};

struct AdiabaticResult {
    StateVector final_state{1};
    std::vector<double> law;  ///< |amplitude|^2, averaged over trials when stochastic
    SizeLaw sizes;
    double figure_of_merit = 0.0;
    std::vector<Recovery> recovery_log;
    /// Weight on violating bitstrings right after each correction round.
    std::vector<double> post_round_violation_weight;
};

inline constexpr int kAdiabaticMaxVertices = 12;

/// Evolves the rotating-frame state U_B(t)^-1 psi(t) from t0 to t1 under
/// H(t) = U_B(t) H_A U_B(t)^-1 with `substeps` midpoint steps.
void evolve_rotating_frame(StateVector& frame_state, const Graph& g, const Schedule& sched, double t0, double t1,
                           long substeps);

/// Reference integration from |0...0> to T; the trailing full rotation is
/// omitted, so the result is read out in the frame where H_A is diagonal.
AdiabaticResult run_exact(const Graph& g, const Schedule& sched, long substeps);

enum class QscMode { kOff, kOn };

/// First-order product formula: per step, e^{-i dt H_A} U_B(n dt)^-1 U_B((n-1) dt).
/// With QSC on, after every qsc interval the edges are checked serially in
/// sorted order; a violating edge is reset and re-prepared in the isolated
/// edge state for the current time.
AdiabaticResult run_trotter(const Graph& g, const Schedule& sched, QscMode qsc, Rng& rng);
AdiabaticResult run_trotter(const Graph& g, const Schedule& sched, QscMode qsc, std::uint64_t seed);

/// Averages the output law of `trials` independent runs (one run when QSC is off).
AdiabaticResult run_trotter_trials(const Graph& g, const Schedule& sched, QscMode qsc, int trials,
                                   std::uint64_t seed);

/// Lab-frame product over n = 0..N_T of U_B(n dt) e^{-i dt H_A} U_B(n dt)^-1 on |0...0>.
StateVector trotter_lab_product(const Graph& g, const Schedule& sched);

/// Single-edge state at time t, evolved from |00> under the same schedule,
/// in the same frame the Trotter loop uses.
TwoQubitState isolated_edge_state(double t, const Schedule& sched, long substeps = 0);

/// Recovery target: the isolated-edge state with its |11> component removed
/// and renormalized.
TwoQubitState isolated_edge_recovery_target(double t, const Schedule& sched);

/// Rotating-frame Hamiltonian of a single edge:
/// H_A - i (theta' U^dag d_theta U + phi' U^dag d_phi U), U = U_B (x) U_B.
/// Basis-index order (bit 0 = first vertex).
Eigen::Matrix4cd moving_frame_hamiltonian(double t, const Schedule& sched);
Eigen::Matrix4cd moving_frame_hamiltonian(double theta, double phi, double theta_rate, double phi_rate,
                                          double delta);

/// Independent route for the single-edge state: fourth-order
/// commutator-free Magnus integration of the moving-frame Hamiltonian.
Eigen::Vector4cd integrate_moving_frame(double t, const Schedule& sched, long steps);

}  // namespace qsc
