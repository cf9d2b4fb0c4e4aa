#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "qsc/rng.h"

namespace qsc {

using Complex = std::complex<double>;

/// Single-qubit state (amplitude of |0>, amplitude of |1>).
using Qubit = std::array<Complex, 2>;

/// 2x2 matrix, row-major: {m00, m01, m10, m11}.
struct Gate1Q {
    std::array<Complex, 4> m{Complex{1}, Complex{0}, Complex{0}, Complex{1}};

    Complex operator()(int row, int col) const { return m[2 * row + col]; }
    Gate1Q adjoint() const;
    Gate1Q operator*(const Gate1Q& rhs) const;
    Gate1Q operator*(Complex scale) const;
    Qubit apply(const Qubit& q) const;
    bool is_unitary(double tol = 1e-12) const;

    static Gate1Q identity() { return {}; }
    static Gate1Q x();
    static Gate1Q h();
    static Gate1Q ry(double angle);
    static Gate1Q rz(double angle);
    /// A unitary taking |0> to the given unit-norm state.
    static Gate1Q prepare(const Qubit& target);
};

/// Amplitudes (sqrt(1-p), sqrt(p)) with p = lambda / (1 + lambda).
Qubit lambda_plus_state(double lambda);
Qubit plus_state();

struct MeasurementOutcome {
    int bit = 0;
    /// Born weight of the observed branch before collapse.
    double probability = 0.0;
};

inline constexpr int kMaxQubits = 26;
/// Branches lighter than this are treated as impossible outcomes.
inline constexpr double kImpossibleBranch = 1e-14;

/// Dense statevector. Qubit q is bit q of the basis index (qubit 0 least significant).
class StateVector {
  public:
    /// |0...0> on n qubits.
    explicit StateVector(int n_qubits);
    /// Tensor product of single-qubit states, qubit k taking states[k].
    static StateVector product(std::span<const Qubit> states);
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    int num_qubits() const { return n_; }
    std::size_t dimension() const { return amps_.size(); }
    const std::vector<Complex>& amplitudes() const { return amps_; }
    Complex amplitude(std::uint64_t index) const { return amps_[index]; }
    double norm_squared() const;
    std::vector<double> probabilities() const;
    /// Probability that qubit q reads 1.
    double probability_one(int q) const;

    void apply_1q(const Gate1Q& g, int q);
    /// Same gate on every qubit.
    void apply_1q_all(const Gate1Q& g);
    void apply_controlled_1q(const Gate1Q& g, int control, int target);
    void apply_x(int q) { apply_1q(Gate1Q::x(), q); }
    void apply_toffoli(int c1, int c2, int target);
    /// Elementwise multiply by unimodular phases, one per basis state.
    void apply_diagonal(std::span<const Complex> phases);
    /// Phase on the two-qubit basis value (bit i) + 2*(bit j), for edge (i, j).
    void apply_edge_phase(int i, int j, const std::array<Complex, 4>& phases);

    MeasurementOutcome measure_qubit(int q, Rng& rng);
    /// Collapse qubit q onto `bit`, returning the branch weight beforehand.
    double project_qubit(int q, int bit);

    /// Projective measurement of |11><11| on qubits (i, j). Outcome 1 means both are 1.
    MeasurementOutcome measure_edge_projector(int i, int j, Rng& rng);
    double edge_violation_probability(int i, int j) const;
    double project_edge(int i, int j, int outcome);

    /// Measure q, flip to |0> if needed, then rotate |0> to target.
    void reset_qubit(int q, const Qubit& target, Rng& rng);

    /// One line per amplitude above 1e-12: "bitstring re im", in ket order
    /// (highest qubit leftmost, so basis index 2 prints as 10).
    void dump(std::ostream& out) const;

  private:
    void check_qubit(int q) const;
    void renormalize(double weight);

    int n_ = 0;
    std::vector<Complex> amps_;
};

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace qsc
