#include "qsc/statevector.h"

#include <bit>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qsc/graph.h"

namespace qsc {

Gate1Q Gate1Q::adjoint() const { return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}}; }

Gate1Q Gate1Q::operator*(const Gate1Q& r) const {
    return {{m[0] * r.m[0] + m[1] * r.m[2], m[0] * r.m[1] + m[1] * r.m[3], m[2] * r.m[0] + m[3] * r.m[2],
             m[2] * r.m[1] + m[3] * r.m[3]}};
}

Gate1Q Gate1Q::operator*(Complex s) const { return {{m[0] * s, m[1] * s, m[2] * s, m[3] * s}}; }

Qubit Gate1Q::apply(const Qubit& q) const { return {m[0] * q[0] + m[1] * q[1], m[2] * q[0] + m[3] * q[1]}; }

bool Gate1Q::is_unitary(double tol) const {
    Gate1Q p = adjoint() * *this;
    return std::abs(p.m[0] - 1.0) < tol && std::abs(p.m[1]) < tol && std::abs(p.m[2]) < tol &&
           std::abs(p.m[3] - 1.0) < tol;
}

Gate1Q Gate1Q::x() { return {{0, 1, 1, 0}}; }

Gate1Q Gate1Q::h() {
    const double r = 1.0 / std::sqrt(2.0);
    return {{r, r, r, -r}};
}

Gate1Q Gate1Q::ry(double angle) {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    return {{c, -s, s, c}};
}

Gate1Q Gate1Q::rz(double angle) {
    return {{std::polar(1.0, -angle / 2), 0, 0, std::polar(1.0, angle / 2)}};
}

Gate1Q Gate1Q::prepare(const Qubit& t) {
    double norm = std::sqrt(std::norm(t[0]) + std::norm(t[1]));
    if (std::abs(norm - 1.0) > 1e-10) {
        throw std::invalid_argument("preparation target must be unit norm");
    }
    // Columns: target, and the orthogonal completion with determinant 1.
    return {{t[0], -std::conj(t[1]), t[1], std::conj(t[0])}};
}

Qubit lambda_plus_state(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be a positive finite number");
    }
    const double p = lambda / (1.0 + lambda);
    return {std::sqrt(1.0 - p), std::sqrt(p)};
}

Qubit plus_state() { return lambda_plus_state(1.0); }

StateVector::StateVector(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw GuardError("statevector supports 1.." + std::to_string(kMaxQubits) + " qubits, got " +
                         std::to_string(n_qubits));
    }
    amps_.assign(std::size_t{1} << n_qubits, Complex{0});
    amps_[0] = 1.0;
}

StateVector StateVector::product(std::span<const Qubit> states) {
    StateVector s(static_cast<int>(states.size()));
    for (const Qubit& q : states) {
        if (std::abs(std::norm(q[0]) + std::norm(q[1]) - 1.0) > 1e-10) {
            throw std::invalid_argument("product state factors must be unit norm");
        }
    }
    for (std::size_t index = 0; index < s.amps_.size(); ++index) {
        Complex a = 1.0;
        for (int k = 0; k < s.n_; ++k) {
            a *= states[k][(index >> k) & 1U];
        }
        s.amps_[index] = a;
    }
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    std::size_t dim = amplitudes.size();
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("amplitude count must be a power of two >= 2");
    }
    StateVector s(std::countr_zero(dim));
    s.amps_ = std::move(amplitudes);
    double w = s.norm_squared();
    if (std::abs(w - 1.0) > 1e-10) {
        throw std::invalid_argument("amplitudes must be unit norm");
    }
    return s;
}

double StateVector::norm_squared() const {
    double w = 0.0;
    for (const Complex& a : amps_) {
        w += std::norm(a);
    }
    return w;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        p[k] = std::norm(amps_[k]);
    }
    return p;
}

double StateVector::probability_one(int q) const {
    check_qubit(q);
    const std::size_t bit = std::size_t{1} << q;
    double w = 0.0;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        if (k & bit) {
            w += std::norm(amps_[k]);
        }
    }
    return w;
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= n_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(n_) +
                                "-qubit state");
    }
}

void StateVector::apply_1q(const Gate1Q& g, int q) {
    check_qubit(q);
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        if (k & bit) {
            continue;
        }
        Complex a0 = amps_[k];
        Complex a1 = amps_[k | bit];
        amps_[k] = g.m[0] * a0 + g.m[1] * a1;
        amps_[k | bit] = g.m[2] * a0 + g.m[3] * a1;
    }
}

void StateVector::apply_1q_all(const Gate1Q& g) {
    for (int q = 0; q < n_; ++q) {
        apply_1q(g, q);
    }
}

void StateVector::apply_controlled_1q(const Gate1Q& g, int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw std::invalid_argument("control and target must differ");
    }
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        if ((k & tbit) || !(k & cbit)) {
            continue;
        }
        Complex a0 = amps_[k];
        Complex a1 = amps_[k | tbit];
        amps_[k] = g.m[0] * a0 + g.m[1] * a1;
        amps_[k | tbit] = g.m[2] * a0 + g.m[3] * a1;
    }
}

void StateVector::apply_toffoli(int c1, int c2, int target) {
    check_qubit(c1);
    check_qubit(c2);
    check_qubit(target);
    if (c1 == c2 || c1 == target || c2 == target) {
        throw std::invalid_argument("Toffoli qubit indices must be distinct");
    }
    const std::size_t controls = (std::size_t{1} << c1) | (std::size_t{1} << c2);
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        if ((k & controls) == controls && !(k & tbit)) {
            std::swap(amps_[k], amps_[k | tbit]);
        }
    }
}

void StateVector::apply_diagonal(std::span<const Complex> phases) {
    if (phases.size() != amps_.size()) {
        throw std::invalid_argument("diagonal length must equal the state dimension");
    }
    for (const Complex& p : phases) {
        if (std::abs(std::abs(p) - 1.0) > 1e-12) {
            throw std::invalid_argument("diagonal entries must be unimodular");
        }
    }
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        amps_[k] *= phases[k];
    }
}

void StateVector::apply_edge_phase(int i, int j, const std::array<Complex, 4>& phases) {
    check_qubit(i);
    check_qubit(j);
    if (i == j) {
        throw std::invalid_argument("edge endpoints must differ");
    }
    for (const Complex& p : phases) {
        if (std::abs(std::abs(p) - 1.0) > 1e-12) {
            throw std::invalid_argument("edge phases must be unimodular");
        }
    }
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        amps_[k] *= phases[((k >> i) & 1U) | (((k >> j) & 1U) << 1)];
    }
}

void StateVector::renormalize(double weight) {
    const double scale = 1.0 / std::sqrt(weight);
    for (Complex& a : amps_) {
        a *= scale;
    }
}

double StateVector::project_qubit(int q, int bit) {
    check_qubit(q);
    const std::size_t mask = std::size_t{1} << q;
    double weight = 0.0;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        if (((k & mask) != 0) == (bit != 0)) {
            weight += std::norm(amps_[k]);
        } else {
            amps_[k] = 0.0;
        }
    }
    if (weight < kImpossibleBranch) {
        throw std::logic_error("projected onto a branch of negligible weight");
    }
    renormalize(weight);
    return weight;
}

MeasurementOutcome StateVector::measure_qubit(int q, Rng& rng) {
    double p1 = probability_one(q);
    double p0 = 1.0 - p1;
    int bit;
    if (p1 < kImpossibleBranch) {
        bit = 0;
    } else if (p0 < kImpossibleBranch) {
        bit = 1;
    } else {
        bit = uniform01(rng) < p1 ? 1 : 0;
    }
    double weight = project_qubit(q, bit);
    return {bit, weight};
}

double StateVector::edge_violation_probability(int i, int j) const {
    check_qubit(i);
    check_qubit(j);
    if (i == j) {
        throw std::invalid_argument("edge endpoints must differ");
    }
    const std::size_t mask = (std::size_t{1} << i) | (std::size_t{1} << j);
    double w = 0.0;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        if ((k & mask) == mask) {
            w += std::norm(amps_[k]);
        }
    }
    return w;
}

double StateVector::project_edge(int i, int j, int outcome) {
    check_qubit(i);
    check_qubit(j);
    if (i == j) {
        throw std::invalid_argument("edge endpoints must differ");
    }
    const std::size_t mask = (std::size_t{1} << i) | (std::size_t{1} << j);
    double weight = 0.0;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        bool violating = (k & mask) == mask;
        if (violating == (outcome != 0)) {
            weight += std::norm(amps_[k]);
        } else {
            amps_[k] = 0.0;
        }
    }
    if (weight < kImpossibleBranch) {
        throw std::logic_error("projected onto an edge branch of negligible weight");
    }
    renormalize(weight);
    return weight;
}

MeasurementOutcome StateVector::measure_edge_projector(int i, int j, Rng& rng) {
    double p1 = edge_violation_probability(i, j);
    double p0 = 1.0 - p1;
    int bit;
    if (p1 < kImpossibleBranch) {
        bit = 0;
    } else if (p0 < kImpossibleBranch) {
        bit = 1;
    } else {
        bit = uniform01(rng) < p1 ? 1 : 0;
    }
    double weight = project_edge(i, j, bit);
    return {bit, weight};
}

void StateVector::reset_qubit(int q, const Qubit& target, Rng& rng) {
    Gate1Q prep = Gate1Q::prepare(target);
    if (measure_qubit(q, rng).bit == 1) {
        apply_x(q);
    }
    apply_1q(prep, q);
}

void StateVector::dump(std::ostream& out) const {
    auto flags = out.flags();
    auto precision = out.precision();
    out << std::setprecision(12);
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        if (std::abs(amps_[k]) < 1e-12) {
            continue;
        }
        std::string bits;
        for (int q = n_ - 1; q >= 0; --q) {
            bits.push_back(((k >> q) & 1U) ? '1' : '0');
        }
        out << bits << ' ' << amps_[k].real() << ' ' << amps_[k].imag() << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("fidelity needs equal dimensions");
    }
    Complex overlap = 0.0;
    for (std::size_t k = 0; k < a.dimension(); ++k) {
        overlap += std::conj(a.amplitude(k)) * b.amplitude(k);
    }
    return std::norm(overlap);
}

}  // namespace qsc
