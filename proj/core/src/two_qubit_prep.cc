#include "qsc/two_qubit_prep.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsc {

namespace {

constexpr double kNegligible = 1e-14;

}  // namespace

TwoQubitState two_qubit_from_kets(Complex alpha, Complex beta, Complex gamma, Complex eta) {
    // |first second>: beta has the second qubit set (index 2), gamma the first (index 1).
    return {alpha, gamma, beta, eta};
}

void TwoQubitSequence::apply(StateVector& s, int first_qubit, int second_qubit) const {
    s.apply_1q(first, first_qubit);
    s.apply_1q(second, second_qubit);
    s.apply_controlled_1q(controlled, first_qubit, second_qubit);
}

TwoQubitSequence prepare_two_qubit(const TwoQubitState& t) {
    const double p0 = std::norm(t[0]) + std::norm(t[2]);  // first qubit reads 0
    const double p1 = std::norm(t[1]) + std::norm(t[3]);
    if (std::abs(p0 + p1 - 1.0) > 1e-10) {
        throw std::invalid_argument("two-qubit target must be unit norm");
    }

    TwoQubitSequence seq;
    // Ry(pi + theta)|0> = -sqrt(p0)|0> + sqrt(p1)|1>.
    const double theta = 2.0 * std::atan2(std::sqrt(p0), std::sqrt(p1));
    seq.first = Gate1Q::ry(std::numbers::pi + theta);

    if (p0 > kNegligible) {
        const double s0 = std::sqrt(p0);
        const Qubit u0{t[0] / s0, t[2] / s0};
        const Gate1Q v0 = Gate1Q::prepare(u0);
        // The second wire starts in -u0 to cancel the sign from U1.
        seq.second = v0 * Complex{-1.0};
        if (p1 > kNegligible) {
            const double s1 = std::sqrt(p1);
            const Gate1Q v1 = Gate1Q::prepare({t[1] / s1, t[3] / s1});
            seq.controlled = (v1 * v0.adjoint()) * Complex{-1.0};
        }
    } else {
        const Gate1Q v1 = Gate1Q::prepare({t[1], t[3]});
        seq.second = Gate1Q::identity();
        seq.controlled = v1;
    }
    return seq;
}

}  // namespace qsc
