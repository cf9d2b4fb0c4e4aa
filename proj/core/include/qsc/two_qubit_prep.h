#pragma once

#include <array>

#include "qsc/statevector.h"

namespace qsc {

/// Two-qubit amplitudes in basis-index order: index = bit(first) + 2*bit(second).
using TwoQubitState = std::array<Complex, 4>;

/// Builds a TwoQubitState from amplitudes written in ket order |first second>:
/// alpha|00> + beta|01> + gamma|10> + eta|11>.
TwoQubitState two_qubit_from_kets(Complex alpha, Complex beta, Complex gamma, Complex eta);

/// Single-qubit gate on each wire followed by one gate on the second wire
/// controlled by the first.
struct TwoQubitSequence {
    Gate1Q first;       ///< U1, on the control wire
    Gate1Q second;      ///< U2, on the target wire
    Gate1Q controlled;  ///< applied to the second wire when the first reads 1

    void apply(StateVector& s, int first_qubit, int second_qubit) const;
};

/// Sequence taking |00> to the target up to global phase. U1 = Ry(pi + theta)
/// with tan(theta/2) = sqrt(p(first=0) / p(first=1)); U2 and the controlled
/// gate are built from the normalized conditional states of the second qubit.
TwoQubitSequence prepare_two_qubit(const TwoQubitState& target);

}  // namespace qsc
