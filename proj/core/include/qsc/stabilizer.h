#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qsc {

/// Boolean constraint over k bits, stored as a truth table.
///
/// Inputs are indexed in printed order: variable 0 is the leftmost printed
/// bit, i.e. bit k-1 of the input index. For k = 3 the index of "011" is 3.
class Constraint {
  public:
    Constraint(int arity, std::vector<bool> truth_table, std::string label);

    static Constraint independent_set_edge();
    static Constraint one_hot(int k);
    static Constraint at_most_one(int k);
    static Constraint always_true(int k);
    /// Rejects tables whose length is not 2^k or whose entries are not 0/1.
    static Constraint from_truth_table_text(std::istream& in, std::string label);

    int arity() const { return arity_; }
    const std::string& label() const { return label_; }
    bool satisfied(std::uint32_t input_index) const { return table_[input_index]; }
    /// Value of variable m within an input index.
    int variable(std::uint32_t input_index, int m) const { return (input_index >> (arity_ - 1 - m)) & 1U; }

  private:
    int arity_;
    std::vector<bool> table_;
    std::string label_;
};

inline constexpr int kMaxDenseArity = 10;

/// Diagonal of the +/-1 stabilizer: +1 exactly on satisfying inputs.
struct StabilizerMatrix {
    int arity = 0;
    std::vector<int> diagonal;

    std::size_t dimension() const { return diagonal.size(); }
    int operator()(std::size_t row, std::size_t col) const { return row == col ? diagonal[row] : 0; }
};

/// 0/1 permutation matrix on the k data bits plus one ancilla. The ancilla is
/// the least-significant (rightmost printed) bit: index = (input << 1) | ancilla.
struct SyndromeUnitary {
    int arity = 0;
    std::size_t dim = 0;
    std::vector<std::uint8_t> entries;  ///< row-major

    int operator()(std::size_t row, std::size_t col) const { return entries[row * dim + col]; }
    /// Column index of the single 1 in each row.
    std::vector<std::size_t> row_targets() const;
};

StabilizerMatrix build_stabilizer(const Constraint& c);
SyndromeUnitary build_syndrome_unitary(const Constraint& c);

bool is_permutation_matrix(const SyndromeUnitary& g);
bool is_involution(const SyndromeUnitary& g);

/// A constraint acting on specific qubits of an n-qubit register; variable m
/// sits on qubits[m].
struct PlacedConstraint {
    Constraint constraint;
    std::vector<int> qubits;
};

/// Diagonal of the stabilizer embedded in an n-qubit register (qubit q is bit q
/// of the register index).
std::vector<int> embed_stabilizer(const PlacedConstraint& pc, int n_total);

struct StabilizerAlgebraReport {
    bool all_commute = true;
    bool all_square_to_identity = true;
    /// Every product of two stabilizers acts as +1 on the joint +1 eigenspace.
    bool closed_on_joint_space = true;
    std::size_t joint_space_dimension = 0;

    bool ok() const { return all_commute && all_square_to_identity && closed_on_joint_space; }
};

StabilizerAlgebraReport check_stabilizer_algebra(const std::vector<PlacedConstraint>& constraints, int n_total);

/// Plain-text rows of space-separated integers.
void write_matrix(std::ostream& out, const StabilizerMatrix& s);
void write_matrix(std::ostream& out, const SyndromeUnitary& g);

/// Accepts "is-edge", "one-hot-K", "at-most-one-K" and "always-true-K".
Constraint constraint_by_name(const std::string& name);

}  // namespace qsc
