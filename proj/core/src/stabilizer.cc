#include "qsc/stabilizer.h"

#include <bit>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "qsc/graph.h"

namespace qsc {

namespace {

void check_arity(int k) {
    if (k < 1) {
        throw std::invalid_argument("constraint arity must be at least 1");
    }
    if (k > kMaxDenseArity) {
        throw GuardError("dense stabilizer construction limited to arity <= " + std::to_string(kMaxDenseArity) +
                         ", got " + std::to_string(k));
    }
}

template <class Pred>
Constraint from_predicate(int k, std::string label, Pred&& pred) {
    check_arity(k);
    std::vector<bool> table(std::size_t{1} << k);
    for (std::uint32_t b = 0; b < table.size(); ++b) {
        table[b] = pred(b);
    }
    return Constraint(k, std::move(table), std::move(label));
}

}  // namespace

Constraint::Constraint(int arity, std::vector<bool> truth_table, std::string label)
    : arity_(arity), table_(std::move(truth_table)), label_(std::move(label)) {
    check_arity(arity);
    if (table_.size() != (std::size_t{1} << arity)) {
        throw std::invalid_argument("truth table must have 2^k entries");
    }
}

Constraint Constraint::independent_set_edge() {
    return from_predicate(2, "is-edge", [](std::uint32_t b) { return b != 0b11; });
}

Constraint Constraint::one_hot(int k) {
    return from_predicate(k, "one-hot-" + std::to_string(k), [](std::uint32_t b) { return std::popcount(b) == 1; });
}

Constraint Constraint::at_most_one(int k) {
    return from_predicate(k, "at-most-one-" + std::to_string(k),
                          [](std::uint32_t b) { return std::popcount(b) <= 1; });
}

Constraint Constraint::always_true(int k) {
    return from_predicate(k, "always-true-" + std::to_string(k), [](std::uint32_t) { return true; });
}

Constraint Constraint::from_truth_table_text(std::istream& in, std::string label) {
    std::vector<bool> table;
    std::string token;
    while (in >> token) {
        if (token != "0" && token != "1") {
            throw std::invalid_argument("truth table entry " + std::to_string(table.size() + 1) +
                                        " is not 0 or 1: '" + token + "'");
        }
        table.push_back(token == "1");
    }
    const std::size_t len = table.size();
    if (len < 2 || !std::has_single_bit(len)) {
        throw std::invalid_argument("truth table length " + std::to_string(len) + " is not 2^k for k >= 1");
    }
    return Constraint(std::countr_zero(len), std::move(table), std::move(label));
}

Constraint constraint_by_name(const std::string& name) {
    if (name == "is-edge") {
        return Constraint::independent_set_edge();
    }
    auto suffix_arity = [&](const std::string& prefix) -> int {
        std::string digits = name.substr(prefix.size());
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("constraint name '" + name + "' needs a numeric arity suffix");
        }
        return std::stoi(digits);
    };
    for (const std::string prefix : {"one-hot-", "at-most-one-", "always-true-"}) {
        if (name.rfind(prefix, 0) == 0) {
            int k = suffix_arity(prefix);
            if (prefix == "one-hot-") {
                return Constraint::one_hot(k);
            }
            if (prefix == "at-most-one-") {
                return Constraint::at_most_one(k);
            }
            return Constraint::always_true(k);
        }
    }
    throw std::invalid_argument("unknown constraint '" + name +
                                "' (expected is-edge, one-hot-K, at-most-one-K or always-true-K)");
}

StabilizerMatrix build_stabilizer(const Constraint& c) {
    check_arity(c.arity());
    StabilizerMatrix s;
    s.arity = c.arity();
    s.diagonal.resize(std::size_t{1} << c.arity());
    for (std::uint32_t b = 0; b < s.diagonal.size(); ++b) {
        s.diagonal[b] = c.satisfied(b) ? 1 : -1;
    }
    return s;
}

SyndromeUnitary build_syndrome_unitary(const Constraint& c) {
    check_arity(c.arity());
    SyndromeUnitary g;
    g.arity = c.arity();
    g.dim = std::size_t{1} << (c.arity() + 1);
    g.entries.assign(g.dim * g.dim, 0);
    for (std::size_t row = 0; row < g.dim; ++row) {
        const auto input = static_cast<std::uint32_t>(row >> 1);
        // Identity on the ancilla for satisfying inputs, X otherwise.
        std::size_t col = c.satisfied(input) ? row : (row ^ 1U);
        g.entries[row * g.dim + col] = 1;
    }
    return g;
}

std::vector<std::size_t> SyndromeUnitary::row_targets() const {
    std::vector<std::size_t> out(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if (entries[r * dim + c]) {
                out[r] = c;
                break;
            }
        }
    }
    return out;
}

bool is_permutation_matrix(const SyndromeUnitary& g) {
    std::vector<int> col_count(g.dim, 0);
    for (std::size_t r = 0; r < g.dim; ++r) {
        int row_count = 0;
        for (std::size_t c = 0; c < g.dim; ++c) {
            std::uint8_t e = g.entries[r * g.dim + c];
            if (e > 1) {
                return false;
            }
            row_count += e;
            col_count[c] += e;
        }
        if (row_count != 1) {
            return false;
        }
    }
    for (int cnt : col_count) {
        if (cnt != 1) {
            return false;
        }
    }
    return true;
}

bool is_involution(const SyndromeUnitary& g) {
    // Square of a permutation matrix is identity iff the permutation is its own inverse.
    if (!is_permutation_matrix(g)) {
        return false;
    }
    const auto target = g.row_targets();
    for (std::size_t r = 0; r < g.dim; ++r) {
        if (target[target[r]] != r) {
            return false;
        }
    }
    return true;
}

std::vector<int> embed_stabilizer(const PlacedConstraint& pc, int n_total) {
    const int k = pc.constraint.arity();
    if (static_cast<int>(pc.qubits.size()) != k) {
        throw std::invalid_argument("placement must name one qubit per constraint variable");
    }
    if (n_total < 1 || n_total > 26) {
        throw GuardError("embedded stabilizer register must have 1..26 qubits");
    }
    for (int q : pc.qubits) {
        if (q < 0 || q >= n_total) {
            throw std::out_of_range("placement qubit " + std::to_string(q) + " out of range");
        }
    }
    std::vector<int> diag(std::size_t{1} << n_total);
    for (std::uint64_t index = 0; index < diag.size(); ++index) {
        std::uint32_t input = 0;
        for (int m = 0; m < k; ++m) {
            input |= static_cast<std::uint32_t>((index >> pc.qubits[m]) & 1U) << (k - 1 - m);
        }
        diag[index] = pc.constraint.satisfied(input) ? 1 : -1;
    }
    return diag;
}

StabilizerAlgebraReport check_stabilizer_algebra(const std::vector<PlacedConstraint>& constraints, int n_total) {
    StabilizerAlgebraReport report;
    std::vector<std::vector<int>> diags;
    for (const auto& pc : constraints) {
        diags.push_back(embed_stabilizer(pc, n_total));
    }
    const std::size_t dim = std::size_t{1} << n_total;
    for (const auto& d : diags) {
        for (int v : d) {
            if (v * v != 1) {
                report.all_square_to_identity = false;
            }
        }
    }
    for (std::size_t a = 0; a < diags.size(); ++a) {
        for (std::size_t b = a + 1; b < diags.size(); ++b) {
            for (std::size_t k = 0; k < dim; ++k) {
                if (diags[a][k] * diags[b][k] != diags[b][k] * diags[a][k]) {
                    report.all_commute = false;
                }
            }
        }
    }
    for (std::size_t k = 0; k < dim; ++k) {
        bool joint = true;
        for (const auto& d : diags) {
            joint = joint && d[k] == 1;
        }
        if (!joint) {
            continue;
        }
        ++report.joint_space_dimension;
        for (std::size_t a = 0; a < diags.size(); ++a) {
            for (std::size_t b = 0; b < diags.size(); ++b) {
                if (diags[a][k] * diags[b][k] != 1) {
                    report.closed_on_joint_space = false;
                }
            }
        }
    }
    return report;
}

void write_matrix(std::ostream& out, const StabilizerMatrix& s) {
    for (std::size_t r = 0; r < s.dimension(); ++r) {
        for (std::size_t c = 0; c < s.dimension(); ++c) {
            out << (c ? " " : "") << s(r, c);
        }
        out << '\n';
    }
}

void write_matrix(std::ostream& out, const SyndromeUnitary& g) {
    for (std::size_t r = 0; r < g.dim; ++r) {
        for (std::size_t c = 0; c < g.dim; ++c) {
            out << (c ? " " : "") << g(r, c);
        }
        out << '\n';
    }
}

}  // namespace qsc
