#pragma once

// Exact integer-lattice machinery: Hermite normal forms, membership,
// finite quotients with canonical transversals. Everything is immutable
// after construction and safe to share across threads.

#include "covgl/ints.hpp"

#include <optional>
#include <vector>

namespace covgl {

// An element of the cocharacter lattice Z^r, coordinates in the e_i basis.
using Coweight = std::vector<Int>;

Coweight cw_add(const Coweight& a, const Coweight& b);
Coweight cw_sub(const Coweight& a, const Coweight& b);
Coweight cw_neg(const Coweight& a);
Coweight cw_scale(const Int& k, const Coweight& a);
Int cw_sum(const Coweight& a);
std::string cw_str(const Coweight& a);

// Basis of a sublattice of Z^rank in row-style Hermite normal form:
// pivot of each row strictly right of the previous, pivots positive,
// entries above a pivot reduced into [0, pivot).
class LatticeBasis {
public:
    LatticeBasis(int rank, std::vector<Coweight> hnf_rows);

    int rank() const { return rank_; }
    const std::vector<Coweight>& rows() const { return rows_; }
    int num_rows() const { return static_cast<int>(rows_.size()); }
    bool full_rank() const { return num_rows() == rank_; }

    // True iff y is an integer combination of the rows (back-substitution).
    bool contains(const Coweight& y) const;

    // Coordinates of y in this basis; nullopt when y is not in the lattice.
    std::optional<std::vector<Int>> coordinates(const Coweight& y) const;

    bool operator==(const LatticeBasis& other) const;
    bool operator!=(const LatticeBasis& other) const { return !(*this == other); }

    // Column index of the pivot of row i.
    int pivot_col(int i) const { return pivots_[i]; }

private:
    int rank_;
    std::vector<Coweight> rows_;
    std::vector<int> pivots_;
};

// Hermite normal form of the lattice generated by `generators`.
// All generators must have equal length; an empty list needs an explicit
// ambient rank (otherwise the rank is unknown and an error is raised).
LatticeBasis hnf_basis(const std::vector<Coweight>& generators, int rank_hint = -1);

// Scaled standard lattice k * Z^rank.
LatticeBasis scaled_standard_lattice(int rank, const Int& k);

// Kernel lattice {y in Z^cols : A y = 0} of an integer matrix (rows x cols).
LatticeBasis kernel_lattice(const std::vector<std::vector<Int>>& a, int cols);

// Finite quotient Z^ambient_rank / sublattice with a canonical transversal:
// the representative of a coset is the unique member of the box
// prod [0, d_i) cut out by the HNF pivots (lexicographically smallest
// nonnegative vector in the fundamental parallelepiped).
class QuotientStructure {
public:
    QuotientStructure(int ambient_rank, LatticeBasis sublattice);

    int ambient_rank() const { return ambient_rank_; }
    const LatticeBasis& sublattice() const { return sub_; }
    const std::vector<Int>& invariant_factors() const { return invariant_factors_; }
    const std::vector<Coweight>& representatives() const { return reps_; }
    Int order() const { return order_; }

    // Canonical representative of the coset of y. Idempotent;
    // reduce(y) - y always lies in the sublattice.
    Coweight reduce(const Coweight& y) const;

    // Index of reduce(y) in representatives().
    int rep_index(const Coweight& y) const;

private:
    int ambient_rank_;
    LatticeBasis sub_;
    std::vector<Int> invariant_factors_;
    std::vector<Coweight> reps_;
    Int order_;
};

// Smith normal form diagonal (d_1 | d_2 | ... ) of a full-rank square
// integer matrix given as rows.
std::vector<Int> smith_invariant_factors(std::vector<std::vector<Int>> m);

QuotientStructure quotient(int ambient_rank, const LatticeBasis& sub);

} // namespace covgl
