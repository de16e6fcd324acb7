// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#ifndef K3CLS_LATTICE_HPP
#define K3CLS_LATTICE_HPP

#include <string>
#include <utility>
#include <vector>

#include "k3cls/intmat.hpp"

namespace k3cls {

// A nondegenerate integral lattice, represented by its Gram matrix.
// Rank 0 is permitted (det = 1 by convention).
class Lattice {
public:
    Lattice() = default;
    explicit Lattice(IntMat gram, std::string label = "");

    const IntMat& gram() const { return gram_; }
    const std::string& label() const { return label_; }
    std::size_t rank() const { return gram_.rows(); }

    const mpz_class& det() const;
    std::pair<int, int> signature() const;  // (s_plus, s_minus)
    bool is_even() const;
    bool is_positive_definite() const;
    bool is_negative_definite() const;
    bool is_definite() const;

    // Gram negated; label preserved.
    Lattice negated() const;

private:
    IntMat gram_;
    std::string label_;
    mutable std::optional<mpz_class> det_;
    mutable std::optional<std::pair<int, int>> sig_;
    mutable std::optional<bool> even_;
};

// A sublattice of an ambient lattice, spanned by the rows of `basis`
// (coordinates in the ambient basis).
struct Sublattice {
    Lattice ambient;
    IntMat basis;  // rows = generators, linearly independent

    std::size_t rank() const { return basis.rows(); }
    // Gram matrix induced on the sublattice: basis * gram * basisᵀ.
    Lattice lattice(std::string label = "") const;
    // true iff the row span is saturated in the ambient lattice
    bool is_primitive() const;
};

// Sublattice spanned by all of L.
Sublattice full_sublattice(const Lattice& l);

// Invariant factors (> 1 only) of L∨/L together with generators of the cyclic
// summands, one per row, in rational coordinates of the ambient basis.
struct DiscGroup {
    std::vector<mpz_class> invariant_factors;
    RatMat generators;
};
DiscGroup discriminant_group(const Lattice& l);

// Saturated orthogonal complement of S inside its ambient lattice.
Sublattice orthogonal_complement(const Sublattice& s);

// Index |T/S| for full-rank S ⊆ T inside the same ambient lattice.
// Throws on rank mismatch or non-containment.
mpz_class index_in(const Sublattice& s, const Sublattice& t);

// Block-diagonal direct sum.
Lattice direct_sum(const Lattice& a, const Lattice& b);

}  // namespace k3cls

#endif  // K3CLS_LATTICE_HPP
