// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#ifndef K3CLS_DISCFORM_HPP
#define K3CLS_DISCFORM_HPP

#include <vector>

#include "k3cls/lattice.hpp"

namespace k3cls {

// Finite quadratic form q: D → Q/2Z on a finite abelian group
// D ≅ ⊕ Z/d_i, together with its bilinear form b: D × D → Q/Z.
// Elements of D are integer tuples x with x_i taken modulo d_i.
struct DiscForm {
    std::vector<mpz_class> factors;   // invariant factors > 1, each dividing the next
    std::vector<mpq_class> q_values;  // q(g_i) mod 2, reduced into [0, 2)
    RatMat b_values;                  // b(g_i, g_j) mod 1, reduced into [0, 1); symmetric

    std::size_t rank() const { return factors.size(); }
    mpz_class order() const;  // product of the invariant factors
};

// A homomorphism between the underlying groups, written as an integer matrix:
// column j holds the generator coordinates of the image of g_j, with entry
// (i, j) reduced modulo d_i of the target group.
using FormIsometry = IntMat;

struct FormGroup {
    std::vector<FormIsometry> elements;  // canonically sorted
    std::size_t order() const { return elements.size(); }
};

// Discriminant form of an even nondegenerate lattice on L∨/L, with generators
// chosen from the Smith normal form of the Gram matrix.
DiscForm disc_form(const Lattice& l);

// Same group with q ↦ −q (and b ↦ −b).
DiscForm negate(const DiscForm& d);

// Exact evaluation on arbitrary element tuples.
mpq_class form_q(const DiscForm& d, const std::vector<mpz_class>& x);
mpq_class form_b(const DiscForm& d, const std::vector<mpz_class>& x, const std::vector<mpz_class>& y);

// Order of x in the underlying group.
mpz_class element_order_in_form(const DiscForm& d, const std::vector<mpz_class>& x);

// Every element of the underlying group, lexicographically ordered.
std::vector<std::vector<mpz_class>> form_elements(const DiscForm& d);

// Full orthogonal group O(q): all q-preserving group automorphisms, found by
// generator-image backtracking.  Group order and factor count are capped.
FormGroup orthogonal_group_of_form(const DiscForm& d);

// Action of an isometry g ∈ O(L) on the discriminant group, in the generator
// coordinates used by disc_form(l).
FormIsometry induced_form_isometry(const Lattice& l, const IntMat& g);

// All group isomorphisms φ: D1 → D2 with q₂ ∘ φ = −q₁ (and b₂ ∘ φ = −b₁).
std::vector<FormIsometry> anti_isometries(const DiscForm& d1, const DiscForm& d2);

// (a · b) with each row reduced modulo the target's invariant factors.
FormIsometry form_compose(const DiscForm& target, const FormIsometry& a, const FormIsometry& b);

namespace detail {
// representative of x mod m·Z in [0, m)
mpq_class rational_mod(const mpq_class& x, long m);
}  // namespace detail

}  // namespace k3cls

#endif  // K3CLS_DISCFORM_HPP
