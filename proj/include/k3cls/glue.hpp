// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#ifndef K3CLS_GLUE_HPP
#define K3CLS_GLUE_HPP

#include <optional>
#include <string>
#include <utility>

#include "k3cls/autgrp.hpp"
#include "k3cls/discform.hpp"
#include "k3cls/lattice.hpp"

namespace k3cls {

// An anti-isometry between subgroups of two discriminant forms, given by
// generator lists: column j of `dom` holds the d1-coordinates of the j-th
// domain generator, column j of `img` its image in d2-coordinates.  The map
// x_j ↦ y_j must extend to a group isomorphism ⟨x_j⟩ → ⟨y_j⟩ with
// q₂ ∘ φ = −q₁ (checked by build_extension, not by construction).
struct GlueMap {
    DiscForm d1, d2;
    IntMat dom;  // d1.rank() × k
    IntMat img;  // d2.rank() × k

    // Order of the subgroup generated by the domain columns.
    mpz_class subgroup_order() const;
};

// The glue with no generators (direct sum).
GlueMap trivial_glue(const DiscForm& d1, const DiscForm& d2);

// A glue defined on all of d1: column j of `images` is the image of the j-th
// canonical generator, as returned by anti_isometries().
GlueMap full_glue(const DiscForm& d1, const DiscForm& d2, const FormIsometry& images);

// An overlattice L1 ⊕ L2 ⊆ M generated by lifts x ⊕ φ(x) of a glue map φ,
// with the two summands embedded primitively.
struct PrimitiveExtension {
    Lattice l1, l2;
    GlueMap glue;
    Lattice m;       // Gram of the overlattice in its distinguished basis
    RatMat basis;    // rows = basis of M in (L1 ⊕ L2)-coordinates
    IntMat embed1;   // rows = basis of L1 in M-coordinates
    IntMat embed2;   // rows = basis of L2 in M-coordinates
    mpz_class index; // [M : L1 ⊕ L2], equal to the glue subgroup order
};

// Overlattice of L1 ⊕ L2 along `glue`.  Lifts of disc-form elements are the
// representatives with all coordinates in [0, 1); the basis of M is the
// Hermite-reduced span, so the result is deterministic.  Verifies that the
// glue is an anti-isometry between subgroups, that the resulting Gram is
// integral, and that M is even; [M:L1⊕L2]²·|det M| = |det L1|·|det L2| holds
// on every successful return.
PrimitiveExtension build_extension(const Lattice& l1, const Lattice& l2, const GlueMap& glue);

// Orthogonal complement K of a primitive sublattice S ⊆ M together with the
// glue map φ: p_S(M)/S → p_K(M)/K whose graph is M/(S ⊕ K).  For even M the
// returned glue satisfies q_K ∘ φ = −q_S.
std::pair<Sublattice, GlueMap> glue_map_of(const Lattice& m, const Sublattice& s);

// Extension of f ∈ O(L1) to an isometry of M: searches O(L2) for g with
// ḡ ∘ φ = φ ∘ f̄ on the glue and returns f ⊕ g in M-coordinates, or nothing
// when no compatible g exists.  The search enumerates O(L2), so L2 must be
// definite, of rank ≤ 1, or of rank 2 containing isotropic vectors; anything
// else throws ("L2 outside supported shapes").
std::optional<Isometry> extend_isometry(const PrimitiveExtension& e, const IntMat& f);

// Externally supplied coinvariant lattice: the lattice itself plus the glue
// against the invariant side, as images of the canonical disc-form generators
// of the invariant lattice (one column per generator, coordinates in the
// discriminant group of `lattice`).
struct CoinvariantData {
    Lattice lattice;
    IntMat glue_images;
};

struct ExtensionCheckReport {
    bool skipped = false;
    std::string message;

    mpz_class aut_order = 0;         // #O(K) of the supplied lattice K
    mpz_class form_group_order = 0;  // #O(q_K)
    mpz_class image_order = 0;       // order of the image of O(K) → O(q_K)
    bool surjective = false;         // image_order == form_group_order
    mpz_class kernel_order = 0;      // #ker(O(K) → O(q_K))
    bool no_minus_two_vectors = false;  // K has no vectors of square −2

    bool extension_exists = false;      // some g' ∈ O(K) is glue-compatible with g
    mpz_class extension_count = 0;      // number of compatible g'
    bool unique_up_to_kernel = false;   // extension_count == kernel_order
};

// Checks a user-supplied coinvariant lattice K against the invariant lattice
// H and the isometry g ∈ O(H): validates sign, determinant and discriminant
// form, measures O(K) → O(q_K), builds the extension H ⊕ K ⊆ M along the
// supplied glue and counts the isometries of M restricting to g.  Without
// data the check is skipped ("skipped: external data required").
ExtensionCheckReport unique_extension_check(const Lattice& h,
                                            const std::optional<CoinvariantData>& data,
                                            const IntMat& g);

}  // namespace k3cls

#endif  // K3CLS_GLUE_HPP
