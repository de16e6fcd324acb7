// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#ifndef K3CLS_AUTGRP_HPP
#define K3CLS_AUTGRP_HPP

#include <optional>
#include <vector>

#include "k3cls/lattice.hpp"
#include "k3cls/shortvec.hpp"

namespace k3cls {

// An isometry is an integer matrix g acting on coordinate columns with
// gᵀ · Gram · g = Gram (hence |det g| = 1).
using Isometry = IntMat;

// Hard cap on full element enumeration.
inline constexpr std::size_t kEnumerationCap = 1000000;

// A finite matrix group with its full element list (canonically sorted) and a
// deterministic small generating set.
struct MatrixGroup {
    std::vector<Isometry> generators;
    std::vector<Isometry> elements;  // sorted, closed, contains the identity

    std::size_t order() const { return elements.size(); }
    bool contains(const IntMat& g) const;
};

// Build a MatrixGroup from an arbitrary element list (closure is taken).
MatrixGroup group_from_elements(std::vector<IntMat> elements);

// Orthogonal group O(L) of a definite lattice via backtracking over short
// vectors (candidate lists filtered by norm and inner-product profile).
MatrixGroup automorphism_group(const Lattice& l);

// Subgroup of determinant-+1 elements.
MatrixGroup special_subgroup(const MatrixGroup& g);

// Explicit isometry L1 → L2 (column action: gᵀ·Gram2·g = Gram1), or nothing
// if the lattices are not isometric.  Both must be definite of the same sign.
std::optional<Isometry> is_isometric(const Lattice& l1, const Lattice& l2);

struct CyclicClass {
    Isometry generator;      // generator of the representative subgroup
    std::size_t order;       // order of the cyclic subgroup
    std::size_t class_size;  // number of conjugate subgroups
};

// One representative per conjugacy class of nontrivial cyclic subgroups
// (conjugacy of whole subgroups, not of elements).
std::vector<CyclicClass> cyclic_subgroup_classes(const MatrixGroup& g);

// The classes whose subgroups are maximal among cyclic subgroups.
std::vector<CyclicClass> maximal_cyclic_classes(const MatrixGroup& g);

// k with G ≅ D_k (order 2k, cyclic index-2 subgroup inverted by an outer
// involution; D_2 = Klein four-group), or nothing.
std::optional<std::size_t> dihedral_recognition(const MatrixGroup& g);

// Multiplicative order of an isometry (must be of finite order).
std::size_t isometry_order(const IntMat& g);

}  // namespace k3cls

#endif  // K3CLS_AUTGRP_HPP
