// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#ifndef K3CLS_GENUS_HPP
#define K3CLS_GENUS_HPP

#include <string>
#include <utility>
#include <vector>

#include "k3cls/lattice.hpp"

namespace k3cls {

// One Jordan constituent of the p-adic splitting: a p^k-scaled unimodular
// block of the given rank.  At p = 2 a constituent is additionally even
// (type II) or odd (type I, carrying an oddity in Z/8).
struct GenusConstituent {
    long scale_exp = 0;    // k; the scale is p^k
    std::size_t rank = 0;
    int sign = +1;         // +1 if the unit determinant is a square class "+", else -1
    bool type_two = false; // p = 2 only
    int oddity = 0;        // p = 2, type I only; trace of the unit diagonal mod 8
};

struct LocalSymbol {
    mpz_class p;
    std::vector<GenusConstituent> constituents;  // ascending scale, ranks > 0
};

// Canonical genus data: signature plus one local symbol per prime dividing
// 2·det (2 always first).  Scale-p^0 constituents are kept in `locals` but
// omitted from the rendered string; the omitted data is determined by the
// rest together with the signature.
struct GenusSymbol {
    std::pair<int, int> signature;  // (s_plus, s_minus)
    std::vector<LocalSymbol> locals;

    // Frozen grammar: SYMBOL := CONST (" " CONST)*,
    // CONST := SCALE "^{" SIGN RANK "}" ["_" ODDITY | "_II"],
    // constituents ordered by prime (2 first) then ascending scale;
    // scale-1 and rank-0 constituents are not rendered.
    std::string to_string() const;
};

// Jordan decomposition of an even nondegenerate lattice over the p-adics
// (not 2-adically canonicalized; genus_symbol applies the normalization).
std::vector<GenusConstituent> padic_jordan(const Lattice& l, const mpz_class& p);

// Canonical genus symbol.  The 2-adic part is normalized by exhausting the
// sign-walking moves and picking the representative with the fewest minus
// signs, then the lexicographically smallest sign vector, then the smallest
// compartment-oddity tuple; compartment oddities are distributed to the
// constituents as the lexicographically smallest realizable assignment.
GenusSymbol genus_symbol(const Lattice& l);

// True iff the two even lattices lie in the same genus: equal signatures and
// equal canonical symbols at every relevant prime.
bool same_genus(const Lattice& l1, const Lattice& l2);

}  // namespace k3cls

#endif  // K3CLS_GENUS_HPP
