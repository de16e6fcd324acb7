// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#ifndef K3CLS_SHORTVEC_HPP
#define K3CLS_SHORTVEC_HPP

#include <vector>

#include "k3cls/lattice.hpp"

namespace k3cls {

struct ShortVector {
    std::vector<mpz_class> coords;
    mpz_class norm;
};

// All nonzero vectors v with ⟨v,v⟩ ≤ bound of a positive-definite lattice,
// one representative per ±pair (first nonzero coordinate positive), sorted by
// norm and then lexicographically by coordinates.
std::vector<ShortVector> short_vectors(const Lattice& l, const mpz_class& bound);

}  // namespace k3cls

#endif  // K3CLS_SHORTVEC_HPP
