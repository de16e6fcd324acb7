// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0
//
// The classification driver: from each rank-3 invariant lattice, derive the
// maximal non-symplectic extensions (n, T_X, Zl, glue index) and verify the
// reference dataset field by field.

#ifndef K3CLS_CLASSIFY_HPP
#define K3CLS_CLASSIFY_HPP

#include <string>
#include <vector>

#include "k3cls/autgrp.hpp"
#include "k3cls/dataset.hpp"
#include "k3cls/lattice.hpp"

namespace k3cls {

// One classified case: a maximal cyclic class of SO(H) together with the
// invariant/transcendental splitting it induces.
struct CaseRecord {
    std::string lattice_key;  // dataset key; empty for ad-hoc input
    int group_no = 0;         // 0 for ad-hoc input
    std::string label;        // reference label (e.g. "54a"), or a provisional
                              // letter assigned by the deterministic sort
    int n = 0;                // order of the cyclic class
    IntMat tx;                // 2×2 Gram of T_X in the computed basis
    mpz_class l_square;       // self-intersection of the primitive generator l
    mpz_class glue_index;     // [H : T_X ⊕ Zl]
};

// True iff the characteristic polynomial of the 3×3 isometry g is
// (x−1)·(x+1)² or (x−1)·Φ_n with n ∈ {3, 4, 6}.  The identity — whose
// polynomial is (x−1)³ — is the excluded trivial case and yields false, as
// does anything with det ≠ +1.
bool char_poly_check(const IntMat& g);

// Classify one even positive-definite rank-3 lattice with dihedral SO: one
// record per maximal cyclic class of SO(H), with n the class order, Zl the
// saturated kernel of (1−g) (required to be rank 1), T_X its orthogonal
// complement, and the glue index [H : T_X ⊕ Zl].  Records are sorted by
// (n descending, l² ascending) and labeled "a", "b", … in that order.
// Throws std::invalid_argument on precondition violations (wrong rank /
// parity / sign, non-dihedral SO, kernel rank ≠ 1, odd class order).
std::vector<CaseRecord> classify_lattice(const Lattice& h);

// Classify every dataset lattice (deterministic order; `threads` ≥ 1 workers
// with ordered aggregation, so output is identical for any thread count) and
// attach the reference labels by matching on (n, l², glue, T_X up to
// isometry).  Returns 3 records per lattice, 42 for the embedded dataset.
std::vector<CaseRecord> run_all(const ReferenceData& ref, unsigned threads = 1);

// Field-by-field comparison of recomputed invariants against the dataset.
struct VerificationReport {
    std::size_t cases_checked = 0;
    std::size_t cases_matched = 0;
    std::size_t rows_checked = 0;  // one row per group number
    std::size_t rows_matched = 0;
    std::vector<std::string> mismatches;  // empty iff everything matched
    std::vector<std::string> notes;       // annotations and unverified metadata

    bool ok() const { return mismatches.empty(); }
};

// Recompute per-lattice invariants (det, dihedral k of SO, genus symbol,
// #O(q), the case table) and compare with the dataset; table rows are
// aggregated per group number, including the genus-equal/non-isometric check
// for the three two-lattice rows and the product identity
// #G_s · #O(q) = #O(complement) on the embedded numbers.  GAP ids and split
// flags are listed as unverified metadata.  Never throws on mismatches; they
// are collected in the report.
VerificationReport verify_against_reference(const ReferenceData& ref, unsigned threads = 1);

// Extra verification against externally supplied rank-19 coinvariant data:
// for the dataset entry named by `file.label`, measure the kernel and image
// of O(K) → O(q_K), require no (−2)-vectors, build the primitive extension
// along the supplied glue, and compare #kernel = #G_s, #image = #O(q),
// #O(K) = the table's complement order.  Results are appended to `report`.
void verify_coinvariant_file(const ReferenceData& ref, const CoinvariantFile& file,
                             VerificationReport& report);

}  // namespace k3cls

#endif  // K3CLS_CLASSIFY_HPP
