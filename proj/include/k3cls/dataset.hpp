// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0
//
// Reference dataset access and the shared JSON ingestion formats.
//
// Lattice JSON (the only ingestion format, shared by the CLI and tests):
//   {"label": string?, "gram": [[int, ...], ...]}
//
// Coinvariant JSON (lattice JSON plus one companion field):
//   {"label": string, "gram": ..., "glue_generators": [...]}
// where "glue_generators" has one entry per canonical generator of the
// discriminant group of the matching invariant lattice H, each entry being a
// list with one element per canonical generator of the supplied lattice's own
// discriminant group.  An element is either an integer c (the coefficient of
// that generator) or a pair [num, den] denoting num·den⁻¹ modulo the
// generator's order (den must be coprime to it).  Column j of the resulting
// table is the image of generator j of disc(H) under the glue.
//
// The embedded reference dataset (data/reference.json, compiled in at build
// time) can be overridden by pointing the K3CLS_DATA environment variable at
// a file with the same schema.

#ifndef K3CLS_DATASET_HPP
#define K3CLS_DATASET_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "k3cls/glue.hpp"
#include "k3cls/lattice.hpp"

namespace k3cls {

// One classified case row of the reference dataset.
struct ReferenceCase {
    std::string label;  // e.g. "54a"
    int n = 0;          // order of the cyclic part
    IntMat tx;          // 2×2 Gram of the transcendental lattice
    mpz_class l_square; // degree of the invariant polarization
    mpz_class glue;     // index [H : T_X ⊕ Zl]
    std::optional<std::array<long, 2>> gap_id;  // metadata, not computed
    bool splits = true;                         // metadata, not computed
};

// One invariant lattice with its expected invariants and three case rows.
struct ReferenceLattice {
    std::string key;  // e.g. "No70-I"
    int group_no = 0;
    std::string group_name;
    long group_order = 0;
    IntMat gram;  // 3×3, even, positive definite
    mpz_class det;
    int so_dihedral_k = 0;                      // expected k with SO ≅ D_k
    std::optional<int> printed_so_dihedral_k;   // set when the source prints a
                                                // different value (see `note`)
    std::string note;
    std::string genus;
    mpz_class disc_aut_order;        // expected #O(q)
    mpz_class complement_aut_order;  // expected #O of the rank-19 complement
    std::vector<ReferenceCase> cases;

    Lattice lattice() const { return Lattice(gram, key); }
};

struct ReferenceData {
    std::vector<ReferenceLattice> lattices;

    const ReferenceLattice* find(const std::string& key) const;
    std::size_t case_count() const;
};

// Parse a reference dataset document.  Throws std::runtime_error on malformed
// JSON and std::invalid_argument on schema violations.
ReferenceData parse_reference(const std::string& json_text);

// The compiled-in dataset, or the file named by K3CLS_DATA when that is set.
ReferenceData load_reference();

// Lattice JSON ingestion (schema above).
Lattice parse_lattice_json(const std::string& json_text);
Lattice load_lattice_file(const std::string& path);

// Coinvariant JSON ingestion (schema above).  `label` names the invariant
// lattice the data belongs to (a dataset key such as "No54").
struct CoinvariantFile {
    std::string label;
    CoinvariantData data;
};
CoinvariantFile parse_coinvariant_json(const std::string& json_text);
CoinvariantFile load_coinvariant_file(const std::string& path);

namespace detail {
const char* embedded_reference_json();
}

}  // namespace k3cls

#endif  // K3CLS_DATASET_HPP
