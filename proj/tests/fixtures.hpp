// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#ifndef K3CLS_TESTS_FIXTURES_HPP
#define K3CLS_TESTS_FIXTURES_HPP

#include <string>
#include <string_view>
#include <vector>

#include "k3cls/intmat.hpp"
#include "k3cls/lattice.hpp"

namespace k3cls::testing {

// One row per classified invariant lattice, with the frozen expected values
// used across the test suites.
struct ReferenceRow {
    const char* label;            // stable lattice name, e.g. "No70-I"
    int group_no;                 // classification number of the group
    const char* group_name;       // symplectic group, e.g. "T48"
    long sym_order;               // order of that group
    IntMat gram;                  // Gram matrix of the invariant lattice
    long det;                     // determinant of the Gram matrix
    int dihedral_k;               // SO(H) is the dihedral group D_k
    const char* genus;            // genus symbol of the lattice
    long disc_aut_order;          // #O(q) of the discriminant form
    long complement_aut_order;    // #O of the orthogonal-complement lattice
};

inline const std::vector<ReferenceRow>& reference_rows() {
    static const std::vector<ReferenceRow> rows = {
        {"No54", 54, "T48", 48,
         IntMat{{2, 0, 0}, {0, 16, 8}, {0, 8, 16}},
         384, 6, "2^{+1}_1 8^{-2}_II 3^{+1}", 192, 9216},
        {"No62", 62, "N72", 72,
         IntMat{{6, 0, 3}, {0, 6, 3}, {3, 3, 12}},
         324, 4, "4^{+1}_7 3^{+2} 9^{+1}", 288, 20736},
        {"No63", 63, "M9", 72,
         IntMat{{2, 0, 0}, {0, 12, 6}, {0, 6, 12}},
         216, 6, "2^{-3}_1 3^{+1} 9^{+1}", 72, 5184},
        {"No70-I", 70, "S5", 120,
         IntMat{{4, 1, 0}, {1, 4, 0}, {0, 0, 20}},
         300, 2, "4^{-1}_5 3^{-1} 5^{-2}", 48, 5760},
        {"No70-II", 70, "S5", 120,
         IntMat{{4, 2, 2}, {2, 6, 1}, {2, 1, 16}},
         300, 2, "4^{-1}_5 3^{-1} 5^{-2}", 48, 5760},
        {"No74-I", 74, "L2(7)", 168,
         IntMat{{2, 1, 0}, {1, 4, 0}, {0, 0, 28}},
         196, 2, "4^{+1}_7 7^{+2}", 32, 5376},
        {"No74-II", 74, "L2(7)", 168,
         IntMat{{4, 2, 2}, {2, 8, 1}, {2, 1, 8}},
         196, 4, "4^{+1}_7 7^{+2}", 32, 5376},
        {"No76", 76, "H192", 192,
         IntMat{{4, 0, 0}, {0, 8, 0}, {0, 0, 12}},
         384, 2, "4^{-2}_4 8^{+1}_1 3^{+1}", 128, 24576},
        {"No77", 77, "T192", 192,
         IntMat{{4, 0, 0}, {0, 8, 4}, {0, 4, 8}},
         192, 6, "4^{-3}_1 3^{-1}", 192, 36864},
        {"No78", 78, "A4,4", 288,
         IntMat{{8, 4, 4}, {4, 8, 2}, {4, 2, 8}},
         288, 4, "2^{+2}_II 8^{+1}_7 3^{+2}", 128, 36864},
        {"No79-I", 79, "A6", 360,
         IntMat{{2, 1, 0}, {1, 8, 0}, {0, 0, 12}},
         180, 2, "4^{-1}_3 3^{+2} 5^{+1}", 32, 11520},
        {"No79-II", 79, "A6", 360,
         IntMat{{6, 0, 3}, {0, 6, 3}, {3, 3, 8}},
         180, 4, "4^{-1}_3 3^{+2} 5^{+1}", 32, 11520},
        {"No80", 80, "F384", 384,
         IntMat{{4, 0, 0}, {0, 8, 0}, {0, 0, 8}},
         256, 4, "4^{+1}_1 8^{+2}_2", 128, 49152},
        {"No81", 81, "M20", 960,
         IntMat{{4, 0, 2}, {0, 4, 2}, {2, 2, 12}},
         160, 4, "2^{-2}_II 8^{+1}_7 5^{-1}", 96, 92160},
    };
    return rows;
}

inline Lattice reference_lattice(const char* label) {
    for (const auto& r : reference_rows())
        if (std::string_view(r.label) == label) return Lattice(r.gram, r.label);
    throw std::invalid_argument(std::string("unknown reference lattice: ") + label);
}

inline IntMat diag_gram(std::initializer_list<long> d) {
    IntMat g(d.size(), d.size());
    std::size_t i = 0;
    for (long v : d) {
        g(i, i) = v;
        ++i;
    }
    return g;
}

inline IntMat a2_gram() { return IntMat{{2, 1}, {1, 2}}; }

inline IntMat hyperbolic_gram() { return IntMat{{0, 1}, {1, 0}}; }

}  // namespace k3cls::testing

#endif  // K3CLS_TESTS_FIXTURES_HPP
