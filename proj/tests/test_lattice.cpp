// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "k3cls/lattice.hpp"

using namespace k3cls;

namespace {

const IntMat kGram54{{2, 0, 0}, {0, 16, 8}, {0, 8, 16}};
const IntMat kGram70a{{4, 1, 0}, {1, 4, 0}, {0, 0, 20}};
const IntMat kU{{0, 1}, {1, 0}};

IntMat random_unimodular(std::mt19937& rng, std::size_t n, int shears) {
    std::uniform_int_distribution<long> coef(-3, 3);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    IntMat u = IntMat::identity(n);
    for (int s = 0; s < shears; ++s) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j) continue;
        long c = coef(rng);
        for (std::size_t k = 0; k < n; ++k) u(i, k) += c * u(j, k);
    }
    return u;
}

IntMat random_symmetric(std::mt19937& rng, std::size_t n, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            m(i, j) = d(rng);
            m(j, i) = m(i, j);
        }
    return m;
}

}  // namespace

TEST_CASE("signature golden values") {
    CHECK(Lattice(kGram54).signature() == std::pair<int, int>(3, 0));
    CHECK(Lattice(kU).signature() == std::pair<int, int>(1, 1));
    CHECK(Lattice(IntMat{{-2}}).signature() == std::pair<int, int>(0, 1));
    CHECK(Lattice(IntMat(0, 0)).signature() == std::pair<int, int>(0, 0));
    CHECK_THROWS_AS(Lattice(IntMat{{1, 1}, {1, 1}}).signature(), std::domain_error);
}

TEST_CASE("signature is invariant under unimodular congruence") {
    std::mt19937 rng(2024);
    int done = 0;
    while (done < 60) {
        std::size_t n = 1 + done % 4;
        IntMat g = random_symmetric(rng, n, -6, 6);
        if (det(g) == 0) continue;
        auto sig = Lattice(g).signature();
        IntMat u = random_unimodular(rng, n, 8);
        CHECK(Lattice(u.transpose() * g * u).signature() == sig);
        ++done;
    }
}

TEST_CASE("evenness") {
    CHECK(Lattice(kGram54).is_even());
    CHECK(!Lattice(IntMat{{1}}).is_even());
    CHECK(Lattice(IntMat{{2, 1}, {1, 2}}).is_even());
}

TEST_CASE("discriminant group golden values") {
    SUBCASE("A1") {
        DiscGroup d = discriminant_group(Lattice(IntMat{{2}}));
        REQUIRE(d.invariant_factors.size() == 1);
        CHECK(d.invariant_factors[0] == 2);
        CHECK(d.generators(0, 0) == mpq_class(1, 2));
    }
    SUBCASE("unimodular") {
        DiscGroup d = discriminant_group(Lattice(kU));
        CHECK(d.invariant_factors.empty());
    }
    SUBCASE("product of factors equals |det|") {
        DiscGroup d = discriminant_group(Lattice(kGram54));
        mpz_class prod = 1;
        for (const auto& f : d.invariant_factors) prod *= f;
        CHECK(prod == 384);
        // invariant factors divide in order
        for (std::size_t i = 0; i + 1 < d.invariant_factors.size(); ++i)
            CHECK(d.invariant_factors[i + 1] % d.invariant_factors[i] == 0);
    }
}

TEST_CASE("discriminant group generators lie in the dual and have the right order") {
    std::mt19937 rng(99);
    int done = 0;
    while (done < 60) {
        std::size_t n = 1 + done % 3;
        IntMat g = random_symmetric(rng, n, -5, 5);
        if (det(g) == 0) continue;
        Lattice l(g);
        DiscGroup d = discriminant_group(l);
        mpz_class prod = 1;
        for (const auto& f : d.invariant_factors) prod *= f;
        CHECK(prod == abs(l.det()));
        for (std::size_t t = 0; t < d.invariant_factors.size(); ++t) {
            // generator pairs integrally with the lattice: row * G is integral
            RatMat row(1, n);
            for (std::size_t j = 0; j < n; ++j) row(0, j) = d.generators(t, j);
            CHECK((row * RatMat(g)).is_integral());
            // exact order d_t modulo Z^n
            const mpz_class& dt = d.invariant_factors[t];
            for (std::size_t j = 0; j < n; ++j) {
                mpq_class scaled = d.generators(t, j) * mpq_class(dt);
                CHECK(scaled.get_den() == 1);
            }
            mpz_class denom_lcm = 1;
            for (std::size_t j = 0; j < n; ++j) denom_lcm = lcm(denom_lcm, d.generators(t, j).get_den());
            CHECK(denom_lcm == dt);
        }
        ++done;
    }
}

TEST_CASE("orthogonal complement golden values") {
    SUBCASE("axis inside a split form") {
        Sublattice s{Lattice(kGram54), IntMat{{1, 0, 0}}};
        Sublattice c = orthogonal_complement(s);
        REQUIRE(c.rank() == 2);
        CHECK(c.lattice().gram() == IntMat{{16, 8}, {8, 16}});
    }
    SUBCASE("whole lattice") {
        Sublattice s = full_sublattice(Lattice(kGram54));
        CHECK(orthogonal_complement(s).rank() == 0);
    }
    SUBCASE("third axis of the first order-300 lattice") {
        Sublattice s{Lattice(kGram70a), IntMat{{0, 0, 1}}};
        Sublattice c = orthogonal_complement(s);
        REQUIRE(c.rank() == 2);
        CHECK(c.lattice().gram() == IntMat{{4, 1}, {1, 4}});
    }
}

TEST_CASE("orthogonal complement is primitive") {
    std::mt19937 rng(555);
    int done = 0;
    while (done < 60) {
        IntMat g = random_symmetric(rng, 3, -5, 5);
        if (det(g) == 0) continue;
        std::uniform_int_distribution<long> d(-3, 3);
        IntMat b(1, 3);
        for (int j = 0; j < 3; ++j) b(0, j) = d(rng);
        if (b.is_zero()) continue;
        Sublattice s{Lattice(g), b};
        Sublattice c = orthogonal_complement(s);
        CHECK(c.is_primitive());
        // complement pairs to zero with s
        IntMat pairing = c.basis * g * b.transpose();
        CHECK(pairing.is_zero());
        ++done;
    }
}

TEST_CASE("index of sublattices") {
    Lattice h(kGram54);
    SUBCASE("glue index two") {
        // T_X ⊕ Zl for l = e2 (norm 16): T_X spanned by e1 and e2 - 2 e3
        Sublattice s{h, IntMat{{1, 0, 0}, {0, 1, -2}, {0, 1, 0}}};
        CHECK(index_in(s, full_sublattice(h)) == 2);
        CHECK(s.lattice().det() == 4 * 384);
    }
    SUBCASE("full sublattice has index one") {
        CHECK(index_in(full_sublattice(h), full_sublattice(h)) == 1);
    }
    SUBCASE("glue index one") {
        // T_X ⊕ Zl for l = e1: complement is spanned by e2, e3
        Sublattice s{h, IntMat{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}};
        CHECK(index_in(s, full_sublattice(h)) == 1);
    }
    SUBCASE("rank mismatch rejected") {
        Sublattice s{h, IntMat{{1, 0, 0}}};
        CHECK_THROWS_AS(index_in(s, full_sublattice(h)), std::invalid_argument);
    }
    SUBCASE("non-containment rejected") {
        Sublattice half{h, IntMat{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
        Sublattice other{h, IntMat{{1, 0, 0}, {0, 2, 0}, {0, 0, 1}}};
        CHECK_THROWS_AS(index_in(other, half), std::invalid_argument);
    }
}

TEST_CASE("determinant-index identity") {
    std::mt19937 rng(8080);
    int done = 0;
    while (done < 50) {
        IntMat g = random_symmetric(rng, 3, -4, 4);
        if (det(g) == 0) continue;
        Lattice t(g);
        IntMat u = random_unimodular(rng, 3, 6);
        std::uniform_int_distribution<long> sc(1, 3);
        IntMat scale(3, 3);
        mpz_class expect_index = 1;
        for (int i = 0; i < 3; ++i) {
            scale(i, i) = sc(rng);
            expect_index *= scale(i, i);
        }
        Sublattice s{t, scale * u};
        CHECK(index_in(s, full_sublattice(t)) == expect_index);
        CHECK(s.lattice().det() == expect_index * expect_index * t.det());
        ++done;
    }
}

TEST_CASE("direct sums") {
    Lattice a(IntMat{{2}});
    Lattice b(IntMat{{-2}});
    CHECK(direct_sum(a, b).gram() == IntMat{{2, 0}, {0, -2}});
    Lattice l = direct_sum(Lattice(IntMat{{2, 0}, {0, 48}}), Lattice(IntMat{{16}}));
    CHECK(l.det() == 1536);
    CHECK(direct_sum(Lattice(IntMat(0, 0)), a).gram() == a.gram());
}
