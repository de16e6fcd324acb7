// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "fixtures.hpp"
#include "k3cls/autgrp.hpp"
#include "k3cls/discform.hpp"
#include "k3cls/genus.hpp"
#include "k3cls/intmat.hpp"
#include "k3cls/lattice.hpp"

using namespace k3cls;
using namespace k3cls::testing;

namespace {

// Random even symmetric matrix of the given rank (any signature), nonzero
// determinant, small entries.
IntMat random_even_gram(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<long> diag(-3, 3);
    std::uniform_int_distribution<long> off(-3, 3);
    for (;;) {
        IntMat g(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            g(i, i) = 2 * diag(rng);
            for (std::size_t j = i + 1; j < n; ++j) {
                g(i, j) = off(rng);
                g(j, i) = g(i, j);
            }
        }
        if (det(g) != 0) return g;
    }
}

IntMat random_unimodular(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<long> coef(-2, 2);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    IntMat u = IntMat::identity(n);
    for (int step = 0; step < 6; ++step) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        IntMat shear = IntMat::identity(n);
        shear(i, j) = coef(rng);
        u = u * shear;
    }
    return u;
}

IntMat direct_sum_gram(const IntMat& a, const IntMat& b) {
    return direct_sum(Lattice(a, "a"), Lattice(b, "b")).gram();
}

std::vector<long> primes_dividing(mpz_class n) {
    std::vector<long> out;
    n = abs(n);
    for (long p = 2; mpz_class(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n.get_si());
    return out;
}

// Signature invariant derived from the local data: the signature is congruent
// mod 8 to the 2-adic oddity minus the sum of the odd p-excesses, where both
// sides add 4 per constituent of odd scale exponent and minus sign.
void check_oddity_formula(const Lattice& l) {
    mpz_class total = 0;
    for (long p : primes_dividing(2 * l.det())) {
        std::vector<GenusConstituent> cons = padic_jordan(l, p);
        mpz_class part = 0;
        for (const GenusConstituent& c : cons) {
            if (p == 2) {
                part += c.oddity;
            } else {
                mpz_class scale = 1;
                for (long t = 0; t < c.scale_exp; ++t) scale *= p;
                part -= mpz_class(c.rank) * (scale - 1);
            }
            if (c.scale_exp % 2 == 1 && c.sign < 0)
                part += (p == 2) ? 4 : -4;
        }
        total += part;
    }
    auto [sp, sm] = l.signature();
    mpz_class lhs = sp - sm;
    mpz_class diff = lhs - total;
    CHECK(diff % 8 == 0);
}

mpz_class det_from_symbol(const GenusSymbol& g) {
    mpz_class d = 1;
    for (const LocalSymbol& loc : g.locals)
        for (const GenusConstituent& c : loc.constituents)
            for (long t = 0; t < c.scale_exp; ++t)
                for (std::size_t r = 0; r < c.rank; ++r) d *= loc.p;
    return d;
}

// Independent same-genus oracle for even lattices: equal signatures together
// with isometric discriminant forms.  An isometry D1 -> D2 is exactly an
// anti-isometry D1 -> -D2.
bool nikulin_same_genus(const Lattice& l1, const Lattice& l2) {
    if (l1.signature() != l2.signature()) return false;
    DiscForm d1 = disc_form(l1);
    DiscForm d2 = disc_form(l2);
    return !anti_isometries(d1, negate(d2)).empty();
}

}  // namespace

TEST_CASE("padic_jordan on fixed examples") {
    Lattice a1(diag_gram({2}), "a1");
    std::vector<GenusConstituent> c2 = padic_jordan(a1, 2);
    REQUIRE(c2.size() == 1);
    CHECK(c2[0].scale_exp == 1);
    CHECK(c2[0].rank == 1);
    CHECK(c2[0].sign == +1);
    CHECK_FALSE(c2[0].type_two);
    CHECK(c2[0].oddity == 1);

    Lattice u(hyperbolic_gram(), "u");
    std::vector<GenusConstituent> cu = padic_jordan(u, 2);
    REQUIRE(cu.size() == 1);
    CHECK(cu[0].scale_exp == 0);
    CHECK(cu[0].rank == 2);
    CHECK(cu[0].type_two);
    CHECK(cu[0].sign == +1);

    Lattice h54 = reference_lattice("No54");
    std::vector<GenusConstituent> c3 = padic_jordan(h54, 3);
    REQUIRE(c3.size() == 2);
    CHECK(c3[0].scale_exp == 0);
    CHECK(c3[0].rank == 2);
    CHECK(c3[0].sign == -1);
    CHECK(c3[1].scale_exp == 1);
    CHECK(c3[1].rank == 1);
    CHECK(c3[1].sign == +1);

    Lattice h70 = reference_lattice("No70-I");
    std::vector<GenusConstituent> c5 = padic_jordan(h70, 5);
    REQUIRE(c5.size() == 2);
    CHECK(c5[0].scale_exp == 0);
    CHECK(c5[0].rank == 1);
    CHECK(c5[0].sign == +1);
    CHECK(c5[1].scale_exp == 1);
    CHECK(c5[1].rank == 2);
    CHECK(c5[1].sign == -1);

    std::vector<GenusConstituent> c70_2 = padic_jordan(h70, 2);
    REQUIRE(c70_2.size() == 2);
    CHECK(c70_2[0].scale_exp == 0);
    CHECK(c70_2[0].rank == 2);
    CHECK(c70_2[0].type_two);
    CHECK(c70_2[1].scale_exp == 2);
    CHECK(c70_2[1].rank == 1);
    CHECK(c70_2[1].sign == -1);
    CHECK(c70_2[1].oddity == 5);
}

TEST_CASE("padic_jordan rejects bad input") {
    Lattice a1(diag_gram({2}), "a1");
    CHECK_THROWS_AS(padic_jordan(a1, 1), std::invalid_argument);
    CHECK_THROWS_AS(padic_jordan(a1, 4), std::invalid_argument);
    CHECK_THROWS_AS(padic_jordan(a1, 6), std::invalid_argument);

    Lattice odd(diag_gram({1}), "odd");
    CHECK_THROWS_AS(padic_jordan(odd, 2), std::invalid_argument);
    CHECK_THROWS_AS(genus_symbol(odd), std::invalid_argument);
    CHECK_THROWS_AS(same_genus(odd, odd), std::invalid_argument);

    Lattice degenerate(diag_gram({0}), "degenerate");
    CHECK_THROWS_AS(padic_jordan(degenerate, 2), std::domain_error);
    CHECK_THROWS_AS(genus_symbol(degenerate), std::domain_error);
}

TEST_CASE("genus strings match the reference table") {
    for (const ReferenceRow& row : reference_rows()) {
        Lattice l(row.gram, row.label);
        GenusSymbol g = genus_symbol(l);
        CHECK(g.signature == std::pair<int, int>(3, 0));
        CHECK(g.to_string() == row.genus);
    }
}

TEST_CASE("genus string edge cases") {
    Lattice u(hyperbolic_gram(), "u");
    CHECK(genus_symbol(u).to_string() == "");
    CHECK(genus_symbol(direct_sum(u, u)).to_string() == "");
    CHECK(genus_symbol(Lattice(diag_gram({2}), "a1")).to_string() ==
          "2^{+1}_1");
    CHECK(genus_symbol(Lattice(diag_gram({-2}), "a1neg")).to_string() ==
          "2^{+1}_7");
    CHECK(genus_symbol(Lattice(a2_gram(), "a2")).to_string() == "3^{-1}");
    CHECK(genus_symbol(Lattice(diag_gram({2, 14}), "d2_14")).to_string() ==
          "2^{+2}_0 7^{+1}");
    CHECK(genus_symbol(Lattice(diag_gram({18}), "d18")).to_string() ==
          "2^{+1}_1 9^{-1}");
    Lattice rank0(IntMat(0, 0), "zero");
    CHECK(genus_symbol(rank0).to_string() == "");
}

TEST_CASE("canonical string is a congruence invariant") {
    std::mt19937 rng(20260816);
    for (int iter = 0; iter < 100; ++iter) {
        std::size_t n = 1 + iter % 5;
        IntMat g = random_even_gram(rng, n);
        IntMat u = random_unimodular(rng, n);
        Lattice l1(g, "g");
        Lattice l2(u.transpose() * g * u, "ugu");
        CHECK(genus_symbol(l1).to_string() == genus_symbol(l2).to_string());
        CHECK(same_genus(l1, l2));
    }
}

TEST_CASE("determinant valuations are recoverable from the symbol") {
    for (const ReferenceRow& row : reference_rows()) {
        Lattice l(row.gram, row.label);
        CHECK(det_from_symbol(genus_symbol(l)) == abs(l.det()));
    }
    std::mt19937 rng(7);
    for (int iter = 0; iter < 40; ++iter) {
        std::size_t n = 1 + iter % 4;
        Lattice l(random_even_gram(rng, n), "rand");
        CHECK(det_from_symbol(genus_symbol(l)) == abs(l.det()));
    }
}

TEST_CASE("signature congruence with oddity and p-excess") {
    for (const ReferenceRow& row : reference_rows())
        check_oddity_formula(Lattice(row.gram, row.label));
    check_oddity_formula(Lattice(hyperbolic_gram(), "u"));
    check_oddity_formula(Lattice(a2_gram(), "a2"));
    std::mt19937 rng(99);
    for (int iter = 0; iter < 40; ++iter) {
        std::size_t n = 1 + iter % 4;
        check_oddity_formula(Lattice(random_even_gram(rng, n), "rand"));
    }
}

TEST_CASE("same_genus separates the paired lattices from isometry") {
    const char* pairs[3][2] = {{"No70-I", "No70-II"},
                               {"No74-I", "No74-II"},
                               {"No79-I", "No79-II"}};
    for (const auto& pr : pairs) {
        Lattice a = reference_lattice(pr[0]);
        Lattice b = reference_lattice(pr[1]);
        CHECK(same_genus(a, b));
        CHECK(same_genus(b, a));
        CHECK_FALSE(is_isometric(a, b).has_value());
    }
}

TEST_CASE("same_genus fixed examples") {
    for (const ReferenceRow& row : reference_rows()) {
        Lattice l(row.gram, row.label);
        CHECK(same_genus(l, l));
    }
    CHECK_FALSE(same_genus(Lattice(diag_gram({2}), "a"),
                           Lattice(diag_gram({4}), "b")));
    CHECK_FALSE(same_genus(Lattice(diag_gram({2}), "a"),
                           Lattice(diag_gram({18}), "b")));
    // Equal canonical strings but different signatures.
    Lattice small(diag_gram({2, 2}), "d2_2");
    Lattice padded = direct_sum(Lattice(hyperbolic_gram(), "u"), small);
    CHECK(genus_symbol(small).to_string() == genus_symbol(padded).to_string());
    CHECK_FALSE(same_genus(small, padded));
}

TEST_CASE("same_genus agrees with the discriminant-form oracle") {
    std::mt19937 rng(31337);
    int same_seen = 0;
    for (int iter = 0; iter < 40; ++iter) {
        std::size_t n = 2 + iter % 2;
        IntMat g1 = random_even_gram(rng, n);
        IntMat g2;
        if (iter % 4 == 0) {
            IntMat u = random_unimodular(rng, n);
            g2 = u.transpose() * g1 * u;
        } else {
            g2 = random_even_gram(rng, n);
        }
        Lattice l1(g1, "l1");
        Lattice l2(g2, "l2");
        if (abs(l1.det()) > 400 || abs(l2.det()) > 400) continue;
        bool expected = nikulin_same_genus(l1, l2);
        CHECK(same_genus(l1, l2) == expected);
        if (expected) ++same_seen;
    }
    CHECK(same_seen >= 5);

    Lattice a = reference_lattice("No70-I");
    Lattice b = reference_lattice("No70-II");
    CHECK(nikulin_same_genus(a, b));

    // Scaled even 2x2 blocks probe the walking moves between type II
    // constituents at close scales.
    IntMat u2{{0, 2}, {2, 0}};
    IntMat v2{{4, 2}, {2, 4}};
    IntMat u8{{0, 8}, {8, 0}};
    IntMat v8{{16, 8}, {8, 16}};
    Lattice uv(direct_sum_gram(hyperbolic_gram(), v2), "u+2v");
    Lattice vu(direct_sum_gram(a2_gram(), u2), "v+2u");
    CHECK(same_genus(uv, vu) == nikulin_same_genus(uv, vu));
    Lattice uv8(direct_sum_gram(u2, v8), "2u+8v");
    Lattice vu8(direct_sum_gram(v2, u8), "2v+8u");
    CHECK(same_genus(uv8, vu8) == nikulin_same_genus(uv8, vu8));
}
