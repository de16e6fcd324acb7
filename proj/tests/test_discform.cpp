// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "k3cls/autgrp.hpp"
#include "k3cls/discform.hpp"

using namespace k3cls;
using k3cls::testing::diag_gram;
using k3cls::testing::hyperbolic_gram;
using k3cls::testing::reference_lattice;
using k3cls::testing::reference_rows;

namespace {

// random even symmetric nonsingular matrix (any signature)
IntMat random_even_gram(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<long> off(-3, 3);
    std::uniform_int_distribution<long> di(-3, 3);
    while (true) {
        IntMat g(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            g(i, i) = 2 * di(rng);
            for (std::size_t j = i + 1; j < n; ++j) {
                g(i, j) = off(rng);
                g(j, i) = g(i, j);
            }
        }
        if (det(g) != 0) return g;
    }
}

// columns of m, interpreted as element tuples of d
std::vector<mpz_class> column_tuple(const IntMat& m, std::size_t j) {
    std::vector<mpz_class> x(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) x[i] = m(i, j);
    return x;
}

// does m define a sign-twisted isometry (from, to)?
bool respects_forms(const DiscForm& from, const DiscForm& to, const IntMat& m, int sign) {
    for (std::size_t j = 0; j < from.rank(); ++j) {
        auto img_j = column_tuple(m, j);
        if (form_q(to, img_j) != detail::rational_mod(sign * from.q_values[j], 2)) return false;
        for (std::size_t k = 0; k < j; ++k) {
            auto img_k = column_tuple(m, k);
            if (form_b(to, img_j, img_k) != detail::rational_mod(sign * from.b_values(j, k), 1))
                return false;
        }
    }
    return true;
}

const DiscForm& reference_form(const char* label) {
    static std::map<std::string, DiscForm> cache;
    auto [it, inserted] = cache.try_emplace(label);
    if (inserted) it->second = disc_form(reference_lattice(label));
    return it->second;
}

const FormGroup& reference_oq(const char* label) {
    static std::map<std::string, FormGroup> cache;
    auto [it, inserted] = cache.try_emplace(label);
    if (inserted) it->second = orthogonal_group_of_form(reference_form(label));
    return it->second;
}

}  // namespace

TEST_CASE("disc_form: fixed examples") {
    DiscForm a1 = disc_form(Lattice(diag_gram({2}), "a1"));
    REQUIRE(a1.factors == std::vector<mpz_class>{2});
    CHECK(a1.q_values[0] == mpq_class(1, 2));
    CHECK(a1.b_values(0, 0) == mpq_class(1, 2));
    CHECK(a1.order() == 2);

    DiscForm u = disc_form(Lattice(hyperbolic_gram(), "u"));
    CHECK(u.rank() == 0);
    CHECK(u.order() == 1);

    DiscForm d54 = reference_form("No54");
    CHECK(d54.order() == 384);
    CHECK(d54.factors == std::vector<mpz_class>{2, 8, 24});

    CHECK_THROWS_AS(disc_form(Lattice(diag_gram({3}), "odd")), std::invalid_argument);
    CHECK_THROWS_AS(disc_form(Lattice(diag_gram({0}), "degenerate")), std::domain_error);
}

TEST_CASE("disc group order equals |det|") {
    for (const auto& row : reference_rows()) {
        CHECK(reference_form(row.label).order() == row.det);
    }
    std::mt19937 rng(99);
    for (int iter = 0; iter < 40; ++iter) {
        IntMat g = random_even_gram(rng, 1 + iter % 3);
        mpz_class d = det(g);
        mpz_class ad = d < 0 ? mpz_class(-d) : d;
        CHECK(disc_form(Lattice(g, "rnd")).order() == ad);
    }
}

TEST_CASE("negate") {
    DiscForm triv = disc_form(Lattice(hyperbolic_gram(), "u"));
    CHECK(negate(triv).rank() == 0);

    DiscForm a1 = disc_form(Lattice(diag_gram({2}), "a1"));
    DiscForm na1 = negate(a1);
    CHECK(na1.q_values[0] == mpq_class(3, 2));
    CHECK(disc_form(Lattice(diag_gram({-2}), "ma1")).q_values[0] == mpq_class(3, 2));

    DiscForm d54 = reference_form("No54");
    DiscForm back = negate(negate(d54));
    CHECK(back.q_values == d54.q_values);
    CHECK(back.b_values == d54.b_values);
}

TEST_CASE("q and b satisfy the quadratic-form identities") {
    std::mt19937 rng(123);
    for (int iter = 0; iter < 25; ++iter) {
        IntMat g = random_even_gram(rng, 1 + iter % 3);
        DiscForm d = disc_form(Lattice(g, "rnd"));
        if (d.order() > 200) continue;  // keep the element enumeration small
        auto elems = form_elements(d);
        std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
        for (int t = 0; t < 15; ++t) {
            const auto& x = elems[pick(rng)];
            const auto& y = elems[pick(rng)];
            std::vector<mpz_class> sum(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) sum[i] = x[i] + y[i];
            // b(x,y) = (q(x+y) - q(x) - q(y)) / 2 in Q/Z
            mpq_class lhs = form_b(d, x, y);
            mpq_class rhs = detail::rational_mod((form_q(d, sum) - form_q(d, x) - form_q(d, y)) / 2, 1);
            CHECK(lhs == rhs);
            // q(n x) = n^2 q(x) in Q/2Z
            std::vector<mpz_class> nx(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) nx[i] = 3 * x[i];
            CHECK(form_q(d, nx) == detail::rational_mod(9 * form_q(d, x), 2));
        }
    }
}

TEST_CASE("orthogonal groups of the embedded discriminant forms") {
    for (const auto& row : reference_rows()) {
        const FormGroup& oq = reference_oq(row.label);
        CAPTURE(row.label);
        CHECK(oq.order() == static_cast<std::size_t>(row.disc_aut_order));
        // every element honestly preserves the form
        const DiscForm& d = reference_form(row.label);
        for (std::size_t i = 0; i < std::min<std::size_t>(oq.elements.size(), 10); ++i)
            CHECK(respects_forms(d, d, oq.elements[i], +1));
    }
    CHECK(orthogonal_group_of_form(disc_form(Lattice(hyperbolic_gram(), "u"))).order() == 1);
}

TEST_CASE("O(q) and O(-q) have the same order") {
    for (const auto& row : reference_rows()) {
        const DiscForm& d = reference_form(row.label);
        CHECK(reference_oq(row.label).order() == orthogonal_group_of_form(negate(d)).order());
    }
}

TEST_CASE("group-order product identity across the table") {
    for (const auto& row : reference_rows()) {
        CHECK(static_cast<long>(row.sym_order) * static_cast<long>(reference_oq(row.label).order()) ==
              row.complement_aut_order);
    }
}

TEST_CASE("induced_form_isometry: fixed examples") {
    Lattice l = reference_lattice("No54");
    const DiscForm& d = reference_form("No54");

    FormIsometry id = induced_form_isometry(l, IntMat::identity(3));
    CHECK(id.is_identity());

    FormIsometry neg = induced_form_isometry(l, -IntMat::identity(3));
    REQUIRE(neg.rows() == d.rank());
    for (std::size_t i = 0; i < neg.rows(); ++i)
        for (std::size_t j = 0; j < neg.cols(); ++j)
            CHECK(neg(i, j) == (i == j ? mpz_class(d.factors[i] - 1) : mpz_class(0)));

    CHECK_THROWS_AS(induced_form_isometry(l, IntMat{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
                    std::invalid_argument);
}

TEST_CASE("induced isometries preserve the form") {
    for (const char* label : {"No54", "No62", "No81"}) {
        Lattice l = reference_lattice(label);
        const DiscForm& d = reference_form(label);
        for (const auto& g : automorphism_group(l).generators) {
            FormIsometry m = induced_form_isometry(l, g);
            CHECK(respects_forms(d, d, m, +1));
        }
    }
}

TEST_CASE("induction is a homomorphism") {
    std::mt19937 rng(5150);
    for (const char* label : {"No54", "No70-I", "No80"}) {
        Lattice l = reference_lattice(label);
        const DiscForm& d = reference_form(label);
        MatrixGroup o = automorphism_group(l);
        std::uniform_int_distribution<std::size_t> pick(0, o.elements.size() - 1);
        for (int t = 0; t < 10; ++t) {
            const IntMat& g = o.elements[pick(rng)];
            const IntMat& h = o.elements[pick(rng)];
            FormIsometry lhs = induced_form_isometry(l, g * h);
            FormIsometry rhs =
                form_compose(d, induced_form_isometry(l, g), induced_form_isometry(l, h));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("anti-isometries") {
    DiscForm triv = disc_form(Lattice(hyperbolic_gram(), "u"));
    auto tt = anti_isometries(triv, triv);
    REQUIRE(tt.size() == 1);
    CHECK(tt[0].rows() == 0);

    DiscForm plus = disc_form(Lattice(diag_gram({2}), "p"));
    DiscForm minus = disc_form(Lattice(diag_gram({-2}), "m"));
    auto pm = anti_isometries(plus, minus);
    REQUIRE(pm.size() == 1);
    CHECK(pm[0] == IntMat{{1}});
    CHECK(anti_isometries(plus, plus).empty());

    // the identity map is an anti-isometry D -> negate(D), and composing with
    // O(q) gives them all
    const DiscForm& d74 = reference_form("No74-I");
    auto anti = anti_isometries(d74, negate(d74));
    CHECK(anti.size() == reference_oq("No74-I").order());
    for (const auto& m : anti) CHECK(respects_forms(d74, negate(d74), m, -1));
    bool has_identity = false;
    for (const auto& m : anti)
        if (m.is_identity()) has_identity = true;
    CHECK(has_identity);

    // order mismatch: no isomorphisms at all
    CHECK(anti_isometries(plus, disc_form(Lattice(diag_gram({4}), "z4"))).empty());
}

TEST_CASE("form element enumeration and orders") {
    const DiscForm& d = reference_form("No70-I");  // factors (5, 60)
    REQUIRE(d.factors == std::vector<mpz_class>{5, 60});
    auto elems = form_elements(d);
    CHECK(elems.size() == 300);
    CHECK(std::is_sorted(elems.begin(), elems.end()));
    CHECK(element_order_in_form(d, {0, 0}) == 1);
    CHECK(element_order_in_form(d, {1, 0}) == 5);
    CHECK(element_order_in_form(d, {0, 1}) == 60);
    CHECK(element_order_in_form(d, {1, 30}) == 10);
}
