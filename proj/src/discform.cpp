// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#include "k3cls/discform.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace k3cls {

namespace detail {

mpq_class rational_mod(const mpq_class& x, long m) {
    mpq_class scaled = x / m;
    mpz_class fl = fdiv_q(scaled.get_num(), scaled.get_den());
    mpq_class out = x - mpq_class(fl * m);
    out.canonicalize();
    return out;
}

}  // namespace detail

namespace {

// caps for the brute-force searches (largest in-scope group has order 384)
constexpr long kFormOrderCap = 1000;
constexpr std::size_t kFormRankCap = 6;

void check_caps(const DiscForm& d, const char* who) {
    if (d.rank() > kFormRankCap || d.order() > kFormOrderCap)
        throw std::length_error(std::string(who) + ": cap exceeded");
}

// All isomorphisms φ: from → to with q_to(φx) = sign·q_from(x), by DFS over
// generator images pruned by element order, q-value, and pairwise b-values.
std::vector<FormIsometry> search_isomorphisms(const DiscForm& from, const DiscForm& to, int sign) {
    if (from.order() != to.order()) return {};
    check_caps(from, "form isomorphism search");
    check_caps(to, "form isomorphism search");

    const std::size_t tf = from.rank();
    const std::size_t tt = to.rank();
    if (tf == 0) return {IntMat(0, 0)};

    auto elems = form_elements(to);
    std::vector<mpz_class> elem_order(elems.size());
    std::vector<mpq_class> elem_q(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
        elem_order[i] = element_order_in_form(to, elems[i]);
        elem_q[i] = form_q(to, elems[i]);
    }

    std::vector<FormIsometry> found;
    std::vector<std::size_t> chosen(tf);

    // surjectivity (= bijectivity, since the orders match): the images and the
    // relation lattice together must span the full integer lattice
    auto is_surjective = [&]() -> bool {
        IntMat m(tt, tf + tt);
        for (std::size_t j = 0; j < tf; ++j)
            for (std::size_t i = 0; i < tt; ++i) m(i, j) = elems[chosen[j]][i];
        for (std::size_t i = 0; i < tt; ++i) m(i, tf + i) = to.factors[i];
        SnfResult s = snf(m);
        for (std::size_t i = 0; i < tt; ++i)
            if (s.S(i, i) != 1) return false;
        return true;
    };

    std::function<void(std::size_t)> rec = [&](std::size_t col) {
        if (col == tf) {
            if (!is_surjective()) return;
            IntMat m(tt, tf);
            for (std::size_t j = 0; j < tf; ++j)
                for (std::size_t i = 0; i < tt; ++i) m(i, j) = elems[chosen[j]][i];
            found.push_back(std::move(m));
            return;
        }
        mpq_class want_q = detail::rational_mod(sign * from.q_values[col], 2);
        for (std::size_t cand = 0; cand < elems.size(); ++cand) {
            if (elem_order[cand] != from.factors[col]) continue;
            if (elem_q[cand] != want_q) continue;
            bool ok = true;
            for (std::size_t k = 0; k < col && ok; ++k) {
                mpq_class want_b = detail::rational_mod(sign * from.b_values(col, k), 1);
                if (form_b(to, elems[cand], elems[chosen[k]]) != want_b) ok = false;
            }
            if (!ok) continue;
            chosen[col] = cand;
            rec(col + 1);
        }
    };
    rec(0);
    std::sort(found.begin(), found.end());
    return found;
}

}  // namespace

mpz_class DiscForm::order() const {
    mpz_class o = 1;
    for (const auto& f : factors) o *= f;
    return o;
}

DiscForm disc_form(const Lattice& l) {
    if (!l.is_even()) throw std::invalid_argument("disc_form: lattice must be even");
    if (l.rank() > 0) l.det();  // throws on a degenerate form
    DiscGroup dg = discriminant_group(l);

    DiscForm d;
    d.factors = dg.invariant_factors;
    const std::size_t t = d.factors.size();
    d.q_values.resize(t);
    d.b_values = RatMat(t, t);
    RatMat gram(l.gram());
    RatMat pairings = dg.generators * gram * dg.generators.transpose();
    for (std::size_t i = 0; i < t; ++i) {
        d.q_values[i] = detail::rational_mod(pairings(i, i), 2);
        for (std::size_t j = 0; j < t; ++j) d.b_values(i, j) = detail::rational_mod(pairings(i, j), 1);
    }
    return d;
}

DiscForm negate(const DiscForm& d) {
    DiscForm n = d;
    for (auto& q : n.q_values) q = detail::rational_mod(-q, 2);
    for (std::size_t i = 0; i < n.rank(); ++i)
        for (std::size_t j = 0; j < n.rank(); ++j)
            n.b_values(i, j) = detail::rational_mod(-n.b_values(i, j), 1);
    return n;
}

mpq_class form_q(const DiscForm& d, const std::vector<mpz_class>& x) {
    if (x.size() != d.rank()) throw std::invalid_argument("form_q: wrong tuple length");
    mpq_class s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += mpq_class(x[i] * x[i]) * d.q_values[i];
        for (std::size_t j = i + 1; j < x.size(); ++j) s += 2 * mpq_class(x[i] * x[j]) * d.b_values(i, j);
    }
    return detail::rational_mod(s, 2);
}

mpq_class form_b(const DiscForm& d, const std::vector<mpz_class>& x, const std::vector<mpz_class>& y) {
    if (x.size() != d.rank() || y.size() != d.rank())
        throw std::invalid_argument("form_b: wrong tuple length");
    mpq_class s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) s += mpq_class(x[i] * y[j]) * d.b_values(i, j);
    return detail::rational_mod(s, 1);
}

mpz_class element_order_in_form(const DiscForm& d, const std::vector<mpz_class>& x) {
    if (x.size() != d.rank()) throw std::invalid_argument("element_order_in_form: wrong tuple length");
    mpz_class o = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mpz_class g, r;
        mpz_fdiv_r(r.get_mpz_t(), x[i].get_mpz_t(), d.factors[i].get_mpz_t());
        mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), d.factors[i].get_mpz_t());
        mpz_class cyc = d.factors[i] / g;  // order of x_i in Z/d_i
        mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), cyc.get_mpz_t());
    }
    return o;
}

std::vector<std::vector<mpz_class>> form_elements(const DiscForm& d) {
    check_caps(d, "form_elements");
    std::vector<std::vector<mpz_class>> out;
    const std::size_t t = d.rank();
    std::vector<mpz_class> x(t, 0);
    bool done = false;
    while (!done) {
        out.push_back(x);
        std::size_t pos = t;
        while (true) {
            if (pos == 0) {
                done = true;
                break;
            }
            --pos;
            x[pos] += 1;
            if (x[pos] < d.factors[pos]) break;
            x[pos] = 0;
        }
        if (t == 0) break;
    }
    return out;
}

FormGroup orthogonal_group_of_form(const DiscForm& d) {
    return FormGroup{search_isomorphisms(d, d, +1)};
}

FormIsometry induced_form_isometry(const Lattice& l, const IntMat& g) {
    if (g.transpose() * l.gram() * g != l.gram())
        throw std::invalid_argument("induced_form_isometry: not an isometry");
    SnfResult s = snf(l.gram());
    const std::size_t n = l.rank();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
        if (s.S(i, i) > 1) idx.push_back(i);

    // class of a dual vector x is (U·G·x) mod d; generator j is col_j(V)/d_j
    IntMat numer = s.U * l.gram() * g * s.V;
    IntMat m(idx.size(), idx.size());
    for (std::size_t jj = 0; jj < idx.size(); ++jj) {
        const mpz_class& dj = s.S(idx[jj], idx[jj]);
        for (std::size_t ii = 0; ii < idx.size(); ++ii) {
            const mpz_class& di = s.S(idx[ii], idx[ii]);
            mpz_class num = numer(idx[ii], idx[jj]);
            if (num % dj != 0)
                throw std::logic_error("induced_form_isometry: image left the dual lattice");
            mpz_class c = num / dj;
            mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), di.get_mpz_t());
            m(ii, jj) = c;
        }
    }
    return m;
}

std::vector<FormIsometry> anti_isometries(const DiscForm& d1, const DiscForm& d2) {
    return search_isomorphisms(d1, d2, -1);
}

FormIsometry form_compose(const DiscForm& target, const FormIsometry& a, const FormIsometry& b) {
    IntMat p = a * b;
    IntMat out(p.rows(), p.cols());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j)
            mpz_fdiv_r(out(i, j).get_mpz_t(), p(i, j).get_mpz_t(), target.factors[i].get_mpz_t());
    return out;
}

}  // namespace k3cls
