// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#include "k3cls/shortvec.hpp"

#include <algorithm>

namespace k3cls {

namespace {

// G = Rᵀ D R with R unit upper triangular and D positive diagonal, so that
// Q(x) = Σ_i d_i (x_i + Σ_{j>i} r_ij x_j)².  Throws if not positive definite.
void ldl(const IntMat& g, std::vector<mpq_class>& d, RatMat& r) {
    const std::size_t n = g.rows();
    RatMat a(g);
    d.assign(n, 0);
    r = RatMat::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (a(k, k) <= 0) throw std::domain_error("short_vectors: lattice is not positive definite");
        d[k] = a(k, k);
        for (std::size_t j = k + 1; j < n; ++j) r(k, j) = a(k, j) / a(k, k);
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= a(k, i) * a(k, j) / a(k, k);
    }
}

// nearest integer to the rational x (ties toward +infinity)
mpz_class nearest_int(const mpq_class& x) {
    mpq_class shifted = x + mpq_class(1, 2);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    return q;
}

}  // namespace

std::vector<ShortVector> short_vectors(const Lattice& l, const mpz_class& bound) {
    if (bound < 0) throw std::invalid_argument("short_vectors: bound must be nonnegative");
    const std::size_t n = l.rank();
    std::vector<ShortVector> out;
    if (n == 0 || bound == 0) return out;
    std::vector<mpq_class> d;
    RatMat r;
    ldl(l.gram(), d, r);

    std::vector<mpz_class> x(n, 0);
    // enumerate levels from the last coordinate down
    auto descend = [&](auto&& self, std::size_t lvl, const mpq_class& budget) -> void {
        const std::size_t i = lvl - 1;
        mpq_class c = 0;
        for (std::size_t j = i + 1; j < n; ++j) c += r(i, j) * x[j];
        auto inside = [&](const mpz_class& m) {
            mpq_class t = mpq_class(m) + c;
            return d[i] * t * t <= budget;
        };
        auto visit = [&](const mpz_class& m) {
            x[i] = m;
            mpq_class t = mpq_class(m) + c;
            mpq_class used = d[i] * t * t;
            if (i == 0) {
                // leaf: record nonzero vectors with first nonzero coord positive
                bool zero = true, flip = false;
                for (std::size_t j = 0; j < n; ++j)
                    if (x[j] != 0) {
                        zero = false;
                        flip = x[j] < 0;
                        break;
                    }
                if (!zero && !flip) {
                    // exact norm via the Gram matrix
                    mpz_class norm = 0;
                    for (std::size_t a = 0; a < n; ++a)
                        for (std::size_t b = 0; b < n; ++b) norm += x[a] * l.gram()(a, b) * x[b];
                    out.push_back({x, norm});
                }
            } else {
                self(self, lvl - 1, budget - used);
            }
        };
        const mpz_class m0 = nearest_int(-c);
        for (mpz_class m = m0; inside(m); ++m) visit(m);
        for (mpz_class m = m0 - 1; inside(m); --m) visit(m);
        x[i] = 0;
    };
    descend(descend, n, mpq_class(bound));

    std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        return a.coords < b.coords;
    });
    return out;
}

}  // namespace k3cls
