// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#include "k3cls/lattice.hpp"

namespace k3cls {

Lattice::Lattice(IntMat gram, std::string label) : gram_(std::move(gram)), label_(std::move(label)) {
    if (!gram_.is_symmetric()) throw std::invalid_argument("Lattice: Gram matrix must be symmetric");
}

const mpz_class& Lattice::det() const {
    if (!det_) det_ = k3cls::det(gram_);
    if (*det_ == 0) throw std::domain_error("Lattice: degenerate Gram matrix");
    return *det_;
}

std::pair<int, int> Lattice::signature() const {
    if (sig_) return *sig_;
    // exact symmetric (congruence) diagonalization; Sylvester's law
    const std::size_t n = rank();
    RatMat a(gram_);
    int plus = 0, minus = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (a(k, k) == 0) {
            // try to bring a nonzero diagonal entry to position k
            std::size_t p = k + 1;
            while (p < n && a(p, p) == 0) ++p;
            if (p < n) {
                for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
                for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, p));
            } else {
                // all remaining diagonal entries vanish; use an off-diagonal one
                std::size_t oi = n, oj = n;
                for (std::size_t i = k; i < n && oi == n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j)
                        if (a(i, j) != 0) {
                            oi = i;
                            oj = j;
                            break;
                        }
                if (oi == n) throw std::domain_error("signature: degenerate form");
                // row/col i += row/col j makes the (i,i) entry 2*a(i,j) != 0
                for (std::size_t j = 0; j < n; ++j) a(oi, j) += a(oj, j);
                for (std::size_t i = 0; i < n; ++i) a(i, oi) += a(i, oj);
                if (oi != k) {
                    for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(oi, j));
                    for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, oi));
                }
            }
        }
        const mpq_class piv = a(k, k);
        if (piv > 0)
            ++plus;
        else
            ++minus;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            mpq_class c = a(i, k) / piv;
            for (std::size_t j = 0; j < n; ++j) a(i, j) -= c * a(k, j);
            for (std::size_t j = 0; j < n; ++j) a(j, i) = a(i, j);
        }
    }
    sig_ = {plus, minus};
    return *sig_;
}

bool Lattice::is_even() const {
    if (!even_) {
        bool e = true;
        for (std::size_t i = 0; i < rank(); ++i)
            if (gram_(i, i) % 2 != 0) {
                e = false;
                break;
            }
        even_ = e;
    }
    return *even_;
}

bool Lattice::is_positive_definite() const {
    auto [p, m] = signature();
    return m == 0;
}

bool Lattice::is_negative_definite() const {
    auto [p, m] = signature();
    return p == 0;
}

bool Lattice::is_definite() const {
    auto [p, m] = signature();
    return p == 0 || m == 0;
}

Lattice Lattice::negated() const { return Lattice(-gram_, label_); }

Lattice Sublattice::lattice(std::string label) const {
    return Lattice(basis * ambient.gram() * basis.transpose(), std::move(label));
}

bool Sublattice::is_primitive() const {
    if (basis.rows() == 0) return true;
    SnfResult r = snf(basis);
    for (std::size_t i = 0; i < basis.rows(); ++i)
        if (r.S(i, i) != 1) return false;
    return true;
}

Sublattice full_sublattice(const Lattice& l) { return {l, IntMat::identity(l.rank())}; }

DiscGroup discriminant_group(const Lattice& l) {
    l.det();  // nondegeneracy check
    SnfResult r = snf(l.gram());
    const std::size_t n = l.rank();
    DiscGroup g;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
        if (r.S(i, i) > 1) keep.push_back(i);
    g.generators = RatMat(keep.size(), n);
    for (std::size_t t = 0; t < keep.size(); ++t) {
        const std::size_t i = keep[t];
        g.invariant_factors.push_back(r.S(i, i));
        // generator of the i-th cyclic summand: column i of V divided by d_i
        for (std::size_t j = 0; j < n; ++j) {
            g.generators(t, j) = mpq_class(r.V(j, i), r.S(i, i));
            g.generators(t, j).canonicalize();
        }
    }
    return g;
}

Sublattice orthogonal_complement(const Sublattice& s) {
    // x ⟂ S  <=>  (B G) xᵀ = 0
    IntMat bg = s.basis * s.ambient.gram();
    return {s.ambient, kernel_saturated(bg)};
}

mpz_class index_in(const Sublattice& s, const Sublattice& t) {
    if (s.rank() != t.rank()) throw std::invalid_argument("index_in: rank mismatch");
    auto x = solve_left(RatMat(t.basis), RatMat(s.basis));
    if (!x || !x->is_integral()) throw std::invalid_argument("index_in: sublattice is not contained in the target");
    mpz_class d = det(x->to_int());
    if (d == 0) throw std::invalid_argument("index_in: sublattice does not have full rank in the target");
    return d < 0 ? mpz_class(-d) : d;
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    const std::size_t n = a.rank(), m = b.rank();
    IntMat g(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram()(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram()(i, j);
    std::string label;
    if (!a.label().empty() || !b.label().empty()) label = a.label() + "+" + b.label();
    return Lattice(g, label);
}

}  // namespace k3cls
