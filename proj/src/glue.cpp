// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#include "k3cls/glue.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "k3cls/shortvec.hpp"

namespace k3cls {

namespace {

mpz_class zmod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::vector<mpz_class> column_of(const IntMat& m, std::size_t j) {
    std::vector<mpz_class> c(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m(i, j);
    return c;
}

IntMat reduce_columns(const IntMat& m, const std::vector<mpz_class>& factors) {
    IntMat out = m;
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = zmod(out(i, j), factors[i]);
    return out;
}

// [gens | diag(factors)] as one matrix; its column span is the preimage in
// Z^m of the subgroup generated by the columns of `gens` in ⊕ Z/factors[i].
IntMat with_relations(const IntMat& gens, const std::vector<mpz_class>& factors) {
    const std::size_t m = factors.size(), k = gens.cols();
    IntMat a(m, k + m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) a(i, j) = gens(i, j);
        a(i, k + i) = factors[i];
    }
    return a;
}

// Order of the subgroup of ⊕ Z/factors[i] generated by the columns of `gens`.
mpz_class subgroup_order_of(const IntMat& gens, const std::vector<mpz_class>& factors) {
    const std::size_t m = factors.size();
    if (m == 0) return 1;
    HnfResult h = hnf(with_relations(gens, factors).transpose());
    mpz_class idx = 1;  // index of the preimage lattice in Z^m
    for (std::size_t i = 0; i < m; ++i) idx *= h.H(i, i);
    mpz_class total = 1;
    for (const auto& d : factors) total *= d;
    return total / idx;
}

// Integer c with gens·c ≡ v modulo the factors, or nothing when v is not in
// the subgroup generated by the columns of `gens`.
std::optional<std::vector<mpz_class>> solve_mod(const IntMat& gens,
                                                const std::vector<mpz_class>& factors,
                                                const std::vector<mpz_class>& v) {
    const std::size_t m = factors.size(), k = gens.cols();
    if (m == 0) return std::vector<mpz_class>(k, 0);
    IntMat at = with_relations(gens, factors).transpose();  // (k+m) × m
    HnfResult h = hnf(at);
    // back-substitute v against the echelon rows of H
    std::vector<mpz_class> rest = v;
    std::vector<mpz_class> w(at.rows(), 0);
    for (std::size_t r = 0; r < at.rows(); ++r) {
        std::size_t p = 0;
        while (p < m && h.H(r, p) == 0) ++p;
        if (p == m) break;  // zero rows end the echelon
        if (rest[p] % h.H(r, p) != 0) return std::nullopt;
        w[r] = rest[p] / h.H(r, p);
        for (std::size_t j = 0; j < m; ++j) rest[j] -= w[r] * h.H(r, j);
    }
    for (const auto& x : rest)
        if (x != 0) return std::nullopt;
    std::vector<mpz_class> z(k, 0);
    for (std::size_t j = 0; j < k; ++j) {
        mpz_class s = 0;
        for (std::size_t r = 0; r < at.rows(); ++r) s += h.U(r, j) * w[r];
        z[j] = s;
    }
    return z;
}

// Smith data of a Gram matrix, matching the generator choice made by
// discriminant_group() and disc_form().
struct DiscCoords {
    SnfResult s;
    std::vector<std::size_t> keep;
    std::vector<mpz_class> factors;
};

DiscCoords disc_coords_of(const Lattice& l) {
    DiscCoords dc;
    dc.s = snf(l.gram());
    for (std::size_t i = 0; i < l.rank(); ++i)
        if (dc.s.S(i, i) > 1) {
            dc.keep.push_back(i);
            dc.factors.push_back(dc.s.S(i, i));
        }
    return dc;
}

// Disc-form coordinates of a dual vector given by rational coordinates in the
// lattice basis: the class of x is (U·G·x) mod d.
std::vector<mpz_class> disc_class(const Lattice& l, const DiscCoords& dc,
                                  const std::vector<mpq_class>& x) {
    const std::size_t n = l.rank();
    std::vector<mpz_class> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        mpq_class s = 0;
        for (std::size_t j = 0; j < n; ++j) s += l.gram()(i, j) * x[j];
        if (s.get_den() != 1) throw std::logic_error("disc_class: vector is not in the dual lattice");
        y[i] = s.get_num();
    }
    std::vector<mpz_class> out(dc.keep.size());
    for (std::size_t t = 0; t < dc.keep.size(); ++t) {
        mpz_class s = 0;
        for (std::size_t i = 0; i < n; ++i) s += dc.s.U(dc.keep[t], i) * y[i];
        out[t] = zmod(s, dc.factors[t]);
    }
    return out;
}

// Lift of a disc-form element to the rational vector whose lattice-basis
// coordinates all lie in [0, 1).
std::vector<mpq_class> lift_element(const DiscGroup& dg, const std::vector<mpz_class>& tuple,
                                    std::size_t n) {
    std::vector<mpq_class> row(n, 0);
    for (std::size_t i = 0; i < dg.invariant_factors.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) row[j] += tuple[i] * dg.generators(i, j);
    for (auto& v : row) v = detail::rational_mod(v, 1);
    return row;
}

bool forms_match(const DiscForm& a, const DiscForm& b) {
    return a.factors == b.factors && a.q_values == b.q_values && a.b_values == b.b_values;
}

// Checks that dom → img generates an anti-isometry between subgroups:
// well-defined, order-preserving, and value-negating on q and b.
void validate_glue(const DiscForm& d1, const DiscForm& d2, const IntMat& dom, const IntMat& img) {
    if (dom.rows() != d1.rank() || img.rows() != d2.rank() || dom.cols() != img.cols())
        throw std::invalid_argument("build_extension: glue does not match the discriminant forms");
    const std::size_t k = dom.cols();
    if (k == 0) return;
    const char* bad = "build_extension: non-anti-isometric glue";
    if (subgroup_order_of(dom, d1.factors) != subgroup_order_of(img, d2.factors))
        throw std::invalid_argument(bad);
    // relations among the domain generators must hold among the images
    if (d1.rank() > 0) {
        IntMat ker = kernel_saturated(with_relations(dom, d1.factors));
        for (std::size_t r = 0; r < ker.rows(); ++r)
            for (std::size_t i = 0; i < d2.rank(); ++i) {
                mpz_class s = 0;
                for (std::size_t j = 0; j < k; ++j) s += img(i, j) * ker(r, j);
                if (zmod(s, d2.factors[i]) != 0) throw std::invalid_argument(bad);
            }
    }
    // q negates on generators and b negates on pairs; bilinearity and the
    // relation check extend both to the whole subgroup
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<mpz_class> xj = column_of(dom, j), yj = column_of(img, j);
        if (detail::rational_mod(form_q(d1, xj) + form_q(d2, yj), 2) != 0)
            throw std::invalid_argument(bad);
        for (std::size_t j2 = j + 1; j2 < k; ++j2) {
            mpq_class bsum = form_b(d1, xj, column_of(dom, j2)) + form_b(d2, yj, column_of(img, j2));
            if (detail::rational_mod(bsum, 1) != 0) throw std::invalid_argument(bad);
        }
    }
}

// φ ∘ f̄ on the glue generators, or nothing when f̄ moves the glue domain out
// of itself (no extension can exist then).
std::optional<std::vector<std::vector<mpz_class>>> glue_targets(const GlueMap& glue,
                                                                const Lattice& l1,
                                                                const IntMat& f) {
    const std::size_t k = glue.dom.cols();
    std::vector<std::vector<mpz_class>> targets(k);
    if (k == 0) return targets;
    FormIsometry fbar = induced_form_isometry(l1, f);
    const std::size_t m1 = glue.d1.rank(), m2 = glue.d2.rank();
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<mpz_class> fx(m1);
        for (std::size_t i = 0; i < m1; ++i) {
            mpz_class s = 0;
            for (std::size_t t = 0; t < m1; ++t) s += fbar(i, t) * glue.dom(t, j);
            fx[i] = zmod(s, glue.d1.factors[i]);
        }
        auto c = solve_mod(glue.dom, glue.d1.factors, fx);
        if (!c) return std::nullopt;
        std::vector<mpz_class> y(m2);
        for (std::size_t i = 0; i < m2; ++i) {
            mpz_class s = 0;
            for (std::size_t j2 = 0; j2 < k; ++j2) s += glue.img(i, j2) * (*c)[j2];
            y[i] = zmod(s, glue.d2.factors[i]);
        }
        targets[j] = std::move(y);
    }
    return targets;
}

// ḡ ∘ φ = φ ∘ f̄ on the glue generators, given ḡ and the precomputed targets.
bool glue_compatible(const GlueMap& glue, const FormIsometry& gbar,
                     const std::vector<std::vector<mpz_class>>& targets) {
    const std::size_t k = glue.dom.cols(), m2 = glue.d2.rank();
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < m2; ++i) {
            mpz_class s = 0;
            for (std::size_t t = 0; t < m2; ++t) s += gbar(i, t) * glue.img(t, j);
            if (zmod(s - targets[j][i], glue.d2.factors[i]) != 0) return false;
        }
    return true;
}

std::vector<mpz_class> primitive_vector(const mpz_class& x, const mpz_class& y) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    std::vector<mpz_class> v = {x / g, y / g};
    if (v[0] < 0 || (v[0] == 0 && v[1] < 0)) {
        v[0] = -v[0];
        v[1] = -v[1];
    }
    return v;
}

// Candidate list for O(L2).  Definite lattices are enumerated outright; an
// indefinite rank-2 lattice has a finite orthogonal group exactly when it
// contains isotropic vectors, in which case every isometry permutes the two
// isotropic lines up to a global sign.
std::vector<IntMat> orthogonal_candidates(const Lattice& l2) {
    if (l2.rank() == 0) return {IntMat::identity(0)};
    if (l2.is_definite()) return automorphism_group(l2).elements;
    const char* bad = "extend_isometry: L2 outside supported shapes";
    if (l2.rank() != 2) throw std::invalid_argument(bad);
    const IntMat& g = l2.gram();
    mpz_class a = g(0, 0), b = g(0, 1), c = g(1, 1);
    mpz_class disc = b * b - a * c;
    if (mpz_perfect_square_p(disc.get_mpz_t()) == 0) throw std::invalid_argument(bad);
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
    std::vector<mpz_class> v1, v2;
    if (a != 0) {
        v1 = primitive_vector(-b + s, a);
        v2 = primitive_vector(-b - s, a);
    } else {
        v1 = primitive_vector(1, 0);
        v2 = primitive_vector(-c, 2 * b);
    }
    IntMat vm(2, 2);
    vm(0, 0) = v1[0];
    vm(1, 0) = v1[1];
    vm(0, 1) = v2[0];
    vm(1, 1) = v2[1];
    auto vinv = inverse(RatMat(vm));
    if (!vinv) throw std::logic_error("orthogonal_candidates: isotropic lines are not independent");
    std::set<IntMat> out;
    for (int swap = 0; swap < 2; ++swap)
        for (int eps = -1; eps <= 1; eps += 2) {
            IntMat wm(2, 2);
            for (std::size_t i = 0; i < 2; ++i) {
                wm(i, 0) = eps * vm(i, swap ? 1 : 0);
                wm(i, 1) = eps * vm(i, swap ? 0 : 1);
            }
            RatMat cand = RatMat(wm) * (*vinv);
            if (!cand.is_integral()) continue;
            IntMat ci = cand.to_int();
            if (ci.transpose() * g * ci == g) out.insert(ci);
        }
    return std::vector<IntMat>(out.begin(), out.end());
}

}  // namespace

mpz_class GlueMap::subgroup_order() const { return subgroup_order_of(dom, d1.factors); }

GlueMap trivial_glue(const DiscForm& d1, const DiscForm& d2) {
    return GlueMap{d1, d2, IntMat(d1.rank(), 0), IntMat(d2.rank(), 0)};
}

GlueMap full_glue(const DiscForm& d1, const DiscForm& d2, const FormIsometry& images) {
    if (images.rows() != d2.rank() || images.cols() != d1.rank())
        throw std::invalid_argument("full_glue: image table has wrong shape");
    return GlueMap{d1, d2, IntMat::identity(d1.rank()), images};
}

PrimitiveExtension build_extension(const Lattice& l1, const Lattice& l2, const GlueMap& glue) {
    DiscForm d1 = disc_form(l1), d2 = disc_form(l2);
    if (!forms_match(d1, glue.d1) || !forms_match(d2, glue.d2))
        throw std::invalid_argument("build_extension: glue does not match the discriminant forms");
    validate_glue(d1, d2, glue.dom, glue.img);

    const std::size_t n1 = l1.rank(), n2 = l2.rank(), n = n1 + n2;
    const std::size_t k = glue.dom.cols();
    DiscGroup dg1 = discriminant_group(l1), dg2 = discriminant_group(l2);

    // span of L1 ⊕ L2 and the lifted graph generators, Hermite-reduced
    RatMat b0(n + k, n);
    for (std::size_t i = 0; i < n; ++i) b0(i, i) = 1;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<mpq_class> r1 = lift_element(dg1, column_of(glue.dom, j), n1);
        std::vector<mpq_class> r2 = lift_element(dg2, column_of(glue.img, j), n2);
        for (std::size_t i = 0; i < n1; ++i) b0(n + j, i) = r1[i];
        for (std::size_t i = 0; i < n2; ++i) b0(n + j, n1 + i) = r2[i];
    }
    mpz_class lam = 1;
    for (std::size_t i = 0; i < b0.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            mpz_class l;
            mpz_lcm(l.get_mpz_t(), lam.get_mpz_t(), b0(i, j).get_den().get_mpz_t());
            lam = l;
        }
    IntMat scaled(b0.rows(), n);
    for (std::size_t i = 0; i < b0.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            mpq_class v = b0(i, j) * lam;
            scaled(i, j) = v.get_num();
        }
    HnfResult h = hnf(scaled);
    RatMat basis(n, n);
    mpz_class diag_prod = 1;
    for (std::size_t i = 0; i < n; ++i) {
        diag_prod *= h.H(i, i);
        for (std::size_t j = 0; j < n; ++j) {
            basis(i, j) = mpq_class(h.H(i, j), lam);
            basis(i, j).canonicalize();
        }
    }
    mpz_class lam_n;
    mpz_pow_ui(lam_n.get_mpz_t(), lam.get_mpz_t(), static_cast<unsigned long>(n));
    if (diag_prod == 0 || lam_n % diag_prod != 0)
        throw std::logic_error("build_extension: overlattice index is not integral");
    mpz_class index = lam_n / diag_prod;
    if (index != glue.subgroup_order())
        throw std::logic_error("build_extension: index does not match the glue subgroup order");

    RatMat big(n, n);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) big(i, j) = l1.gram()(i, j);
    for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < n2; ++j) big(n1 + i, n1 + j) = l2.gram()(i, j);
    RatMat gm = basis * big * basis.transpose();
    if (!gm.is_integral()) throw std::invalid_argument("build_extension: non-integral result");
    Lattice m(gm.to_int());
    if (!m.is_even()) throw std::logic_error("build_extension: extension is not even");

    mpz_class lhs = abs(l1.det()) * abs(l2.det());
    mpz_class rhs = index * index * abs(m.det());
    if (lhs != rhs) throw std::logic_error("build_extension: determinant identity failed");

    RatMat id1(n1, n), id2(n2, n);
    for (std::size_t i = 0; i < n1; ++i) id1(i, i) = 1;
    for (std::size_t i = 0; i < n2; ++i) id2(i, n1 + i) = 1;
    auto x1 = solve_left(basis, id1);
    auto x2 = solve_left(basis, id2);
    if (!x1 || !x2 || !x1->is_integral() || !x2->is_integral())
        throw std::logic_error("build_extension: summand embedding failed");

    PrimitiveExtension e;
    e.l1 = l1;
    e.l2 = l2;
    e.glue = GlueMap{d1, d2, reduce_columns(glue.dom, d1.factors), reduce_columns(glue.img, d2.factors)};
    e.m = m;
    e.basis = basis;
    e.embed1 = x1->to_int();
    e.embed2 = x2->to_int();
    e.index = index;
    return e;
}

std::pair<Sublattice, GlueMap> glue_map_of(const Lattice& m, const Sublattice& s) {
    if (s.ambient.gram() != m.gram())
        throw std::invalid_argument("glue_map_of: sublattice does not live in the given lattice");
    if (!s.is_primitive()) throw std::invalid_argument("glue_map_of: non-primitive sublattice");
    Sublattice k = orthogonal_complement(s);
    Lattice ls = s.lattice(), lk = k.lattice();
    DiscForm ds = disc_form(ls), dk = disc_form(lk);
    DiscCoords cs = disc_coords_of(ls), ck = disc_coords_of(lk);

    // project each basis vector of M onto S ⊗ Q and K ⊗ Q and take classes
    const std::size_t n = m.rank(), rs = ls.rank(), rk = lk.rank();
    auto xs = solve_rational(ls.gram(), s.basis * m.gram());
    auto xk = solve_rational(lk.gram(), k.basis * m.gram());
    if (!xs || !xk) throw std::logic_error("glue_map_of: degenerate summand");
    std::vector<std::pair<std::vector<mpz_class>, std::vector<mpz_class>>> cols;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<mpq_class> vs(rs), vk(rk);
        for (std::size_t r = 0; r < rs; ++r) vs[r] = (*xs)(r, i);
        for (std::size_t r = 0; r < rk; ++r) vk[r] = (*xk)(r, i);
        std::vector<mpz_class> c1 = disc_class(ls, cs, vs);
        std::vector<mpz_class> c2 = disc_class(lk, ck, vk);
        bool zero = true;
        for (const auto& v : c1)
            if (v != 0) zero = false;
        for (const auto& v : c2)
            if (v != 0) zero = false;
        if (zero) continue;
        std::pair<std::vector<mpz_class>, std::vector<mpz_class>> col{c1, c2};
        if (std::find(cols.begin(), cols.end(), col) == cols.end()) cols.push_back(std::move(col));
    }
    IntMat domf(cs.factors.size(), cols.size()), imgf(ck.factors.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t i = 0; i < cs.factors.size(); ++i) domf(i, j) = cols[j].first[i];
        for (std::size_t i = 0; i < ck.factors.size(); ++i) imgf(i, j) = cols[j].second[i];
    }
    return {k, GlueMap{ds, dk, domf, imgf}};
}

std::optional<Isometry> extend_isometry(const PrimitiveExtension& e, const IntMat& f) {
    const std::size_t n1 = e.l1.rank(), n2 = e.l2.rank(), n = n1 + n2;
    if (f.rows() != n1 || f.cols() != n1 || f.transpose() * e.l1.gram() * f != e.l1.gram())
        throw std::invalid_argument("extend_isometry: f is not an isometry of L1");

    auto targets = glue_targets(e.glue, e.l1, f);
    if (!targets) return std::nullopt;

    std::optional<IntMat> partner;
    IntMat id2 = IntMat::identity(n2);
    if (glue_compatible(e.glue, induced_form_isometry(e.l2, id2), *targets)) {
        partner = id2;
    } else {
        for (const IntMat& g : orthogonal_candidates(e.l2))
            if (glue_compatible(e.glue, induced_form_isometry(e.l2, g), *targets)) {
                partner = g;
                break;
            }
    }
    if (!partner) return std::nullopt;

    // f ⊕ g in the coordinates of M: rows transform by B·diag(fᵀ,gᵀ)·B⁻¹
    RatMat dt(n, n);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) dt(i, j) = f(j, i);
    for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < n2; ++j) dt(n1 + i, n1 + j) = (*partner)(j, i);
    auto binv = inverse(e.basis);
    if (!binv) throw std::logic_error("extend_isometry: extension basis is singular");
    RatMat gm = (e.basis * dt * (*binv)).transpose();
    if (!gm.is_integral()) throw std::logic_error("extend_isometry: extension left the lattice");
    IntMat out = gm.to_int();
    if (out.transpose() * e.m.gram() * out != e.m.gram())
        throw std::logic_error("extend_isometry: extension does not preserve the form");
    if (e.embed1 * out.transpose() != f.transpose() * e.embed1)
        throw std::logic_error("extend_isometry: extension does not restrict to f");
    return out;
}

ExtensionCheckReport unique_extension_check(const Lattice& h,
                                            const std::optional<CoinvariantData>& data,
                                            const IntMat& g) {
    if (g.rows() != h.rank() || g.cols() != h.rank() || g.transpose() * h.gram() * g != h.gram())
        throw std::invalid_argument("unique_extension_check: g is not an isometry of H");
    ExtensionCheckReport rep;
    if (!data) {
        rep.skipped = true;
        rep.message = "skipped: external data required";
        return rep;
    }
    const Lattice& kk = data->lattice;
    if (!kk.is_negative_definite())
        throw std::invalid_argument("unique_extension_check: supplied Gram is not negative definite");
    if (abs(h.det()) != abs(kk.det()))
        throw std::invalid_argument("unique_extension_check: wrong determinant");
    DiscForm qh = disc_form(h), qk = disc_form(kk);
    if (data->glue_images.rows() != qk.rank() || data->glue_images.cols() != qh.rank())
        throw std::invalid_argument("unique_extension_check: glue image table has wrong shape");
    if (anti_isometries(qh, qk).empty())
        throw std::invalid_argument("unique_extension_check: wrong discriminant form");

    // the natural map O(K) → O(q_K)
    MatrixGroup aut = automorphism_group(kk);
    rep.aut_order = aut.order();
    rep.form_group_order = orthogonal_group_of_form(qk).order();
    std::set<FormIsometry> image;
    std::vector<FormIsometry> induced;
    induced.reserve(aut.elements.size());
    for (const auto& el : aut.elements) {
        induced.push_back(induced_form_isometry(kk, el));
        image.insert(induced.back());
    }
    rep.image_order = image.size();
    rep.surjective = rep.image_order == rep.form_group_order;
    rep.kernel_order = rep.aut_order / rep.image_order;

    rep.no_minus_two_vectors = short_vectors(kk.negated(), 2).empty();

    // one extension of g across the supplied glue, counted over O(K)
    PrimitiveExtension ext = build_extension(h, kk, full_glue(qh, qk, data->glue_images));
    auto targets = glue_targets(ext.glue, h, g);
    mpz_class count = 0;
    if (targets)
        for (const auto& gbar : induced)
            if (glue_compatible(ext.glue, gbar, *targets)) ++count;
    rep.extension_count = count;
    rep.extension_exists = count > 0;
    rep.unique_up_to_kernel = rep.extension_exists && rep.extension_count == rep.kernel_order;
    rep.message = "ok";
    return rep;
}

}  // namespace k3cls
