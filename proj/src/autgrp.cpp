// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#include "k3cls/autgrp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace k3cls {

namespace {

// Signed short-vector table with per-vector Gram images for O(1) pairings.
struct VectorTable {
    std::vector<std::vector<mpz_class>> vecs;   // both signs, canonically sorted
    std::vector<std::vector<mpz_class>> gvecs;  // G * v for each vector
    std::vector<mpz_class> norms;

    static VectorTable build(const Lattice& l, const mpz_class& bound) {
        VectorTable t;
        auto reps = short_vectors(l, bound);
        t.vecs.reserve(2 * reps.size());
        for (const auto& sv : reps) {
            t.vecs.push_back(sv.coords);
            std::vector<mpz_class> neg(sv.coords.size());
            for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -sv.coords[j];
            t.vecs.push_back(std::move(neg));
        }
        std::sort(t.vecs.begin(), t.vecs.end());
        const std::size_t n = l.rank();
        t.gvecs.resize(t.vecs.size());
        t.norms.resize(t.vecs.size());
        for (std::size_t i = 0; i < t.vecs.size(); ++i) {
            t.gvecs[i].assign(n, 0);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) t.gvecs[i][a] += l.gram()(a, b) * t.vecs[i][b];
            mpz_class nrm = 0;
            for (std::size_t a = 0; a < n; ++a) nrm += t.vecs[i][a] * t.gvecs[i][a];
            t.norms[i] = nrm;
        }
        return t;
    }

    mpz_class pair(std::size_t i, const std::vector<mpz_class>& w) const {
        mpz_class s = 0;
        for (std::size_t a = 0; a < w.size(); ++a) s += gvecs[i][a] * w[a];
        return s;
    }
};

// Multiset of pairings of vector i against the whole table — the
// isometry-invariant fingerprint used to filter candidate images.
std::vector<mpz_class> profile_of(const VectorTable& t, std::size_t i) {
    std::vector<mpz_class> p;
    p.reserve(t.vecs.size());
    for (const auto& w : t.vecs) p.push_back(t.pair(i, w));
    std::sort(p.begin(), p.end());
    return p;
}

std::vector<mpz_class> profile_of_vector(const VectorTable& t, const std::vector<mpz_class>& gv) {
    std::vector<mpz_class> p;
    p.reserve(t.vecs.size());
    for (const auto& w : t.vecs) {
        mpz_class s = 0;
        for (std::size_t a = 0; a < w.size(); ++a) s += gv[a] * w[a];
        p.push_back(s);
    }
    std::sort(p.begin(), p.end());
    return p;
}

// Backtracking core: find integer matrices whose columns are picked from
// `table2` so that the pairwise Gram products reproduce `gram1` exactly.
// Candidate lists are per-column; `all` toggles full enumeration vs first hit.
struct MapSearch {
    const IntMat& gram1;
    const VectorTable& table2;
    std::vector<std::vector<std::size_t>> candidates;  // per column
    std::vector<std::size_t> chosen;
    std::vector<IntMat> found;
    bool all = true;
    std::size_t cap = kEnumerationCap;

    bool compatible(std::size_t col, std::size_t cand) const {
        for (std::size_t j = 0; j < col; ++j) {
            if (table2.pair(chosen[j], table2.vecs[cand]) != gram1(j, col)) return false;
        }
        return true;
    }

    bool run(std::size_t col) {
        const std::size_t n = gram1.rows();
        if (col == n) {
            IntMat g(n, n);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t i = 0; i < n; ++i) g(i, j) = table2.vecs[chosen[j]][i];
            found.push_back(std::move(g));
            if (found.size() > cap) throw std::length_error("automorphism search: enumeration cap exceeded");
            return !all;  // stop at first hit when not enumerating all
        }
        for (std::size_t cand : candidates[col]) {
            if (table2.norms[cand] != gram1(col, col)) continue;
            if (!compatible(col, cand)) continue;
            chosen[col] = cand;
            if (run(col + 1)) return true;
        }
        return false;
    }
};

std::vector<IntMat> greedy_generators(const std::vector<IntMat>& elements) {
    if (elements.empty()) return {};
    const std::size_t n = elements.front().rows();
    std::set<IntMat> closure;
    closure.insert(IntMat::identity(n));
    std::vector<IntMat> gens;
    for (const auto& e : elements) {
        if (closure.count(e)) continue;
        gens.push_back(e);
        // re-close under the enlarged generating set
        std::vector<IntMat> frontier(closure.begin(), closure.end());
        closure.clear();
        closure.insert(IntMat::identity(n));
        std::vector<IntMat> queue = {IntMat::identity(n)};
        while (!queue.empty()) {
            IntMat cur = queue.back();
            queue.pop_back();
            for (const auto& g : gens) {
                IntMat next = cur * g;
                if (closure.insert(next).second) queue.push_back(next);
            }
        }
        (void)frontier;
        if (closure.size() == elements.size()) break;
    }
    return gens;
}

}  // namespace

bool MatrixGroup::contains(const IntMat& g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
}

MatrixGroup group_from_elements(std::vector<IntMat> elements) {
    if (elements.empty()) throw std::invalid_argument("group_from_elements: empty element list");
    const std::size_t n = elements.front().rows();
    std::set<IntMat> closure(elements.begin(), elements.end());
    closure.insert(IntMat::identity(n));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<IntMat> cur(closure.begin(), closure.end());
        for (const auto& a : cur)
            for (const auto& b : cur) {
                if (closure.insert(a * b).second) grew = true;
                if (closure.size() > kEnumerationCap)
                    throw std::length_error("group closure: enumeration cap exceeded");
            }
    }
    MatrixGroup g;
    g.elements.assign(closure.begin(), closure.end());
    g.generators = greedy_generators(g.elements);
    return g;
}

MatrixGroup automorphism_group(const Lattice& l) {
    if (l.rank() == 0) {
        MatrixGroup g;
        g.elements.push_back(IntMat(0, 0));
        return g;
    }
    if (!l.is_definite()) throw std::domain_error("automorphism_group: lattice must be definite");
    Lattice pos = l.is_negative_definite() ? l.negated() : l;

    mpz_class bound = 0;
    for (std::size_t i = 0; i < pos.rank(); ++i) bound = std::max(bound, mpz_class(pos.gram()(i, i)));
    VectorTable table = VectorTable::build(pos, bound);

    const std::size_t n = pos.rank();
    // candidate lists per basis vector: equal norm and equal pairing profile
    std::vector<std::vector<mpz_class>> basis_profiles(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<mpz_class> gv(n);
        for (std::size_t a = 0; a < n; ++a) gv[a] = pos.gram()(a, i);
        basis_profiles[i] = profile_of_vector(table, gv);
    }
    std::vector<std::vector<mpz_class>> vec_profiles(table.vecs.size());
    for (std::size_t v = 0; v < table.vecs.size(); ++v) vec_profiles[v] = profile_of(table, v);

    MapSearch search{pos.gram(), table, {}, std::vector<std::size_t>(n), {}, true, kEnumerationCap};
    search.candidates.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t v = 0; v < table.vecs.size(); ++v)
            if (table.norms[v] == pos.gram()(i, i) && vec_profiles[v] == basis_profiles[i])
                search.candidates[i].push_back(v);
    search.run(0);

    MatrixGroup g;
    g.elements = std::move(search.found);
    std::sort(g.elements.begin(), g.elements.end());
    g.generators = greedy_generators(g.elements);
    return g;
}

MatrixGroup special_subgroup(const MatrixGroup& g) {
    MatrixGroup s;
    for (const auto& e : g.elements)
        if (det(e) == 1) s.elements.push_back(e);
    std::sort(s.elements.begin(), s.elements.end());
    s.generators = greedy_generators(s.elements);
    return s;
}

std::optional<Isometry> is_isometric(const Lattice& l1, const Lattice& l2) {
    if (l1.rank() != l2.rank()) throw std::invalid_argument("is_isometric: rank mismatch");
    if (l1.rank() == 0) return IntMat(0, 0);
    if (!l1.is_definite() || !l2.is_definite())
        throw std::invalid_argument("is_isometric: lattices must be definite");
    if (l1.is_positive_definite() != l2.is_positive_definite())
        throw std::invalid_argument("is_isometric: sign mismatch");
    if (l1.gram() == l2.gram()) return IntMat::identity(l1.rank());
    Lattice a = l1.is_negative_definite() ? l1.negated() : l1;
    Lattice b = l2.is_negative_definite() ? l2.negated() : l2;
    if (a.det() != b.det()) return std::nullopt;

    mpz_class bound = 0;
    for (std::size_t i = 0; i < a.rank(); ++i) {
        bound = std::max(bound, mpz_class(a.gram()(i, i)));
        bound = std::max(bound, mpz_class(b.gram()(i, i)));
    }
    VectorTable ta = VectorTable::build(a, bound);
    VectorTable tb = VectorTable::build(b, bound);
    if (ta.vecs.size() != tb.vecs.size()) return std::nullopt;
    {
        // per-norm counts must agree
        std::vector<mpz_class> na = ta.norms, nb = tb.norms;
        std::sort(na.begin(), na.end());
        std::sort(nb.begin(), nb.end());
        if (na != nb) return std::nullopt;
    }

    const std::size_t n = a.rank();
    std::vector<std::vector<mpz_class>> vec_profiles(tb.vecs.size());
    for (std::size_t v = 0; v < tb.vecs.size(); ++v) vec_profiles[v] = profile_of(tb, v);
    MapSearch search{a.gram(), tb, {}, std::vector<std::size_t>(n), {}, false, kEnumerationCap};
    search.candidates.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<mpz_class> gv(n);
        for (std::size_t t = 0; t < n; ++t) gv[t] = a.gram()(t, i);
        auto prof = profile_of_vector(ta, gv);
        for (std::size_t v = 0; v < tb.vecs.size(); ++v)
            if (tb.norms[v] == a.gram()(i, i) && vec_profiles[v] == prof)
                search.candidates[i].push_back(v);
        if (search.candidates[i].empty()) return std::nullopt;
    }
    if (!search.run(0)) return std::nullopt;
    return search.found.front();
}

std::size_t isometry_order(const IntMat& g) {
    if (!g.is_square()) throw std::invalid_argument("isometry_order: matrix must be square");
    IntMat p = g;
    std::size_t k = 1;
    while (!p.is_identity()) {
        p = p * g;
        ++k;
        if (k > kEnumerationCap) throw std::length_error("isometry_order: order exceeds cap");
    }
    return k;
}

namespace {

using SubgroupKey = std::vector<std::size_t>;  // sorted element indices

struct GroupIndex {
    const MatrixGroup& g;
    std::map<IntMat, std::size_t> index;

    explicit GroupIndex(const MatrixGroup& grp) : g(grp) {
        for (std::size_t i = 0; i < g.elements.size(); ++i) index[g.elements[i]] = i;
    }
    std::size_t of(const IntMat& m) const {
        auto it = index.find(m);
        if (it == index.end()) throw std::logic_error("group index: element not in group (group not closed?)");
        return it->second;
    }
};

SubgroupKey cyclic_key(const GroupIndex& gi, const IntMat& gen) {
    SubgroupKey k;
    IntMat p = IntMat::identity(gen.rows());
    do {
        k.push_back(gi.of(p));
        p = p * gen;
    } while (!p.is_identity());
    std::sort(k.begin(), k.end());
    return k;
}

}  // namespace

std::vector<CyclicClass> cyclic_subgroup_classes(const MatrixGroup& g) {
    if (g.elements.empty()) throw std::invalid_argument("cyclic_subgroup_classes: group has no elements");
    GroupIndex gi(g);
    const std::size_t n = g.elements.front().rows();

    // all nontrivial cyclic subgroups, keyed by their element-index sets
    std::map<SubgroupKey, std::size_t> subgroup_order;
    for (const auto& e : g.elements) {
        if (e.is_identity()) continue;
        SubgroupKey k = cyclic_key(gi, e);
        subgroup_order[k] = k.size();
    }

    // inverses for conjugation
    std::map<std::size_t, IntMat> inverse_of;
    for (const auto& h : g.elements) {
        for (const auto& w : g.elements) {
            if ((h * w).is_identity()) {
                inverse_of[gi.of(h)] = w;
                break;
            }
        }
    }

    std::set<SubgroupKey> seen;
    std::vector<CyclicClass> classes;
    for (const auto& [key, order] : subgroup_order) {
        if (seen.count(key)) continue;
        // orbit of this subgroup under conjugation
        std::set<SubgroupKey> orbit;
        for (const auto& h : g.elements) {
            const IntMat& hinv = inverse_of[gi.of(h)];
            SubgroupKey conj;
            conj.reserve(key.size());
            for (std::size_t idx : key) conj.push_back(gi.of(h * g.elements[idx] * hinv));
            std::sort(conj.begin(), conj.end());
            orbit.insert(conj);
        }
        for (const auto& k : orbit) seen.insert(k);
        // canonical representative: smallest key in the orbit; its generator:
        // smallest element of full order within the subgroup
        const SubgroupKey& rep = *orbit.begin();
        IntMat gen = IntMat::identity(n);
        bool have = false;
        for (std::size_t idx : rep) {
            const IntMat& cand = g.elements[idx];
            if (cand.is_identity()) continue;
            if (isometry_order(cand) == order && (!have || cand < gen)) {
                gen = cand;
                have = true;
            }
        }
        classes.push_back({gen, order, orbit.size()});
    }
    std::sort(classes.begin(), classes.end(), [](const CyclicClass& a, const CyclicClass& b) {
        if (a.order != b.order) return a.order < b.order;
        return a.generator < b.generator;
    });
    return classes;
}

std::vector<CyclicClass> maximal_cyclic_classes(const MatrixGroup& g) {
    GroupIndex gi(g);
    // collect every cyclic subgroup's key once
    std::set<SubgroupKey> all;
    for (const auto& e : g.elements) {
        if (e.is_identity()) continue;
        all.insert(cyclic_key(gi, e));
    }
    auto contained = [](const SubgroupKey& a, const SubgroupKey& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    std::vector<CyclicClass> out;
    for (const auto& c : cyclic_subgroup_classes(g)) {
        SubgroupKey key = cyclic_key(gi, c.generator);
        bool maximal = true;
        for (const auto& other : all) {
            if (other.size() > key.size() && contained(key, other)) {
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(c);
    }
    return out;
}

std::optional<std::size_t> dihedral_recognition(const MatrixGroup& g) {
    const std::size_t order = g.order();
    if (order < 2 || order % 2 != 0) return std::nullopt;
    const std::size_t k = order / 2;
    GroupIndex gi(g);

    // candidate index-2 cyclic subgroups
    std::vector<SubgroupKey> subgroups;
    if (k == 1) {
        subgroups.push_back({gi.of(IntMat::identity(g.elements.front().rows()))});
    } else {
        std::set<SubgroupKey> uniq;
        for (const auto& e : g.elements) {
            if (e.is_identity()) continue;
            if (isometry_order(e) == k) uniq.insert(cyclic_key(gi, e));
        }
        subgroups.assign(uniq.begin(), uniq.end());
    }

    for (const auto& key : subgroups) {
        std::set<std::size_t> inside(key.begin(), key.end());
        for (const auto& t : g.elements) {
            if (t.is_identity()) continue;
            if (inside.count(gi.of(t))) continue;
            if (!(t * t).is_identity()) continue;
            bool inverts = true;
            for (std::size_t idx : key) {
                const IntMat& c = g.elements[idx];
                // t c t⁻¹ = c⁻¹ with t an involution: t c t c must be identity
                if (!(t * c * t * c).is_identity()) {
                    inverts = false;
                    break;
                }
            }
            if (inverts) return k;
        }
    }
    return std::nullopt;
}

}  // namespace k3cls
