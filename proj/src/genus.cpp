// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#include "k3cls/genus.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "k3cls/intmat.hpp"

namespace k3cls {

namespace {

// One raw block of the Jordan splitting before per-scale aggregation: either
// a 1x1 block p^scale * unit, or (p = 2 only) a 2x2 even block of determinant
// 4^scale * unit.
struct RawBlock {
    long scale;
    mpq_class unit;
    bool pair_block;
};

// x mod m for a rational x whose denominator is coprime to m.
mpz_class unit_mod(const mpq_class& x, long m) {
    const mpz_class modulus(m);
    mpz_class den_inv;
    if (mpz_invert(den_inv.get_mpz_t(), x.get_den().get_mpz_t(),
                   modulus.get_mpz_t()) == 0)
        throw std::logic_error("unit_mod: denominator not invertible");
    mpz_class r = (x.get_num() % modulus) * den_inv % modulus;
    if (r < 0) r += modulus;
    return r;
}

// Legendre symbol of a p-adic unit x (rational with v_p = 0), odd p.
int legendre_of_unit(const mpq_class& x, const mpz_class& p) {
    int s = mpz_legendre(x.get_num().get_mpz_t(), p.get_mpz_t()) *
            mpz_legendre(x.get_den().get_mpz_t(), p.get_mpz_t());
    assert(s == 1 || s == -1);
    return s;
}

// Minimal p-adic valuation over all nonzero entries of a.
long min_valuation(const RatMat& a, const mpz_class& p) {
    bool seen = false;
    long best = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            mpq_class e = a(i, j);
            if (e == 0) continue;
            long v = detail::padic_valuation(e, p);
            if (!seen || v < best) {
                best = v;
                seen = true;
            }
        }
    if (!seen) throw std::logic_error("min_valuation: zero matrix");
    return best;
}

RatMat drop_rows_cols(const RatMat& a, const std::set<std::size_t>& gone) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (gone.count(i) == 0) keep.push_back(i);
    RatMat b(keep.size(), keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j)
            b(i, j) = a(keep[i], keep[j]);
    return b;
}

std::vector<RawBlock> jordan_blocks(const Lattice& l, const mpz_class& p) {
    std::vector<RawBlock> out;
    RatMat a{l.gram()};
    const mpz_class two(2);
    while (a.rows() > 0) {
        const std::size_t n = a.rows();
        const long v = min_valuation(a, p);
        mpq_class pv = 1;
        for (long t = 0; t < v; ++t) pv *= p;

        // Prefer a diagonal pivot realizing the minimal valuation.
        std::size_t piv = n;
        for (std::size_t i = 0; i < n && piv == n; ++i) {
            mpq_class d = a(i, i);
            if (d != 0 && detail::padic_valuation(d, p) == v) piv = i;
        }

        if (piv == n && p != two) {
            // Odd p: fold a minimal off-diagonal entry onto the diagonal.
            for (std::size_t i = 0; i < n && piv == n; ++i)
                for (std::size_t j = i + 1; j < n && piv == n; ++j) {
                    mpq_class e = a(i, j);
                    if (e == 0 || detail::padic_valuation(e, p) != v) continue;
                    for (std::size_t k = 0; k < n; ++k) {
                        mpq_class s = a(i, k) + a(j, k);
                        a(i, k) = s;
                    }
                    for (std::size_t k = 0; k < n; ++k) {
                        mpq_class s = a(k, i) + a(k, j);
                        a(k, i) = s;
                    }
                    piv = i;
                }
            assert(piv < n);
            mpq_class d = a(piv, piv);
            assert(detail::padic_valuation(d, p) == v);
        }

        if (piv < n) {
            mpq_class d = a(piv, piv);
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t m = 0; m < n; ++m) {
                    if (k == piv || m == piv) continue;
                    mpq_class upd = a(k, m) - a(k, piv) * a(piv, m) / d;
                    a(k, m) = upd;
                }
            mpq_class unit = d / pv;
            out.push_back(RawBlock{v, unit, false});
            a = drop_rows_cols(a, {piv});
            continue;
        }

        // p = 2, no diagonal entry of minimal valuation: split off an even
        // 2x2 block around a minimal off-diagonal entry.
        std::size_t bi = n, bj = n;
        for (std::size_t i = 0; i < n && bi == n; ++i)
            for (std::size_t j = i + 1; j < n && bi == n; ++j) {
                mpq_class e = a(i, j);
                if (e != 0 && detail::padic_valuation(e, p) == v) {
                    bi = i;
                    bj = j;
                }
            }
        assert(bi < n);
        mpq_class b11 = a(bi, bi), b12 = a(bi, bj), b22 = a(bj, bj);
        mpq_class det_b = b11 * b22 - b12 * b12;
        assert(detail::padic_valuation(det_b, p) == 2 * v);
        // Clear the other rows against the block via its inverse.
        for (std::size_t k = 0; k < n; ++k) {
            if (k == bi || k == bj) continue;
            mpq_class ci = (b22 * a(k, bi) - b12 * a(k, bj)) / det_b;
            mpq_class cj = (b11 * a(k, bj) - b12 * a(k, bi)) / det_b;
            for (std::size_t m = 0; m < n; ++m) {
                if (m == bi || m == bj) continue;
                mpq_class upd = a(k, m) - ci * a(bi, m) - cj * a(bj, m);
                a(k, m) = upd;
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (k == bi || k == bj) continue;
            for (std::size_t m : {bi, bj}) {
                a(k, m) = 0;
                a(m, k) = 0;
            }
        }
        mpq_class unit = det_b / (pv * pv);
        out.push_back(RawBlock{v, unit, true});
        a = drop_rows_cols(a, {bi, bj});
    }
    return out;
}

std::vector<GenusConstituent> aggregate(const std::vector<RawBlock>& blocks,
                                        const mpz_class& p) {
    const bool dyadic = (p == 2);
    std::map<long, std::vector<const RawBlock*>> by_scale;
    for (const RawBlock& b : blocks) by_scale[b.scale].push_back(&b);

    std::vector<GenusConstituent> out;
    for (const auto& [scale, blks] : by_scale) {
        GenusConstituent c;
        c.scale_exp = scale;
        if (!dyadic) {
            mpq_class prod = 1;
            for (const RawBlock* b : blks) {
                assert(!b->pair_block);
                prod *= b->unit;
                ++c.rank;
            }
            c.sign = legendre_of_unit(prod, p);
            c.type_two = false;
            c.oddity = 0;
        } else {
            mpz_class prod8 = 1;
            mpz_class trace8 = 0;
            bool has_odd = false;
            for (const RawBlock* b : blks) {
                mpz_class u = unit_mod(b->unit, 8);
                if (b->pair_block) {
                    assert(u == 3 || u == 7);
                    c.rank += 2;
                } else {
                    has_odd = true;
                    trace8 = (trace8 + u) % 8;
                    ++c.rank;
                }
                prod8 = prod8 * u % 8;
            }
            c.sign = (prod8 == 1 || prod8 == 7) ? +1 : -1;
            c.type_two = !has_odd;
            c.oddity = has_odd ? static_cast<int>(trace8.get_si()) : 0;
        }
        out.push_back(c);
    }
    return out;
}

// Oddities realizable by a rank-r odd constituent of the given sign: sums
// mod 8 of r units from {1,3,5,7} whose product is ±1 (sign +) or ±3 (sign -)
// mod 8.  Dynamic programming over (sum mod 8, product mod 8).
std::set<int> realizable_oddities(std::size_t rank, int sign) {
    std::set<std::pair<int, int>> states = {{0, 1}};
    for (std::size_t i = 0; i < rank; ++i) {
        std::set<std::pair<int, int>> next;
        for (const auto& [sum, prod] : states)
            for (int u : {1, 3, 5, 7})
                next.insert({(sum + u) % 8, prod * u % 8});
        states = next;
    }
    std::set<int> sums;
    for (const auto& [sum, prod] : states) {
        bool plus = (prod == 1 || prod == 7);
        if ((sign == +1) == plus) sums.insert(sum);
    }
    return sums;
}

// Canonicalize the 2-adic constituent list in place (ascending scale, all
// ranks > 0).  Compartments are maximal runs of odd constituents at
// consecutive scales.  Two sign-walking moves connect equivalent symbols:
// between constituents one scale apart, and between two odd constituents two
// scales apart when nothing sits in between.  Either move flips both signs
// and adds 4 to the total oddity of every compartment containing at least
// one endpoint (+4 once when both endpoints share a compartment for the
// short move, +4 to each endpoint's compartment for the long one).  States
// whose compartment totals cannot be written as a sum of per-constituent
// oddities consistent with rank and sign do not correspond to forms and are
// discarded.
void canonicalize_dyadic(std::vector<GenusConstituent>& cons) {
    const std::size_t m = cons.size();
    if (m == 0) return;

    // Compartment index per constituent (-1 for type II).
    std::vector<int> comp(m, -1);
    int ncomp = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (cons[i].type_two) continue;
        if (i > 0 && comp[i - 1] >= 0 &&
            cons[i].scale_exp == cons[i - 1].scale_exp + 1)
            comp[i] = comp[i - 1];
        else
            comp[i] = ncomp++;
    }

    struct Move {
        std::size_t i, j;
        std::vector<int> bumped;  // compartments receiving +4
    };
    std::vector<Move> moves;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            long gap = cons[j].scale_exp - cons[i].scale_exp;
            if (gap == 1) {
                std::set<int> cc;
                if (comp[i] >= 0) cc.insert(comp[i]);
                if (comp[j] >= 0) cc.insert(comp[j]);
                moves.push_back({i, j, {cc.begin(), cc.end()}});
            } else if (gap == 2 && comp[i] >= 0 && comp[j] >= 0) {
                // Legal only across a rank-0 scale (otherwise j - i > 1
                // here) and only between odd constituents.
                moves.push_back({i, j, {comp[i], comp[j]}});
            }
        }

    using State = std::pair<std::vector<int>, std::vector<int>>;
    auto valid = [&](const State& st) {
        std::vector<std::set<int>> totals(ncomp, std::set<int>{0});
        for (std::size_t i = 0; i < m; ++i) {
            if (comp[i] < 0) continue;
            std::set<int> grown;
            for (int a : realizable_oddities(cons[i].rank, st.first[i]))
                for (int b : totals[comp[i]]) grown.insert((a + b) % 8);
            totals[comp[i]] = grown;
        }
        for (int cc = 0; cc < ncomp; ++cc)
            if (totals[cc].count(st.second[cc]) == 0) return false;
        return true;
    };

    std::vector<int> signs0(m);
    std::vector<int> odd0(ncomp, 0);
    for (std::size_t i = 0; i < m; ++i) {
        signs0[i] = cons[i].sign;
        if (comp[i] >= 0)
            odd0[comp[i]] = (odd0[comp[i]] + cons[i].oddity) % 8;
    }
    std::set<State> seen = {{signs0, odd0}};
    std::vector<State> queue = {{signs0, odd0}};
    while (!queue.empty()) {
        State st = queue.back();
        queue.pop_back();
        for (const Move& mv : moves) {
            State nx = st;
            nx.first[mv.i] = -nx.first[mv.i];
            nx.first[mv.j] = -nx.first[mv.j];
            for (int cc : mv.bumped) nx.second[cc] = (nx.second[cc] + 4) % 8;
            if (valid(nx) && seen.insert(nx).second) queue.push_back(nx);
        }
    }

    auto key = [](const State& st) {
        int minus = 0;
        for (int s : st.first)
            if (s < 0) ++minus;
        return std::make_tuple(minus, st.first, st.second);
    };
    const State* best = nullptr;
    for (const State& st : seen)
        if (best == nullptr || key(st) < key(*best)) best = &st;

    // Write back signs and distribute each compartment's oddity as the
    // lexicographically smallest realizable assignment.
    for (std::size_t i = 0; i < m; ++i) cons[i].sign = best->first[i];
    for (int cc = 0; cc < ncomp; ++cc) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < m; ++i)
            if (comp[i] == cc) members.push_back(i);
        std::vector<std::set<int>> real(members.size());
        for (std::size_t t = 0; t < members.size(); ++t)
            real[t] = realizable_oddities(cons[members[t]].rank,
                                          cons[members[t]].sign);
        // suffix[t] = sums achievable by members t..end
        std::vector<std::set<int>> suffix(members.size() + 1);
        suffix[members.size()] = {0};
        for (std::size_t t = members.size(); t-- > 0;)
            for (int a : real[t])
                for (int b : suffix[t + 1]) suffix[t].insert((a + b) % 8);
        int remaining = best->second[cc];
        if (suffix[0].count(remaining) == 0)
            throw std::logic_error("canonicalize: unrealizable oddity");
        for (std::size_t t = 0; t < members.size(); ++t) {
            for (int a : real[t]) {
                int rest = ((remaining - a) % 8 + 8) % 8;
                if (suffix[t + 1].count(rest) != 0) {
                    cons[members[t]].oddity = a;
                    remaining = rest;
                    break;
                }
            }
        }
    }
}

std::vector<mpz_class> prime_divisors(mpz_class n) {
    std::vector<mpz_class> primes;
    n = abs(n);
    for (mpz_class p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        primes.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) primes.push_back(n);
    return primes;
}

void require_even(const Lattice& l, const char* who) {
    if (!l.is_even())
        throw std::invalid_argument(std::string(who) + ": lattice must be even");
}

}  // namespace

std::vector<GenusConstituent> padic_jordan(const Lattice& l,
                                           const mpz_class& p) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
        throw std::invalid_argument("padic_jordan: p must be prime");
    require_even(l, "padic_jordan");
    if (l.rank() == 0) return {};
    l.det();  // rejects degenerate lattices
    return aggregate(jordan_blocks(l, p), p);
}

GenusSymbol genus_symbol(const Lattice& l) {
    require_even(l, "genus_symbol");
    GenusSymbol g;
    g.signature = l.signature();
    if (l.rank() == 0) return g;
    const mpz_class d = l.det();
    std::vector<mpz_class> primes = prime_divisors(2 * d);
    std::sort(primes.begin(), primes.end());
    for (const mpz_class& p : primes) {
        LocalSymbol loc;
        loc.p = p;
        loc.constituents = padic_jordan(l, p);
        if (p == 2) canonicalize_dyadic(loc.constituents);
        g.locals.push_back(std::move(loc));
    }
    return g;
}

std::string GenusSymbol::to_string() const {
    std::string out;
    for (const LocalSymbol& loc : locals)
        for (const GenusConstituent& c : loc.constituents) {
            if (c.scale_exp == 0 || c.rank == 0) continue;
            mpz_class scale = 1;
            for (long t = 0; t < c.scale_exp; ++t) scale *= loc.p;
            if (!out.empty()) out += ' ';
            out += scale.get_str();
            out += "^{";
            out += (c.sign > 0 ? '+' : '-');
            out += std::to_string(c.rank);
            out += '}';
            if (loc.p == 2) {
                if (c.type_two)
                    out += "_II";
                else
                    out += "_" + std::to_string(c.oddity);
            }
        }
    return out;
}

bool same_genus(const Lattice& l1, const Lattice& l2) {
    require_even(l1, "same_genus");
    require_even(l2, "same_genus");
    if (l1.signature() != l2.signature()) return false;
    return genus_symbol(l1).to_string() == genus_symbol(l2).to_string();
}

}  // namespace k3cls
