// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#include "k3cls/intmat.hpp"

#include <sstream>

namespace k3cls {

IntMat::IntMat(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    e_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("IntMat: ragged initializer");
        for (long v : r) e_.emplace_back(v);
    }
}

IntMat IntMat::identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMat: dimension mismatch in product");
    IntMat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpz_class& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

IntMat IntMat::operator+(const IntMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMat: dimension mismatch in sum");
    IntMat r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

IntMat IntMat::operator-(const IntMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMat: dimension mismatch in difference");
    IntMat r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

IntMat IntMat::operator-() const {
    IntMat r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
    return r;
}

IntMat IntMat::transpose() const {
    IntMat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

bool IntMat::operator<(const IntMat& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] != o.e_[i]) return e_[i] < o.e_[i];
    return false;
}

bool IntMat::is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool IntMat::is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool IntMat::is_zero() const {
    for (const auto& v : e_)
        if (v != 0) return false;
    return true;
}

IntMat IntMat::row_slice(std::size_t r0, std::size_t r1) const {
    IntMat r(r1 - r0, cols_);
    for (std::size_t i = r0; i < r1; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(i - r0, j) = (*this)(i, j);
    return r;
}

std::vector<mpz_class> IntMat::row(std::size_t i) const {
    std::vector<mpz_class> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
}

std::string IntMat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

RatMat::RatMat(const IntMat& m) : rows_(m.rows()), cols_(m.cols()), e_(rows_ * cols_) {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) e_[i * cols_ + j] = m(i, j);
}

RatMat::RatMat(std::initializer_list<std::initializer_list<mpq_class>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    e_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("RatMat: ragged initializer");
        for (const mpq_class& v : r) e_.push_back(v);
    }
}

RatMat RatMat::identity(std::size_t n) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMat RatMat::operator*(const RatMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("RatMat: dimension mismatch in product");
    RatMat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpq_class& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                r(i, j) += a * o(k, j);
                r(i, j).canonicalize();
            }
        }
    return r;
}

RatMat RatMat::operator+(const RatMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("RatMat: dimension mismatch in sum");
    RatMat r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

RatMat RatMat::operator-(const RatMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("RatMat: dimension mismatch in difference");
    RatMat r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

RatMat RatMat::transpose() const {
    RatMat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

bool RatMat::is_integral() const {
    for (const auto& v : e_)
        if (v.get_den() != 1) return false;
    return true;
}

IntMat RatMat::to_int() const {
    if (!is_integral()) throw std::domain_error("RatMat: matrix is not integral");
    IntMat r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j).get_num();
    return r;
}

std::string RatMat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

mpz_class det(const IntMat& m) {
    if (!m.is_square()) throw std::invalid_argument("det: matrix must be square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMat a = m;
    mpz_class sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

mpz_class detail::fdiv_q(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

long detail::padic_valuation(const mpq_class& x, const mpz_class& p) {
    if (x == 0) throw std::domain_error("padic_valuation: zero has no finite valuation");
    mpz_class t = x.get_num();
    long v = 0;
    while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    t = x.get_den();
    while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
        --v;
    }
    return v;
}

namespace {

void add_row_multiple(IntMat& m, std::size_t dst, std::size_t src, const mpz_class& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += c * m(src, j);
}

void swap_rows(IntMat& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void negate_row(IntMat& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

// Unimodular 2x2 row transform combining rows a and b so that column c holds
// gcd at row a and zero at row b.
void gcd_rows(IntMat& h, IntMat& u, std::size_t a, std::size_t b, std::size_t c) {
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(a, c).get_mpz_t(), h(b, c).get_mpz_t());
    mpz_class p, q;
    mpz_divexact(p.get_mpz_t(), h(a, c).get_mpz_t(), g.get_mpz_t());
    mpz_divexact(q.get_mpz_t(), h(b, c).get_mpz_t(), g.get_mpz_t());
    // rows (a,b) <- (s*a + t*b, -q*a + p*b); the transform has determinant 1
    for (IntMat* m : {&h, &u}) {
        for (std::size_t j = 0; j < m->cols(); ++j) {
            mpz_class ra = s * (*m)(a, j) + t * (*m)(b, j);
            mpz_class rb = -q * (*m)(a, j) + p * (*m)(b, j);
            (*m)(a, j) = ra;
            (*m)(b, j) = rb;
        }
    }
}

}  // namespace

HnfResult hnf(const IntMat& m) {
    IntMat h = m;
    IntMat u = IntMat::identity(m.rows());
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && h(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        swap_rows(h, r, piv);
        swap_rows(u, r, piv);
        for (std::size_t i = r + 1; i < m.rows(); ++i)
            if (h(i, c) != 0) gcd_rows(h, u, r, i, c);
        if (h(r, c) < 0) {
            negate_row(h, r);
            negate_row(u, r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            mpz_class q = detail::fdiv_q(h(i, c), h(r, c));
            if (q != 0) {
                add_row_multiple(h, i, r, -q);
                add_row_multiple(u, i, r, -q);
            }
        }
        ++r;
    }
    return {h, u};
}

namespace {

void add_col_multiple(IntMat& m, std::size_t dst, std::size_t src, const mpz_class& c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += c * m(i, src);
}

void swap_cols(IntMat& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void gcd_cols(IntMat& s, IntMat& v, std::size_t a, std::size_t b, std::size_t r) {
    mpz_class g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), s(r, a).get_mpz_t(), s(r, b).get_mpz_t());
    mpz_class p, q;
    mpz_divexact(p.get_mpz_t(), s(r, a).get_mpz_t(), g.get_mpz_t());
    mpz_divexact(q.get_mpz_t(), s(r, b).get_mpz_t(), g.get_mpz_t());
    for (IntMat* m : {&s, &v}) {
        for (std::size_t i = 0; i < m->rows(); ++i) {
            mpz_class ca = x * (*m)(i, a) + y * (*m)(i, b);
            mpz_class cb = -q * (*m)(i, a) + p * (*m)(i, b);
            (*m)(i, a) = ca;
            (*m)(i, b) = cb;
        }
    }
}

}  // namespace

SnfResult snf(const IntMat& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMat s = m;
    IntMat u = IntMat::identity(rows);
    IntMat v = IntMat::identity(cols);
    const std::size_t n = std::min(rows, cols);
    for (std::size_t t = 0; t < n; ++t) {
        // move a nonzero entry of the trailing submatrix to (t, t)
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows && pi == rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (s(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == rows) break;  // remaining submatrix is zero
        swap_rows(s, t, pi);
        swap_rows(u, t, pi);
        swap_cols(s, t, pj);
        swap_cols(v, t, pj);
        // Alternate row/column elimination until the pivot cross is clear.
        // Divisible entries are cleared by plain subtraction, which leaves the
        // pivot row/column untouched; the gcd transform (which may mix the
        // other row back into the pivot row) is reserved for entries that
        // strictly shrink the pivot, so the loop terminates.
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (s(i, t) == 0) continue;
                if (s(i, t) % s(t, t) == 0) {
                    mpz_class q;
                    mpz_divexact(q.get_mpz_t(), s(i, t).get_mpz_t(), s(t, t).get_mpz_t());
                    add_row_multiple(s, i, t, -q);
                    add_row_multiple(u, i, t, -q);
                } else {
                    gcd_rows(s, u, t, i, t);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (s(t, j) == 0) continue;
                if (s(t, j) % s(t, t) == 0) {
                    mpz_class q;
                    mpz_divexact(q.get_mpz_t(), s(t, j).get_mpz_t(), s(t, t).get_mpz_t());
                    add_col_multiple(s, j, t, -q);
                    add_col_multiple(v, j, t, -q);
                } else {
                    gcd_cols(s, v, t, j, t);
                    dirty = true;
                }
            }
        }
        // enforce divisibility of the trailing submatrix by the pivot
        bool redo = false;
        for (std::size_t i = t + 1; i < rows && !redo; ++i)
            for (std::size_t j = t + 1; j < cols && !redo; ++j)
                if (s(i, j) % s(t, t) != 0) {
                    add_row_multiple(s, t, i, 1);
                    add_row_multiple(u, t, i, 1);
                    redo = true;
                }
        if (redo) {
            --t;  // rerun elimination at this pivot
            continue;
        }
        if (s(t, t) < 0) {
            negate_row(s, t);
            negate_row(u, t);
        }
    }
    return {s, u, v};
}

IntMat kernel_saturated(const IntMat& m) {
    // U M V = S; for zero diagonal entries d_i the columns V e_i span the
    // kernel, and they extend to a basis of Z^cols, so the span is saturated.
    SnfResult r = snf(m);
    const std::size_t n = m.cols();
    std::vector<std::size_t> zero_cols;
    for (std::size_t j = 0; j < n; ++j) {
        bool dz = j >= std::min(m.rows(), n) || r.S(j, j) == 0;
        if (dz) zero_cols.push_back(j);
    }
    IntMat k(zero_cols.size(), n);
    for (std::size_t i = 0; i < zero_cols.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) k(i, j) = r.V(j, zero_cols[i]);
    return k;
}

std::optional<RatMat> solve_rational(const IntMat& a, const RatMat& b) {
    if (!a.is_square()) throw std::invalid_argument("solve_rational: matrix must be square");
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_rational: dimension mismatch");
    const std::size_t n = a.rows(), w = b.cols();
    RatMat aug(n, n + w);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < w; ++j) aug(i, n + j) = b(i, j);
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && aug(p, k) == 0) ++p;
        if (p == n) return std::nullopt;  // singular
        if (p != k)
            for (std::size_t j = 0; j < n + w; ++j) std::swap(aug(k, j), aug(p, j));
        mpq_class piv = aug(k, k);
        for (std::size_t j = k; j < n + w; ++j) aug(k, j) /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || aug(i, k) == 0) continue;
            mpq_class c = aug(i, k);
            for (std::size_t j = k; j < n + w; ++j) aug(i, j) -= c * aug(k, j);
        }
    }
    RatMat x(n, w);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < w; ++j) x(i, j) = aug(i, n + j);
    return x;
}

std::optional<RatMat> solve_rational(const IntMat& a, const IntMat& b) {
    return solve_rational(a, RatMat(b));
}

std::optional<RatMat> inverse(const RatMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix must be square");
    const std::size_t n = a.rows();
    RatMat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && aug(p, k) == 0) ++p;
        if (p == n) return std::nullopt;
        if (p != k)
            for (std::size_t j = 0; j < 2 * n; ++j) std::swap(aug(k, j), aug(p, j));
        mpq_class piv = aug(k, k);
        for (std::size_t j = k; j < 2 * n; ++j) aug(k, j) /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || aug(i, k) == 0) continue;
            mpq_class c = aug(i, k);
            for (std::size_t j = k; j < 2 * n; ++j) aug(i, j) -= c * aug(k, j);
        }
    }
    RatMat x(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) x(i, j) = aug(i, n + j);
    return x;
}

std::optional<RatMat> solve_left(const RatMat& b, const RatMat& c) {
    // X B = C  <=>  Bᵀ Xᵀ = Cᵀ; eliminate on the rectangular augmented system.
    if (b.cols() != c.cols()) throw std::invalid_argument("solve_left: dimension mismatch");
    const std::size_t k = b.rows(), n = b.cols(), m = c.rows();
    RatMat bt = b.transpose();  // n x k
    RatMat ct = c.transpose();  // n x m
    RatMat aug(n, k + m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug(i, j) = bt(i, j);
        for (std::size_t j = 0; j < m; ++j) aug(i, k + j) = ct(i, j);
    }
    std::size_t r = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < k && r < n; ++col) {
        std::size_t p = r;
        while (p < n && aug(p, col) == 0) ++p;
        if (p == n) continue;
        if (p != r)
            for (std::size_t j = 0; j < k + m; ++j) std::swap(aug(r, j), aug(p, j));
        mpq_class piv = aug(r, col);
        for (std::size_t j = col; j < k + m; ++j) aug(r, j) /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || aug(i, col) == 0) continue;
            mpq_class f = aug(i, col);
            for (std::size_t j = col; j < k + m; ++j) aug(i, j) -= f * aug(r, j);
        }
        pivot_col.push_back(col);
        ++r;
    }
    if (pivot_col.size() != k) throw std::invalid_argument("solve_left: B does not have full row rank");
    // consistency: rows below the pivots must have zero right-hand side
    for (std::size_t i = r; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (aug(i, k + j) != 0) return std::nullopt;
    RatMat x(m, k);
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t j = 0; j < m; ++j) x(j, pivot_col[t]) = aug(t, k + j);
    return x;
}

}  // namespace k3cls
