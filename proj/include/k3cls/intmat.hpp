// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#ifndef K3CLS_INTMAT_HPP
#define K3CLS_INTMAT_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace k3cls {

// Dense matrix of arbitrary-precision integers.  All arithmetic is exact;
// there is deliberately no fixed-width fast path.
class IntMat {
public:
    IntMat() = default;
    IntMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}
    IntMat(std::initializer_list<std::initializer_list<long>> rows);

    static IntMat identity(std::size_t n);
    static IntMat zero(std::size_t rows, std::size_t cols) { return IntMat(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    mpz_class& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const mpz_class& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    IntMat operator*(const IntMat& o) const;
    IntMat operator+(const IntMat& o) const;
    IntMat operator-(const IntMat& o) const;
    IntMat operator-() const;
    IntMat transpose() const;
    bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
    bool operator!=(const IntMat& o) const { return !(*this == o); }
    bool operator<(const IntMat& o) const;  // lexicographic; total order for canonical choices

    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const;
    bool is_identity() const;
    bool is_zero() const;

    // rows [r0, r1) as a new matrix
    IntMat row_slice(std::size_t r0, std::size_t r1) const;
    std::vector<mpz_class> row(std::size_t i) const;

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> e_;
};

// Dense matrix of exact rationals (canonicalized by GMP: reduced, positive
// denominators).
class RatMat {
public:
    RatMat() = default;
    RatMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}
    explicit RatMat(const IntMat& m);
    RatMat(std::initializer_list<std::initializer_list<mpq_class>> rows);

    static RatMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    mpq_class& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const mpq_class& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    RatMat operator*(const RatMat& o) const;
    RatMat operator+(const RatMat& o) const;
    RatMat operator-(const RatMat& o) const;
    RatMat transpose() const;
    bool operator==(const RatMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
    bool operator!=(const RatMat& o) const { return !(*this == o); }

    bool is_integral() const;
    IntMat to_int() const;  // throws if not integral

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpq_class> e_;
};

struct HnfResult {
    IntMat H;  // row Hermite normal form: echelon, pivots positive, reduced above
    IntMat U;  // unimodular with U * M = H
};

struct SnfResult {
    IntMat S;  // diagonal, nonnegative, d_i | d_{i+1}
    IntMat U;  // unimodular
    IntMat V;  // unimodular, U * M * V = S
};

// Exact determinant by fraction-free Bareiss elimination.
mpz_class det(const IntMat& m);

// Row-style Hermite normal form.
HnfResult hnf(const IntMat& m);

// Smith normal form.
SnfResult snf(const IntMat& m);

// Basis (as rows) of the saturated integer kernel {v : M vᵀ = 0}.
IntMat kernel_saturated(const IntMat& m);

// Exact solution of A x = b for nonsingular square A; column(s) of b solved
// simultaneously.  Returns nothing iff A is singular.
std::optional<RatMat> solve_rational(const IntMat& a, const RatMat& b);
std::optional<RatMat> solve_rational(const IntMat& a, const IntMat& b);

// Exact inverse of a nonsingular square rational matrix.
std::optional<RatMat> inverse(const RatMat& a);

// Solve X * B = C exactly for rectangular B with full row rank; returns
// nothing if the system is inconsistent.
std::optional<RatMat> solve_left(const RatMat& b, const RatMat& c);

namespace detail {
// floor(a / b) for b != 0 (rounds toward minus infinity)
mpz_class fdiv_q(const mpz_class& a, const mpz_class& b);
// v_p(x) for nonzero rational x
long padic_valuation(const mpq_class& x, const mpz_class& p);
}  // namespace detail

}  // namespace k3cls

#endif  // K3CLS_INTMAT_HPP
