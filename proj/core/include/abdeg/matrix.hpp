#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "abdeg/intpoly.hpp"

namespace abdeg {

/* Dense exact matrices, row-major. Sizes here are desk scale (d <= 8,
 * Sylvester blocks <= 16), so no attempt at anything clever.
 */
struct ZMat {
    int m = 0, n = 0;
    std::vector<mpz_class> a;

    ZMat() = default;
    ZMat(int m_, int n_) : m(m_), n(n_), a(static_cast<size_t>(m_) * n_, mpz_class(0)) {}
    ZMat(int m_, int n_, std::initializer_list<long> vals);

    static ZMat identity(int n);

    mpz_class& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const mpz_class& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    bool is_square() const { return m == n; }
    bool is_zero() const;
    ZMat transpose() const;
    mpz_class trace() const;
    ZMat col(int j) const;
    std::string str() const;
};

bool operator==(const ZMat& x, const ZMat& y);
inline bool operator!=(const ZMat& x, const ZMat& y) { return !(x == y); }
ZMat operator+(const ZMat& x, const ZMat& y);
ZMat operator-(const ZMat& x, const ZMat& y);
ZMat operator*(const ZMat& x, const ZMat& y);
ZMat operator*(const mpz_class& c, const ZMat& x);

ZMat zmat_pow(const ZMat& x, unsigned e);
ZMat kron(const ZMat& x, const ZMat& y);
ZMat hstack(const ZMat& x, const ZMat& y);
ZMat block_diag(const ZMat& x, const ZMat& y);

mpz_class det(const ZMat& x);  // fraction-free (Bareiss)

// Characteristic polynomial, monic with exact integer coefficients
// (Faddeev-LeVerrier; the divisions by k are exact over Z).
IntPoly charpoly(const ZMat& x);

// Exact Horner evaluation f(M).
ZMat eval_poly_matrix(const IntPoly& f, const ZMat& M);

struct QMat {
    int m = 0, n = 0;
    std::vector<mpq_class> a;

    QMat() = default;
    QMat(int m_, int n_) : m(m_), n(n_), a(static_cast<size_t>(m_) * n_, mpq_class(0)) {}
    explicit QMat(const ZMat& z);

    static QMat identity(int n);

    mpq_class& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const mpq_class& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    bool is_square() const { return m == n; }
    bool is_zero() const;
    QMat transpose() const;
    std::string str() const;

    // least common multiple of denominators
    mpz_class common_denominator() const;
    // scaled integer matrix den * this
    ZMat scale_to_integer(const mpz_class& den) const;
};

bool operator==(const QMat& x, const QMat& y);
inline bool operator!=(const QMat& x, const QMat& y) { return !(x == y); }
QMat operator+(const QMat& x, const QMat& y);
QMat operator-(const QMat& x, const QMat& y);
QMat operator*(const QMat& x, const QMat& y);
QMat operator*(const mpq_class& c, const QMat& x);

int rank(const QMat& x);
std::optional<QMat> inverse(const QMat& x);

// Column indices of a pivot basis of the column space.
std::vector<int> pivot_columns(const QMat& x);

// Solve A X = B exactly over Q; nullopt if inconsistent.
std::optional<QMat> solve(const QMat& A, const QMat& B);

// Basis of the rational kernel {x : A x = 0}, one column per basis vector.
QMat kernel(const QMat& A);

/* Column-style Hermite normal form: columns generate the same lattice,
 * pivots are positive with zeros above, and entries of earlier columns in a
 * pivot row are reduced to [0, pivot). Unique canonical representative;
 * zero columns are dropped (the result has full column rank).
 * If U is non-null it receives a unimodular n x n matrix with A*U = [H | 0].
 */
ZMat hnf_columns(const ZMat& A, ZMat* U = nullptr);

// Basis of the integer kernel {x in Z^n : A x = 0} (saturated).
ZMat integer_kernel(const ZMat& A);

// Basis of span_Q(columns of B) intersected with Z^m.
ZMat saturation(const ZMat& B);

}  // namespace abdeg
