#include "abdeg/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace abdeg {

ZMat::ZMat(int m_, int n_, std::initializer_list<long> vals) : ZMat(m_, n_) {
    if (static_cast<int>(vals.size()) != m_ * n_)
        throw std::invalid_argument("ZMat: initializer size mismatch");
    int i = 0;
    for (long v : vals) a[i++] = v;
}

ZMat ZMat::identity(int n) {
    ZMat r(n, n);
    for (int i = 0; i < n; ++i) r.at(i, i) = 1;
    return r;
}

bool ZMat::is_zero() const {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

ZMat ZMat::transpose() const {
    ZMat r(n, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) r.at(j, i) = at(i, j);
    return r;
}

mpz_class ZMat::trace() const {
    mpz_class t = 0;
    for (int i = 0; i < std::min(m, n); ++i) t += at(i, i);
    return t;
}

ZMat ZMat::col(int j) const {
    ZMat r(m, 1);
    for (int i = 0; i < m; ++i) r.at(i, 0) = at(i, j);
    return r;
}

std::string ZMat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < m; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < n; ++j) os << (j ? "," : "") << at(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

bool operator==(const ZMat& x, const ZMat& y) {
    return x.m == y.m && x.n == y.n && x.a == y.a;
}

ZMat operator+(const ZMat& x, const ZMat& y) {
    if (x.m != y.m || x.n != y.n) throw std::invalid_argument("ZMat+: shape mismatch");
    ZMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

ZMat operator-(const ZMat& x, const ZMat& y) {
    if (x.m != y.m || x.n != y.n) throw std::invalid_argument("ZMat-: shape mismatch");
    ZMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

ZMat operator*(const ZMat& x, const ZMat& y) {
    if (x.n != y.m) throw std::invalid_argument("ZMat*: shape mismatch");
    ZMat r(x.m, y.n);
    for (int i = 0; i < x.m; ++i)
        for (int k = 0; k < x.n; ++k) {
            const mpz_class& v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.n; ++j) r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

ZMat operator*(const mpz_class& c, const ZMat& x) {
    ZMat r = x;
    for (auto& v : r.a) v *= c;
    return r;
}

ZMat zmat_pow(const ZMat& x, unsigned e) {
    if (!x.is_square()) throw std::invalid_argument("zmat_pow: non-square");
    ZMat r = ZMat::identity(x.n), b = x;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

ZMat kron(const ZMat& x, const ZMat& y) {
    ZMat r(x.m * y.m, x.n * y.n);
    for (int i = 0; i < x.m; ++i)
        for (int j = 0; j < x.n; ++j)
            for (int k = 0; k < y.m; ++k)
                for (int l = 0; l < y.n; ++l)
                    r.at(i * y.m + k, j * y.n + l) = x.at(i, j) * y.at(k, l);
    return r;
}

ZMat hstack(const ZMat& x, const ZMat& y) {
    if (x.m != y.m) throw std::invalid_argument("hstack: row mismatch");
    ZMat r(x.m, x.n + y.n);
    for (int i = 0; i < x.m; ++i) {
        for (int j = 0; j < x.n; ++j) r.at(i, j) = x.at(i, j);
        for (int j = 0; j < y.n; ++j) r.at(i, x.n + j) = y.at(i, j);
    }
    return r;
}

ZMat block_diag(const ZMat& x, const ZMat& y) {
    ZMat r(x.m + y.m, x.n + y.n);
    for (int i = 0; i < x.m; ++i)
        for (int j = 0; j < x.n; ++j) r.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.m; ++i)
        for (int j = 0; j < y.n; ++j) r.at(x.m + i, x.n + j) = y.at(i, j);
    return r;
}

mpz_class det(const ZMat& x) {
    if (!x.is_square()) throw std::invalid_argument("det: non-square");
    const int n = x.n;
    if (n == 0) return 1;
    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = x.at(i, j);
    int sign = 1;
    mpz_class prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { p = i; break; }
            if (p < 0) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mpz_class t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

IntPoly charpoly(const ZMat& x) {
    if (!x.is_square()) throw std::invalid_argument("charpoly: non-square");
    const int d = x.n;
    std::vector<mpz_class> c(d + 1);
    c[d] = 1;
    ZMat N = ZMat::identity(d);
    ZMat MN;
    for (int k = 1; k <= d; ++k) {
        MN = x * N;
        mpz_class t = -MN.trace();
        mpz_divexact(c[d - k].get_mpz_t(), t.get_mpz_t(), mpz_class(k).get_mpz_t());
        N = MN;
        for (int i = 0; i < d; ++i) N.at(i, i) += c[d - k];
    }
    IntPoly f(std::move(c));
    assert(f.is_monic());
    return f;
}

ZMat eval_poly_matrix(const IntPoly& f, const ZMat& M) {
    if (!M.is_square()) throw std::invalid_argument("eval_poly_matrix: non-square");
    ZMat r(M.n, M.n);
    for (int i = f.degree(); i >= 0; --i) {
        r = r * M;
        for (int k = 0; k < M.n; ++k) r.at(k, k) += f.coeffs[i];
    }
    return r;
}

/* ----------------------------------------------------------------- QMat */

QMat::QMat(const ZMat& z) : QMat(z.m, z.n) {
    for (size_t i = 0; i < a.size(); ++i) a[i] = z.a[i];
}

QMat QMat::identity(int n) {
    QMat r(n, n);
    for (int i = 0; i < n; ++i) r.at(i, i) = 1;
    return r;
}

bool QMat::is_zero() const {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

QMat QMat::transpose() const {
    QMat r(n, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::string QMat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < m; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < n; ++j) os << (j ? "," : "") << at(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

mpz_class QMat::common_denominator() const {
    mpz_class den = 1;
    for (const auto& x : a) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    return den;
}

ZMat QMat::scale_to_integer(const mpz_class& den) const {
    ZMat r(m, n);
    for (size_t i = 0; i < a.size(); ++i) {
        mpq_class v = mpq_class(den) * a[i];
        if (v.get_den() != 1) throw std::domain_error("scale_to_integer: denominator survives");
        r.a[i] = v.get_num();
    }
    return r;
}

bool operator==(const QMat& x, const QMat& y) {
    return x.m == y.m && x.n == y.n && x.a == y.a;
}

QMat operator+(const QMat& x, const QMat& y) {
    if (x.m != y.m || x.n != y.n) throw std::invalid_argument("QMat+: shape mismatch");
    QMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

QMat operator-(const QMat& x, const QMat& y) {
    if (x.m != y.m || x.n != y.n) throw std::invalid_argument("QMat-: shape mismatch");
    QMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

QMat operator*(const QMat& x, const QMat& y) {
    if (x.n != y.m) throw std::invalid_argument("QMat*: shape mismatch");
    QMat r(x.m, y.n);
    for (int i = 0; i < x.m; ++i)
        for (int k = 0; k < x.n; ++k) {
            const mpq_class& v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.n; ++j) r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

QMat operator*(const mpq_class& c, const QMat& x) {
    QMat r = x;
    for (auto& v : r.a) v *= c;
    return r;
}

namespace {

/* Row echelon reduction in place with partial pivoting (first nonzero).
 * Returns the pivot (row, col) pairs. Operates on [A | B] when B given.
 */
std::vector<std::pair<int, int>> rref(QMat& A, QMat* B = nullptr) {
    std::vector<std::pair<int, int>> pivots;
    int row = 0;
    for (int col = 0; col < A.n && row < A.m; ++col) {
        int p = -1;
        for (int i = row; i < A.m; ++i)
            if (A.at(i, col) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != row) {
            for (int j = 0; j < A.n; ++j) std::swap(A.at(p, j), A.at(row, j));
            if (B)
                for (int j = 0; j < B->n; ++j) std::swap(B->at(p, j), B->at(row, j));
        }
        mpq_class inv = 1 / A.at(row, col);
        for (int j = col; j < A.n; ++j) A.at(row, j) *= inv;
        if (B)
            for (int j = 0; j < B->n; ++j) B->at(row, j) *= inv;
        for (int i = 0; i < A.m; ++i) {
            if (i == row || A.at(i, col) == 0) continue;
            mpq_class f = A.at(i, col);
            for (int j = col; j < A.n; ++j) A.at(i, j) -= f * A.at(row, j);
            if (B)
                for (int j = 0; j < B->n; ++j) B->at(i, j) -= f * B->at(row, j);
        }
        pivots.emplace_back(row, col);
        ++row;
    }
    return pivots;
}

}  // namespace

int rank(const QMat& x) {
    QMat a = x;
    return static_cast<int>(rref(a).size());
}

std::optional<QMat> inverse(const QMat& x) {
    if (!x.is_square()) throw std::invalid_argument("inverse: non-square");
    QMat a = x, b = QMat::identity(x.n);
    auto pivots = rref(a, &b);
    if (static_cast<int>(pivots.size()) != x.n) return std::nullopt;
    return b;
}

std::vector<int> pivot_columns(const QMat& x) {
    QMat a = x;
    auto pivots = rref(a);
    std::vector<int> cols;
    cols.reserve(pivots.size());
    for (auto& [r, c] : pivots) cols.push_back(c);
    return cols;
}

std::optional<QMat> solve(const QMat& A, const QMat& B) {
    if (A.m != B.m) throw std::invalid_argument("solve: shape mismatch");
    QMat a = A, b = B;
    auto pivots = rref(a, &b);
    // consistency: zero rows of a must have zero rows in b
    int prank = static_cast<int>(pivots.size());
    for (int i = prank; i < a.m; ++i)
        for (int j = 0; j < b.n; ++j)
            if (b.at(i, j) != 0) return std::nullopt;
    QMat x(A.n, B.n);
    for (int k = 0; k < prank; ++k) {
        auto [r, c] = pivots[k];
        for (int j = 0; j < B.n; ++j) x.at(c, j) = b.at(r, j);
    }
    return x;
}

QMat kernel(const QMat& A) {
    QMat a = A;
    auto pivots = rref(a);
    std::vector<bool> is_pivot(A.n, false);
    for (auto& [r, c] : pivots) is_pivot[c] = true;
    int free_cnt = A.n - static_cast<int>(pivots.size());
    QMat K(A.n, free_cnt);
    int kcol = 0;
    for (int c = 0; c < A.n; ++c) {
        if (is_pivot[c]) continue;
        K.at(c, kcol) = 1;
        for (auto& [pr, pc] : pivots) K.at(pc, kcol) = -a.at(pr, c);
        ++kcol;
    }
    return K;
}

/* ------------------------------------------------------------------ HNF */

ZMat hnf_columns(const ZMat& A, ZMat* U) {
    ZMat H = A;
    ZMat T = ZMat::identity(A.n);

    auto col_axpy = [&](int dst, int src, const mpz_class& q) {
        // column dst -= q * column src
        if (q == 0) return;
        for (int i = 0; i < H.m; ++i) H.at(i, dst) -= q * H.at(i, src);
        for (int i = 0; i < T.m; ++i) T.at(i, dst) -= q * T.at(i, src);
    };
    auto col_swap = [&](int x, int y) {
        if (x == y) return;
        for (int i = 0; i < H.m; ++i) std::swap(H.at(i, x), H.at(i, y));
        for (int i = 0; i < T.m; ++i) std::swap(T.at(i, x), T.at(i, y));
    };
    auto col_negate = [&](int x) {
        for (int i = 0; i < H.m; ++i) H.at(i, x) = -H.at(i, x);
        for (int i = 0; i < T.m; ++i) T.at(i, x) = -T.at(i, x);
    };

    int c = 0;  // next pivot column slot
    for (int i = 0; i < H.m && c < H.n; ++i) {
        // Euclidean reduction across row i on columns c..n-1
        for (;;) {
            int jmin = -1;
            for (int j = c; j < H.n; ++j) {
                if (H.at(i, j) == 0) continue;
                if (jmin < 0 || cmp(abs(H.at(i, j)), abs(H.at(i, jmin))) < 0) jmin = j;
            }
            if (jmin < 0) break;  // row i is zero on active columns
            col_swap(c, jmin);
            bool clean = true;
            for (int j = c + 1; j < H.n; ++j) {
                if (H.at(i, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), H.at(i, j).get_mpz_t(), H.at(i, c).get_mpz_t());
                col_axpy(j, c, q);
                if (H.at(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (c < H.n && H.at(i, c) != 0) {
            if (H.at(i, c) < 0) col_negate(c);
            // reduce earlier pivot columns at this row into [0, pivot)
            for (int j = 0; j < c; ++j) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), H.at(i, j).get_mpz_t(), H.at(i, c).get_mpz_t());
                col_axpy(j, c, q);
            }
            ++c;
        }
    }
    if (U) *U = T;
    // drop trailing zero columns
    ZMat R(H.m, c);
    for (int i = 0; i < H.m; ++i)
        for (int j = 0; j < c; ++j) R.at(i, j) = H.at(i, j);
    return R;
}

ZMat integer_kernel(const ZMat& A) {
    ZMat U;
    ZMat H = hnf_columns(A, &U);
    int r = H.n;
    ZMat K(A.n, A.n - r);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n - r; ++j) K.at(i, j) = U.at(i, r + j);
    return K;
}

ZMat saturation(const ZMat& B) {
    // rows annihilating the column span, then the integer kernel of those rows
    ZMat C = integer_kernel(B.transpose());  // columns y with y^T B = 0
    if (C.n == 0) return ZMat::identity(B.m);
    return integer_kernel(C.transpose());
}

}  // namespace abdeg
