#include "abdeg/height.hpp"

#include <stdexcept>

namespace abdeg {

void MWModel::validate() const {
    if (k < 1) throw std::invalid_argument("MWModel: k must be positive");
    if (gram.m != k || gram.n != k) throw std::invalid_argument("MWModel: G dimension mismatch");
    if (gram != gram.transpose()) throw std::invalid_argument("G not symmetric");
    // Sylvester criterion, exact: all leading principal minors positive
    for (int s = 1; s <= k; ++s) {
        QMat lead(s, s);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) lead.at(i, j) = gram.at(i, j);
        // determinant via rref product of pivots
        QMat a = lead;
        mpq_class d = 1;
        for (int c = 0; c < s; ++c) {
            int p = -1;
            for (int i = c; i < s; ++i)
                if (a.at(i, c) != 0) { p = i; break; }
            if (p < 0) { d = 0; break; }
            if (p != c) {
                for (int j = 0; j < s; ++j) std::swap(a.at(p, j), a.at(c, j));
                d = -d;
            }
            d *= a.at(c, c);
            for (int i = c + 1; i < s; ++i) {
                mpq_class f = a.at(i, c) / a.at(c, c);
                for (int j = c; j < s; ++j) a.at(i, j) -= f * a.at(c, j);
            }
        }
        if (d <= 0) throw std::invalid_argument("G not positive definite");
    }
}

void AbelianModel::validate() const {
    if (d < 1) throw std::invalid_argument("AbelianModel: d must be positive");
    mw.validate();
}

bool operator==(const PointCoords& a, const PointCoords& b) { return a.c == b.c; }

PointCoords operator+(const PointCoords& a, const PointCoords& b) {
    return PointCoords(a.c + b.c);
}

PointCoords operator-(const PointCoords& a, const PointCoords& b) {
    return PointCoords(a.c - b.c);
}

PointCoords operator*(const mpz_class& m, const PointCoords& a) {
    return PointCoords(mpq_class(m) * a.c);
}

PointCoords apply(const ZMat& M, const PointCoords& a) { return PointCoords(QMat(M) * a.c); }
PointCoords apply(const QMat& M, const PointCoords& a) { return PointCoords(M * a.c); }

PointCoords vstack(const PointCoords& a, const PointCoords& b) {
    if (a.c.n != b.c.n) throw std::invalid_argument("vstack: column mismatch");
    QMat r(a.c.m + b.c.m, a.c.n);
    for (int i = 0; i < a.c.m; ++i)
        for (int j = 0; j < a.c.n; ++j) r.at(i, j) = a.c.at(i, j);
    for (int i = 0; i < b.c.m; ++i)
        for (int j = 0; j < b.c.n; ++j) r.at(a.c.m + i, j) = b.c.at(i, j);
    return PointCoords(r);
}

void SelfMap::validate() const {
    if (!M.is_square()) throw std::invalid_argument("SelfMap: M not square");
    if (Q.c.m != M.m) throw std::invalid_argument("SelfMap: Q dimension mismatch");
    if (det(M) == 0) throw std::invalid_argument("M singular");
}

mpq_class height(const AbelianModel& A, const PointCoords& P) {
    if (P.c.m != A.d || P.c.n != A.mw.k)
        throw std::invalid_argument("height: dimension mismatch");
    mpq_class h = 0;
    for (int i = 0; i < A.d; ++i)
        for (int a = 0; a < A.mw.k; ++a) {
            if (P.c.at(i, a) == 0) continue;
            for (int b = 0; b < A.mw.k; ++b)
                h += P.c.at(i, a) * A.mw.gram.at(a, b) * P.c.at(i, b);
        }
    return h;
}

bool scale_height_check(const AbelianModel& A, const PointCoords& P, const mpz_class& m) {
    return height(A, m * P) == mpq_class(m * m) * height(A, P);
}

PointCoords iterate(const SelfMap& phi, const PointCoords& P, long n) {
    if (n < 0) throw std::invalid_argument("iterate: negative n");
    PointCoords x = P;
    for (long i = 0; i < n; ++i) x = apply(phi.M, x) + phi.Q;
    return x;
}

std::optional<TranslationSolution> solve_translation(const ZMat& M, const PointCoords& Q,
                                                     SolveMode mode) {
    if (!M.is_square() || M.m != Q.c.m)
        throw std::invalid_argument("solve_translation: shape mismatch");
    const ZMat A = M - ZMat::identity(M.n);
    if (mode == SolveMode::hull) {
        // the image of A is a Q-subspace, so either Q itself is in it (m = 1
        // works) or no nonzero multiple ever is
        auto sol = solve(QMat(A), Q.c);
        if (!sol) return std::nullopt;
        return TranslationSolution{1, PointCoords(*sol)};
    }
    // integral mode: m Q must land in the column lattice of A; the minimal m
    // is the common denominator of Q's coordinates in the lattice's HNF basis
    ZMat U;
    ZMat H = hnf_columns(A, &U);
    auto y = solve(QMat(H), Q.c);
    if (!y) return std::nullopt;
    mpz_class m = y->common_denominator();
    ZMat U1(U.m, H.n);  // A * U1 = H
    for (int i = 0; i < U.m; ++i)
        for (int j = 0; j < H.n; ++j) U1.at(i, j) = U.at(i, j);
    QMat X = QMat(U1) * (mpq_class(m) * *y);
    if (X.common_denominator() != 1)
        throw std::logic_error("solve_translation: integral solve failed");
    return TranslationSolution{m, PointCoords(X)};
}

std::pair<PointCoords, PointCoords> split_translation(const ZMat& M, const PointCoords& Q,
                                                      const UnipotentSplit& split,
                                                      const BezoutCertificate& cert) {
    const IntPoly f1 = IntPoly::x_minus(1).pow(static_cast<unsigned>(split.r));
    if (cert.f1 != f1 || cert.f2 != split.f2 || !cert.check())
        throw std::invalid_argument("split_translation: certificate mismatch");
    if (charpoly(M) != f1 * split.f2)
        throw std::invalid_argument("split_translation: certificate mismatch");
    const mpq_class inv_rho = 1 / mpq_class(cert.rho);
    const ZMat proj1 = eval_poly_matrix(f1, M) * eval_poly_matrix(cert.g1, M);
    const ZMat proj2 = eval_poly_matrix(split.f2, M) * eval_poly_matrix(cert.g2, M);
    PointCoords q1(inv_rho * (QMat(proj1) * Q.c));
    PointCoords q2(inv_rho * (QMat(proj2) * Q.c));
    if (!(q1 + q2 == Q)) throw std::logic_error("split_translation: sum identity failed");
    return {q1, q2};
}

RestrictedMap restrict_map(const ZMat& M, const IntPoly& f) {
    if (!M.is_square()) throw std::invalid_argument("restrict_map: non-square");
    const QMat img = QMat(eval_poly_matrix(f, M));
    auto piv = pivot_columns(img);
    QMat basis(M.n, static_cast<int>(piv.size()));
    for (int j = 0; j < basis.n; ++j)
        for (int i = 0; i < M.n; ++i) basis.at(i, j) = img.at(i, piv[j]);
    auto map = solve(basis, QMat(M) * basis);
    if (!map) throw std::invalid_argument("subspace not M-invariant");
    return {basis, *map};
}

RestrictedMapZ restrict_map_saturated(const ZMat& M, const IntPoly& f) {
    if (!M.is_square()) throw std::invalid_argument("restrict_map_saturated: non-square");
    ZMat basis = saturation(eval_poly_matrix(f, M));
    auto map = solve(QMat(basis), QMat(M * basis));
    if (!map) throw std::invalid_argument("subspace not M-invariant");
    // M maps the saturated lattice into itself, so the restriction is integral
    RestrictedMapZ r;
    r.basis = basis;
    r.map = map->scale_to_integer(1);
    return r;
}

SelfMap product_selfmap(const AbelianModel& AY, const SelfMap& phiY,
                        const AbelianModel& AZ, const SelfMap& phiZ) {
    if (AY.mw.k != AZ.mw.k || AY.mw.gram != AZ.mw.gram)
        throw std::invalid_argument("product_selfmap: Gram mismatch");
    SelfMap p;
    p.M = block_diag(phiY.M, phiZ.M);
    p.Q = vstack(phiY.Q, phiZ.Q);
    return p;
}

SelfMap conjugate_selfmap(const SelfMap& phiX, const ZMat& L, const ZMat& MY) {
    if (det(L) == 0) throw std::invalid_argument("conjugate_selfmap: L singular");
    if (L * phiX.M != MY * L)
        throw std::invalid_argument("conjugate_selfmap: intertwining violated");
    SelfMap y;
    y.M = MY;
    y.Q = apply(L, phiX.Q);
    return y;
}

}  // namespace abdeg
