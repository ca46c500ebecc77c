#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>

#include "abdeg/intpoly.hpp"
#include "abdeg/matrix.hpp"

namespace abdeg {

/* Concrete arithmetic model: A = E^d with points carried by a rank-k
 * Mordell-Weil coordinate lattice. Heights are exact values of the Gram
 * quadratic form, so the canonical-height identities hold with no O(1).
 * Coordinates live in the divisible hull (rationals), since translation
 * preimages and decomposition components may fall outside the integral
 * lattice.
 */

struct MWModel {
    int k = 0;
    QMat gram;  // k x k symmetric positive definite, exact rationals

    void validate() const;  // throws std::invalid_argument naming the defect
};

struct AbelianModel {
    int d = 0;
    MWModel mw;

    void validate() const;
};

// d x k rational matrix; row i = coordinates of the i-th component.
struct PointCoords {
    QMat c;

    PointCoords() = default;
    explicit PointCoords(QMat m) : c(std::move(m)) {}
    static PointCoords zero(int d, int k) { return PointCoords(QMat(d, k)); }
    bool is_zero() const { return c.is_zero(); }
};

bool operator==(const PointCoords& a, const PointCoords& b);
PointCoords operator+(const PointCoords& a, const PointCoords& b);
PointCoords operator-(const PointCoords& a, const PointCoords& b);
PointCoords operator*(const mpz_class& m, const PointCoords& a);
PointCoords apply(const ZMat& M, const PointCoords& a);
PointCoords apply(const QMat& M, const PointCoords& a);
PointCoords vstack(const PointCoords& a, const PointCoords& b);

// phi(P) = f(P) + Q with f the isogeny represented by M (det != 0).
struct SelfMap {
    ZMat M;
    PointCoords Q;

    void validate() const;
};

// Canonical height: sum over rows of row * G * row^T; exact, >= 0.
mpq_class height(const AbelianModel& A, const PointCoords& P);

// height(mP) == m^2 height(P), exactly (no O(1) in the canonical model).
bool scale_height_check(const AbelianModel& A, const PointCoords& P, const mpz_class& m);

// phi^n(P) = M^n P + (M^{n-1} + ... + I) Q by incremental exact recurrence.
PointCoords iterate(const SelfMap& phi, const PointCoords& P, long n);

enum class SolveMode { hull, integral };

struct TranslationSolution {
    mpz_class m;        // nonzero multiplier
    PointCoords qprime; // m Q = (M - I) Q'
};

/* Solve m Q = (M - I) Q' for some m != 0. Hull mode (default) returns m = 1
 * with rational Q' whenever Q lies in the rational column span of (M - I);
 * integral mode returns the smallest positive m admitting an integral Q'.
 * Absent when no multiple of Q lies in the image.
 */
std::optional<TranslationSolution> solve_translation(const ZMat& M, const PointCoords& Q,
                                                     SolveMode mode = SolveMode::hull);

/* Q = Q1 + Q2 with Q1 = (1/rho) F1(M) G1(M) Q in the F1(M)-span and
 * Q2 = (1/rho) F2(M) G2(M) Q in the F2(M)-span. The certificate must match
 * the split: F1 = (X-1)^r, F2 = split.f2, and F1*F2 = charpoly(M).
 */
std::pair<PointCoords, PointCoords> split_translation(const ZMat& M, const PointCoords& Q,
                                                      const UnipotentSplit& split,
                                                      const BezoutCertificate& cert);

struct RestrictedMap {
    QMat basis;     // columns spanning f(M) * Q^d
    QMat map;       // M restricted: M * basis = basis * map, exactly
};

// Restriction of M to the f(M)-image subspace, in a pivot-column basis.
RestrictedMap restrict_map(const ZMat& M, const IntPoly& f);

// Same subspace, but with a basis of the saturated integer lattice
// (span cap Z^d), which keeps the restricted matrix integral.
struct RestrictedMapZ {
    ZMat basis;
    ZMat map;
};
RestrictedMapZ restrict_map_saturated(const ZMat& M, const IntPoly& f);

// Block-diagonal matrix, stacked translations; both factors over the same
// Mordell-Weil model (Gram matrices must agree).
SelfMap product_selfmap(const AbelianModel& AY, const SelfMap& phiY,
                        const AbelianModel& AZ, const SelfMap& phiZ);

/* Conjugation along a finite map: given L with det != 0 and the exact
 * intertwining L * M_X = M_Y * L, returns phi_Y = (M_Y, L Q_X); then
 * L iterate(phi_X, P, n) = iterate(phi_Y, L P, n) for all P, n.
 */
SelfMap conjugate_selfmap(const SelfMap& phiX, const ZMat& L, const ZMat& MY);

}  // namespace abdeg
