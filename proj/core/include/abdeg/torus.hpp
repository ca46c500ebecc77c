#pragma once

#include <gmpxx.h>

#include <vector>

#include "abdeg/intpoly.hpp"
#include "abdeg/matrix.hpp"

namespace abdeg {

/* Rational torus model Q^m / Z^m. Group-theoretic facts about the
 * decomposition (sum is everything, intersection is rho-torsion, the
 * unipotent-kernel rho^2 bound) are verified here, where torsion is visible.
 */

// Point of the torus, coordinates reduced to canonical representatives in [0,1).
struct TorusPoint {
    std::vector<mpq_class> coords;

    explicit TorusPoint(std::vector<mpq_class> c);
    int dim() const { return static_cast<int>(coords.size()); }
    bool is_zero() const;
};

bool operator==(const TorusPoint& a, const TorusPoint& b);
TorusPoint operator+(const TorusPoint& a, const TorusPoint& b);
TorusPoint operator*(const mpz_class& c, const TorusPoint& a);
// image under an integer matrix (well-defined on the torus)
TorusPoint apply(const ZMat& M, const TorusPoint& x);

// Finite-index-or-lower-rank subgroup of Z^m in canonical column HNF.
struct Sublattice {
    int ambient = 0;
    ZMat basis;  // ambient x rank, column HNF

    Sublattice() = default;
    Sublattice(int ambient_dim, const ZMat& generators);
    int rank() const { return basis.n; }
};

bool operator==(const Sublattice& a, const Sublattice& b);

// Doubled rational representation M (x) I_2, size 2d x 2d.
ZMat rational_rep(const ZMat& M);

// HNF of the column lattice of f(R).
Sublattice image_sublattice(const IntPoly& f, const ZMat& R);

struct SumCertificate {
    bool full_rank = false;
    mpz_class index;  // [Z^m : L1 + L2] when full rank, 0 otherwise
};

// L1 + L2 spans the ambient space, with the index as certificate.
SumCertificate verify_sum_full(const Sublattice& L1, const Sublattice& L2);

/* Subgroup membership machinery: the image of the full torus under an
 * integer matrix B is (V + Z^m)/Z^m for V = col-span_Q(B), and its points
 * of denominator dividing q are exactly (1/q) * (V cap Z^m) mod Z^m.
 */
struct ImageSubgroup {
    int ambient = 0;
    ZMat sat;        // basis of V cap Z^m (ambient x rank)
    ZMat annih;      // rows spanning the annihilator of V ((ambient-rank) x ambient)
    QMat membership; // W with x in V + Z^m  <=>  W x integral

    explicit ImageSubgroup(const ZMat& B);
    bool contains(const TorusPoint& x) const;
    // all points of denominator dividing q, enumerated exactly (q^rank points)
    std::vector<TorusPoint> points_of_denominator(unsigned q) const;
};

/* Every denominator-q torus point lying in both image subgroups
 * f1(R)(torus) and f2(R)(torus) satisfies rho * x = 0. Complete check at
 * denominator level q (the smaller subgroup is enumerated, membership in the
 * other is tested exactly).
 */
bool verify_intersection_torsion(const IntPoly& f1, const IntPoly& f2, const ZMat& R,
                                 const mpz_class& rho, unsigned sample_denominator);

/* Every denominator-q point x of the F1(R)-image subgroup with
 * (R - I) x = 0 on the torus satisfies rho^2 * x = 0.
 */
bool verify_unipotent_kernel_bound(const IntPoly& F1, const IntPoly& F2,
                                   const BezoutCertificate& cert, const ZMat& R,
                                   unsigned sample_denominator);

/* (M - I) restricted to the span of the given basis is invertible over Q
 * (equivalently, the restriction of f - 1 is an isogeny of that factor).
 * Throws if the basis does not span an M-invariant subspace.
 */
bool restricted_unit_invertibility(const ZMat& M, const QMat& subspace_basis);

}  // namespace abdeg
