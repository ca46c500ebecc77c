#pragma once

#include <gmpxx.h>

#include <vector>

#include "abdeg/intpoly.hpp"
#include "abdeg/matrix.hpp"

namespace abdeg {

/* Certified enclosure of a nonnegative spectral quantity: exact rational
 * bounds with lower <= value <= upper and upper - lower <= the requested
 * tolerance.
 */
struct SpectralCertificate {
    double value = 0.0;
    mpq_class lower, upper;

    mpq_class width() const { return upper - lower; }
    bool encloses(const mpq_class& x) const { return lower <= x && x <= upper; }
    bool overlaps(const SpectralCertificate& o, const mpq_class& slack = 0) const {
        return lower <= o.upper + slack && o.lower <= upper + slack;
    }
};

// Power sums p_1..p_kmax of the roots of a monic integer polynomial
// (Newton's identities, exact).
std::vector<mpz_class> root_power_sums(const IntPoly& f, int kmax);

// Monic polynomial of degree len(q) with the given root power sums
// (inverse Newton; divisions are exact for symmetric functions of
// algebraic integers).
IntPoly poly_from_power_sums(const std::vector<mpz_class>& q);

/* The polynomial whose roots are all pairwise products of roots of the
 * monic f (degree deg(f)^2). Its largest real root is exactly the squared
 * maximal root modulus of f, since the products a*conj(a) are real and
 * dominate every other real product.
 */
IntPoly root_product_poly(const IntPoly& f);

// f divided by gcd(f, f'), primitive.
IntPoly squarefree_part(const IntPoly& f);

// X^deg(f) * f(1/X): coefficients reversed.
IntPoly reciprocal_poly(const IntPoly& f);

/* Exact decision: does f have a complex root of modulus exactly 1?
 * Roots of modulus 1 of a real polynomial pair with their inverses, so they
 * live in g = gcd(f, reciprocal(f)); after splitting off the roots +-1, g is
 * an even palindrome and substituting y = X + 1/X reduces the question to a
 * Sturm count of real roots of the transformed polynomial inside (-2, 2).
 */
bool has_root_of_modulus_one(const IntPoly& f);

// Sturm chain with primitive sign-preserving normalization.
struct SturmChain {
    std::vector<IntPoly> seq;

    explicit SturmChain(const IntPoly& squarefree);
    int sign_changes_at(const mpq_class& x) const;
    // number of distinct real roots in (a, b]
    int count_roots(const mpq_class& a, const mpq_class& b) const;
};

/* Certified enclosure [lo, hi] of the largest real root of f, of width at
 * most tol; f must have at least one real root.
 */
std::pair<mpq_class, mpq_class> largest_real_root_enclosure(const IntPoly& f,
                                                            const mpq_class& tol);

// Rational x with x^2 <= v (resp. >= v), within 2^-prec_bits of sqrt(v).
mpq_class sqrt_lower(const mpq_class& v, unsigned prec_bits);
mpq_class sqrt_upper(const mpq_class& v, unsigned prec_bits);

/* rho(M) enclosed to width <= tol: the square root of the certified largest
 * real root of the pair-product polynomial of charpoly(M). All arithmetic on
 * the way to the bounds is exact.
 */
SpectralCertificate spectral_radius_certified(const ZMat& M, double tol);

// delta = rho(M)^2, certified to width <= tol. This depends on the isogeny
// matrix only; translations act trivially on divisor classes.
SpectralCertificate dynamical_degree_of_matrix(const ZMat& M, double tol);

struct GelfandSample {
    int n = 0;
    mpz_class frob2;  // exact squared Frobenius norm of M^n
    double root = 0;  // (frob2)^(1/n)
};

// Exact squared Frobenius norms of integer powers with their n-th roots;
// the root sequence converges to rho(M)^2 from above.
std::vector<GelfandSample> gelfand_oracle(const ZMat& M, int n_max);

}  // namespace abdeg
