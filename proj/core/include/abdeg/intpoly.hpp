#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace abdeg {

/* Integer polynomial with arbitrary-precision coefficients.
 * coeffs[i] is the coefficient of X^i; the zero polynomial is the empty
 * sequence, and the leading coefficient of a nonzero polynomial is nonzero.
 */
struct IntPoly {
    std::vector<mpz_class> coeffs;

    IntPoly() = default;
    IntPoly(std::initializer_list<long> c);
    explicit IntPoly(std::vector<mpz_class> c);

    static IntPoly one();
    static IntPoly x();
    static IntPoly monomial(int n, const mpz_class& c = 1);
    static IntPoly x_minus(const mpz_class& a);  // X - a

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }
    const mpz_class& lc() const;
    mpz_class coeff(int i) const;

    void normalize();  // strip trailing zero coefficients

    mpz_class eval(const mpz_class& x) const;
    mpq_class eval(const mpq_class& x) const;

    IntPoly derivative() const;
    IntPoly pow(unsigned e) const;

    mpz_class content() const;      // gcd of coefficients (0 for zero poly)
    IntPoly primitive_part() const; // content removed, leading coefficient > 0

    std::string str(const std::string& var = "X") const;
};

bool operator==(const IntPoly& a, const IntPoly& b);
inline bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }
IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a);
IntPoly operator*(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const mpz_class& c, const IntPoly& a);

/* Rational-coefficient polynomial; used for division with remainder, the
 * extended Euclidean algorithm, and the transport coefficients c_{r,j}
 * whose closed form carries factorial denominators.
 */
struct RatPoly {
    std::vector<mpq_class> coeffs;

    RatPoly() = default;
    explicit RatPoly(std::vector<mpq_class> c);
    explicit RatPoly(const IntPoly& p);

    static RatPoly constant(const mpq_class& c);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    mpq_class coeff(int i) const;
    void normalize();

    mpq_class eval(const mpq_class& x) const;
    // Evaluate at an integer and require an integer value.
    mpz_class eval_int(const mpz_class& n) const;

    // Clear denominators to an IntPoly; fails if any coefficient is non-integral
    // unless allow_scaling, in which case the primitive scaled poly is returned.
    IntPoly to_intpoly() const;
};

bool operator==(const RatPoly& a, const RatPoly& b);
RatPoly operator+(const RatPoly& a, const RatPoly& b);
RatPoly operator-(const RatPoly& a, const RatPoly& b);
RatPoly operator*(const RatPoly& a, const RatPoly& b);
RatPoly operator*(const mpq_class& c, const RatPoly& a);

// Quotient and remainder over Q; b must be nonzero.
std::pair<RatPoly, RatPoly> divrem(const RatPoly& a, const RatPoly& b);

// Exact division in Z[X]; throws std::domain_error if b does not divide a.
IntPoly divide_exact(const IntPoly& a, const IntPoly& b);

/* g1*f1 + g2*f2 = rho, an exact identity in Z[X] with rho the Sylvester
 * resultant of (f1, f2) and normalized cofactors deg g1 < deg f2,
 * deg g2 < deg f1.
 */
struct BezoutCertificate {
    IntPoly f1, f2, g1, g2;
    mpz_class rho;

    bool check() const;  // re-verify the identity and the degree bounds
};

// f = (X-1)^r * f2 with f2(1) != 0.
struct UnipotentSplit {
    int r = 0;
    IntPoly f2;
};

// Primitive gcd over Q, scaled to integer coefficients with positive lc.
IntPoly gcd_rational(const IntPoly& a, const IntPoly& b);

// Sylvester-matrix resultant, exact (fraction-free elimination).
mpz_class resultant(const IntPoly& a, const IntPoly& b);

// Extended Euclid over Q with denominators cleared to the resultant value.
BezoutCertificate bezout_certificate(const IntPoly& f1, const IntPoly& f2);

// Maximal power of (X-1) dividing a monic f, with exact quotient.
UnipotentSplit unipotent_split(const IntPoly& f);

/* The transport coefficients c_{r,j}(T), j = 0..r-1, of degree <= r-1:
 * X^n = sum_j c_{r,j}(n) X^j  mod (X-1)^r  for every integer n >= 0.
 * Stored with rational coefficients (denominators divide (r-1)!); values at
 * integer arguments are exact integers.
 */
std::vector<RatPoly> binomial_coeffs(int r);

}  // namespace abdeg
