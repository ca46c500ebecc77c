#include "abdeg/intpoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace abdeg {

IntPoly::IntPoly(std::initializer_list<long> c) {
    coeffs.reserve(c.size());
    for (long v : c) coeffs.emplace_back(v);
    normalize();
}

IntPoly::IntPoly(std::vector<mpz_class> c) : coeffs(std::move(c)) { normalize(); }

IntPoly IntPoly::one() { return IntPoly{1}; }
IntPoly IntPoly::x() { return IntPoly{0, 1}; }

IntPoly IntPoly::monomial(int n, const mpz_class& c) {
    if (c == 0) return {};
    IntPoly p;
    p.coeffs.assign(n + 1, mpz_class(0));
    p.coeffs[n] = c;
    return p;
}

IntPoly IntPoly::x_minus(const mpz_class& a) {
    IntPoly p;
    p.coeffs = {-a, mpz_class(1)};
    return p;
}

const mpz_class& IntPoly::lc() const {
    if (coeffs.empty()) throw std::domain_error("lc of zero polynomial");
    return coeffs.back();
}

mpz_class IntPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs.size())) return 0;
    return coeffs[i];
}

void IntPoly::normalize() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class s = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * x + *it;
    return s;
}

mpq_class IntPoly::eval(const mpq_class& x) const {
    mpq_class s = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * x + mpq_class(*it);
    return s;
}

IntPoly IntPoly::derivative() const {
    if (degree() <= 0) return {};
    IntPoly d;
    d.coeffs.reserve(coeffs.size() - 1);
    for (size_t i = 1; i < coeffs.size(); ++i) d.coeffs.push_back(mpz_class(i) * coeffs[i]);
    d.normalize();
    return d;
}

IntPoly IntPoly::pow(unsigned e) const {
    IntPoly r = one();
    IntPoly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& c : coeffs) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return {};
    mpz_class g = content();
    if (lc() < 0) g = -g;
    IntPoly p;
    p.coeffs.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        p.coeffs.push_back(q);
    }
    return p;
}

std::string IntPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& c = coeffs[i];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        mpz_class a = abs(c);
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs == b.coeffs; }

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    IntPoly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), mpz_class(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] += a.coeffs[i];
    for (size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    r.normalize();
    return r;
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator-(const IntPoly& a) {
    IntPoly r = a;
    for (auto& c : r.coeffs) c = -c;
    return r;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    IntPoly r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        for (size_t j = 0; j < b.coeffs.size(); ++j)
            r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    r.normalize();
    return r;
}

IntPoly operator*(const mpz_class& c, const IntPoly& a) {
    if (c == 0) return {};
    IntPoly r = a;
    for (auto& x : r.coeffs) x *= c;
    return r;
}

/* ------------------------------------------------------------- RatPoly */

RatPoly::RatPoly(std::vector<mpq_class> c) : coeffs(std::move(c)) { normalize(); }

RatPoly::RatPoly(const IntPoly& p) {
    coeffs.reserve(p.coeffs.size());
    for (const auto& c : p.coeffs) coeffs.emplace_back(c);
}

RatPoly RatPoly::constant(const mpq_class& c) {
    RatPoly r;
    if (c != 0) r.coeffs = {c};
    return r;
}

mpq_class RatPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs.size())) return 0;
    return coeffs[i];
}

void RatPoly::normalize() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

mpq_class RatPoly::eval(const mpq_class& x) const {
    mpq_class s = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * x + *it;
    return s;
}

mpz_class RatPoly::eval_int(const mpz_class& n) const {
    mpq_class v = eval(mpq_class(n));
    if (v.get_den() != 1)
        throw std::domain_error("eval_int: non-integer value " + v.get_str());
    return v.get_num();
}

IntPoly RatPoly::to_intpoly() const {
    IntPoly p;
    p.coeffs.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        if (c.get_den() != 1)
            throw std::domain_error("to_intpoly: non-integer coefficient");
        p.coeffs.push_back(c.get_num());
    }
    p.normalize();
    return p;
}

bool operator==(const RatPoly& a, const RatPoly& b) { return a.coeffs == b.coeffs; }

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    RatPoly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), mpq_class(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] += a.coeffs[i];
    for (size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    r.normalize();
    return r;
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
    return a + mpq_class(-1) * b;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    RatPoly r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        for (size_t j = 0; j < b.coeffs.size(); ++j)
            r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    r.normalize();
    return r;
}

RatPoly operator*(const mpq_class& c, const RatPoly& a) {
    if (c == 0) return {};
    RatPoly r = a;
    for (auto& x : r.coeffs) x *= c;
    return r;
}

std::pair<RatPoly, RatPoly> divrem(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw std::domain_error("divrem: division by zero polynomial");
    RatPoly q, r = a;
    int db = b.degree();
    const mpq_class& blc = b.coeffs.back();
    while (!r.is_zero() && r.degree() >= db) {
        int shift = r.degree() - db;
        mpq_class c = r.coeffs.back() / blc;
        if (q.degree() < shift) q.coeffs.resize(shift + 1, mpq_class(0));
        q.coeffs[shift] += c;
        // r -= c * X^shift * b
        for (int i = 0; i <= db; ++i) r.coeffs[shift + i] -= c * b.coeffs[i];
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

IntPoly divide_exact(const IntPoly& a, const IntPoly& b) {
    auto [q, r] = divrem(RatPoly(a), RatPoly(b));
    if (!r.is_zero()) throw std::domain_error("divide_exact: remainder nonzero");
    return q.to_intpoly();
}

/* --------------------------------------------------------- gcd / resultant */

IntPoly gcd_rational(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("undefined gcd");
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    RatPoly r0(a), r1(b);
    while (!r1.is_zero()) {
        RatPoly r2 = divrem(r0, r1).second;
        r0 = r1;
        r1 = r2;
    }
    // scale to primitive integer coefficients, positive leading coefficient
    mpz_class den = 1;
    for (const auto& c : r0.coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    return (mpq_class(den) * r0).to_intpoly().primitive_part();
}

namespace {

// Fraction-free (Bareiss) determinant of a square mpz matrix, destructive.
mpz_class bareiss_det(std::vector<std::vector<mpz_class>>& a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return 1;
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

}  // namespace

mpz_class resultant(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero())
        throw std::domain_error("resultant of zero polynomial");
    const int m = a.degree(), n = b.degree();
    if (m == 0 && n == 0) return 1;  // empty Sylvester matrix
    if (m == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), a.coeffs[0].get_mpz_t(), n);
        return r;
    }
    if (n == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), b.coeffs[0].get_mpz_t(), m);
        return r;
    }
    const int size = m + n;
    std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size, mpz_class(0)));
    // n rows of a's coefficients (descending), then m rows of b's
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[i][i + j] = a.coeffs[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[n + i][i + j] = b.coeffs[n - j];
    return bareiss_det(s);
}

/* ------------------------------------------------------------- Bezout */

bool BezoutCertificate::check() const {
    if (rho == 0) return false;
    if (g1 * f1 + g2 * f2 != IntPoly::monomial(0, rho)) return false;
    // zero cofactors pass vacuously (deg of the zero polynomial is -inf)
    if (!g1.is_zero() && g1.degree() >= f2.degree()) return false;
    if (!g2.is_zero() && g2.degree() >= f1.degree()) return false;
    return true;
}

BezoutCertificate bezout_certificate(const IntPoly& f1, const IntPoly& f2) {
    if (f1.is_zero() || f2.is_zero())
        throw std::domain_error("bezout_certificate: zero polynomial input");
    if (f1.degree() == 0 && f2.degree() == 0)
        throw std::domain_error("bezout_certificate: both inputs constant");
    mpz_class rho = resultant(f1, f2);
    if (rho == 0) throw std::domain_error("not coprime");

    BezoutCertificate cert;
    cert.f1 = f1;
    cert.f2 = f2;
    cert.rho = rho;

    if (f1.degree() == 0) {
        // rho = f1^(deg f2); g2 = 0 forced by the degree bound
        mpz_class g;
        mpz_pow_ui(g.get_mpz_t(), f1.coeffs[0].get_mpz_t(),
                   static_cast<unsigned long>(f2.degree() - 1));
        cert.g1 = IntPoly::monomial(0, g);
        cert.g2 = IntPoly();
        return cert;
    }
    if (f2.degree() == 0) {
        mpz_class g;
        mpz_pow_ui(g.get_mpz_t(), f2.coeffs[0].get_mpz_t(),
                   static_cast<unsigned long>(f1.degree() - 1));
        cert.g1 = IntPoly();
        cert.g2 = IntPoly::monomial(0, g);
        return cert;
    }

    // extended Euclid over Q: u*f1 + v*f2 = r0 with r0 a nonzero constant
    RatPoly r0(f1), r1(f2);
    RatPoly u0 = RatPoly::constant(1), u1;
    RatPoly v0, v1 = RatPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r2] = divrem(r0, r1);
        RatPoly u2 = u0 - q * u1;
        RatPoly v2 = v0 - q * v1;
        r0 = r1; r1 = r2;
        u0 = u1; u1 = u2;
        v0 = v1; v1 = v2;
    }
    if (r0.degree() != 0)
        throw std::domain_error("not coprime");

    // scale so that the right-hand side becomes the resultant
    mpq_class scale = mpq_class(rho) / r0.coeffs[0];
    RatPoly g1 = scale * u0;
    RatPoly g2 = scale * v0;

    // normalize: g1 reduced mod f2, g2 recomputed exactly
    g1 = divrem(g1, RatPoly(f2)).second;
    RatPoly rhs = RatPoly::constant(mpq_class(rho)) - g1 * RatPoly(f1);
    auto [g2n, rem] = divrem(rhs, RatPoly(f2));
    if (!rem.is_zero()) throw std::logic_error("bezout_certificate: inexact normalization");
    g2 = g2n;

    cert.g1 = g1.to_intpoly();
    cert.g2 = g2.to_intpoly();
    if (!cert.check()) throw std::logic_error("bezout_certificate: identity check failed");
    return cert;
}

/* ------------------------------------------------------- unipotent split */

UnipotentSplit unipotent_split(const IntPoly& f) {
    if (f.is_zero()) throw std::domain_error("unipotent_split: zero polynomial");
    if (!f.is_monic()) throw std::domain_error("unipotent_split: non-monic input");
    UnipotentSplit s;
    s.f2 = f;
    while (s.f2.eval(mpz_class(1)) == 0) {
        // synthetic division by (X - 1), exact since 1 is a root
        const auto& c = s.f2.coeffs;
        std::vector<mpz_class> q(c.size() - 1);
        mpz_class carry = 0;
        for (int i = static_cast<int>(c.size()) - 1; i >= 1; --i) {
            carry += c[i];
            q[i - 1] = carry;
        }
        s.f2 = IntPoly(std::move(q));
        ++s.r;
    }
    return s;
}

/* ------------------------------------------------- transport coefficients */

std::vector<RatPoly> binomial_coeffs(int r) {
    if (r < 1) throw std::domain_error("binomial_coeffs: r must be >= 1");
    // binom(T, k) = T(T-1)...(T-k+1)/k! as RatPoly, k = 0..r-1
    std::vector<RatPoly> binom(r);
    binom[0] = RatPoly::constant(1);
    for (int k = 1; k < r; ++k) {
        RatPoly t_minus;  // (T - (k-1))/k
        t_minus.coeffs = {mpq_class(-(k - 1), k), mpq_class(1, k)};
        binom[k] = binom[k - 1] * t_minus;
    }
    std::vector<RatPoly> c(r);
    for (int j = 0; j < r; ++j) {
        RatPoly acc;
        for (int k = j; k < r; ++k) {
            mpz_class ckj;
            mpz_bin_uiui(ckj.get_mpz_t(), k, j);
            if ((k - j) % 2) ckj = -ckj;
            acc = acc + mpq_class(ckj) * binom[k];
        }
        c[j] = acc;
        if (c[j].degree() > r - 1)
            throw std::logic_error("binomial_coeffs: degree bound violated");
    }
    return c;
}

}  // namespace abdeg
