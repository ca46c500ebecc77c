#include "abdeg/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace abdeg {

std::vector<mpz_class> root_power_sums(const IntPoly& f, int kmax) {
    if (!f.is_monic()) throw std::invalid_argument("root_power_sums: non-monic");
    const int d = f.degree();
    // e_i = (-1)^i * coeff of X^(d-i)
    std::vector<mpz_class> e(d + 1);
    for (int i = 0; i <= d; ++i) {
        e[i] = f.coeffs[d - i];
        if (i % 2) e[i] = -e[i];
    }
    std::vector<mpz_class> p(kmax + 1);
    for (int k = 1; k <= kmax; ++k) {
        mpz_class s = 0;
        for (int i = 1; i < k && i <= d; ++i) {
            mpz_class t = e[i] * p[k - i];
            if (i % 2) s += t; else s -= t;
        }
        if (k <= d) {
            mpz_class t = mpz_class(k) * e[k];
            if (k % 2) s += t; else s -= t;
        }
        p[k] = s;
    }
    p.erase(p.begin());
    return p;
}

IntPoly poly_from_power_sums(const std::vector<mpz_class>& q) {
    const int D = static_cast<int>(q.size());
    std::vector<mpz_class> E(D + 1);
    E[0] = 1;
    for (int k = 1; k <= D; ++k) {
        mpz_class s = 0;
        for (int i = 1; i <= k; ++i) {
            mpz_class t = E[k - i] * q[i - 1];
            if (i % 2) s += t; else s -= t;
        }
        mpz_divexact(E[k].get_mpz_t(), s.get_mpz_t(), mpz_class(k).get_mpz_t());
    }
    std::vector<mpz_class> c(D + 1);
    for (int k = 0; k <= D; ++k) {
        c[D - k] = E[k];
        if (k % 2) c[D - k] = -c[D - k];
    }
    return IntPoly(std::move(c));
}

IntPoly root_product_poly(const IntPoly& f) {
    if (!f.is_monic()) throw std::invalid_argument("root_product_poly: non-monic");
    const int d = f.degree();
    if (d == 0) return IntPoly::one();
    // power sums of {a_i a_j} are the squares of the power sums of {a_i}
    std::vector<mpz_class> p = root_power_sums(f, d * d);
    for (auto& v : p) v = v * v;
    return poly_from_power_sums(p);
}

IntPoly squarefree_part(const IntPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("squarefree_part: zero polynomial");
    if (f.degree() == 0) return IntPoly::one();
    IntPoly g = gcd_rational(f, f.derivative());
    if (g.degree() == 0) return f.primitive_part();
    return divide_exact(f.primitive_part(), g);
}

SturmChain::SturmChain(const IntPoly& squarefree) {
    seq.push_back(squarefree.primitive_part());
    IntPoly d = squarefree.derivative();
    if (!d.is_zero()) seq.push_back(d.primitive_part());
    while (seq.size() >= 2 && seq.back().degree() > 0) {
        RatPoly rem = divrem(RatPoly(seq[seq.size() - 2]), RatPoly(seq.back())).second;
        if (rem.is_zero()) break;  // only possible on non-squarefree input
        // negate and rescale to primitive integers; the scale must stay positive
        mpz_class den = 1;
        for (const auto& c : rem.coeffs)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        IntPoly next = (mpq_class(den) * rem).to_intpoly();
        mpz_class cont = next.content();
        IntPoly prim;
        prim.coeffs.reserve(next.coeffs.size());
        for (const auto& c : next.coeffs) {
            mpz_class v;
            mpz_divexact(v.get_mpz_t(), c.get_mpz_t(), cont.get_mpz_t());
            prim.coeffs.push_back(-v);
        }
        prim.normalize();
        seq.push_back(prim);
    }
}

int SturmChain::sign_changes_at(const mpq_class& x) const {
    int changes = 0, last = 0;
    for (const auto& p : seq) {
        int s = sgn(p.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

int SturmChain::count_roots(const mpq_class& a, const mpq_class& b) const {
    return sign_changes_at(a) - sign_changes_at(b);
}

std::pair<mpq_class, mpq_class> largest_real_root_enclosure(const IntPoly& f,
                                                            const mpq_class& tol) {
    if (tol <= 0) throw std::invalid_argument("largest_real_root_enclosure: tol <= 0");
    IntPoly sf = squarefree_part(f);
    if (sf.degree() == 0)
        throw std::invalid_argument("largest_real_root_enclosure: no roots");
    SturmChain chain(sf);

    // Cauchy bound: all roots have modulus < 1 + max |c_i| / |lc|
    mpq_class bound = 0;
    for (int i = 0; i < sf.degree(); ++i) {
        mpq_class c = mpq_class(abs(sf.coeffs[i])) / mpq_class(abs(sf.lc()));
        if (c > bound) bound = c;
    }
    bound += 1;

    mpq_class lo = -bound, hi = bound;
    if (chain.count_roots(lo, hi) < 1)
        throw std::invalid_argument("largest_real_root_enclosure: no real roots");
    // invariant: the largest real root lies in (lo, hi]
    while (hi - lo > tol) {
        mpq_class mid = (lo + hi) / 2;
        if (chain.count_roots(mid, hi) >= 1)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

mpq_class sqrt_lower(const mpq_class& v, unsigned prec_bits) {
    if (v < 0) throw std::invalid_argument("sqrt_lower: negative");
    if (v == 0) return 0;
    // sqrt(p/q) = sqrt(p*q)/q; floor(sqrt(p*q*4^k)) / (q*2^k) <= sqrt(p/q)
    mpz_class p = v.get_num(), q = v.get_den();
    mpz_class scaled = p * q;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * prec_bits);
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    mpz_class den = q;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), prec_bits);
    mpq_class r(root, den);
    r.canonicalize();
    return r;
}

mpq_class sqrt_upper(const mpq_class& v, unsigned prec_bits) {
    if (v < 0) throw std::invalid_argument("sqrt_upper: negative");
    if (v == 0) return 0;
    mpz_class p = v.get_num(), q = v.get_den();
    mpz_class scaled = p * q;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * prec_bits);
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    root += 1;  // ceil is at most floor + 1
    mpz_class den = q;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), prec_bits);
    mpq_class r(root, den);
    r.canonicalize();
    return r;
}

namespace {

mpq_class rational_tolerance(double tol) {
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    mpq_class t(tol);
    if (t <= 0) throw std::invalid_argument("tolerance must be positive");
    return t;
}

}  // namespace

SpectralCertificate dynamical_degree_of_matrix(const ZMat& M, double tol) {
    if (!M.is_square()) throw std::invalid_argument("dynamical_degree: non-square");
    if (det(M) == 0) throw std::invalid_argument("M singular");
    const mpq_class qtol = rational_tolerance(tol);
    IntPoly gamma = root_product_poly(charpoly(M));
    auto [lo, hi] = largest_real_root_enclosure(gamma, qtol);
    if (lo < 0) lo = 0;  // delta = rho^2 >= 1; the enclosure may dip below at huge tol
    SpectralCertificate cert;
    cert.lower = lo;
    cert.upper = hi;
    cert.value = (lo.get_d() + hi.get_d()) / 2;
    return cert;
}

SpectralCertificate spectral_radius_certified(const ZMat& M, double tol) {
    const mpq_class qtol = rational_tolerance(tol);
    // enclose rho^2 to a width that keeps the square root within tol
    SpectralCertificate sq = dynamical_degree_of_matrix(M, tol);
    // sqrt precision: 2^-prec below the bisection tolerance
    unsigned prec = 8;
    mpq_class eps = qtol / 8;
    while (mpq_class(1, 1) / (mpz_class(1) << prec) > eps && prec < 256) prec += 8;
    SpectralCertificate cert;
    cert.lower = sqrt_lower(sq.lower, prec);
    cert.upper = sqrt_upper(sq.upper, prec);
    // rho >= 1 for a nonsingular integer matrix (|det| >= 1), so the square
    // root at most shrinks the width; tighten only if rounding overshot
    int guard = 0;
    while (cert.upper - cert.lower > qtol && guard++ < 8) {
        prec *= 2;
        cert.lower = sqrt_lower(sq.lower, prec);
        cert.upper = sqrt_upper(sq.upper, prec);
    }
    cert.value = (cert.lower.get_d() + cert.upper.get_d()) / 2;
    return cert;
}

std::vector<GelfandSample> gelfand_oracle(const ZMat& M, int n_max) {
    if (!M.is_square()) throw std::invalid_argument("gelfand_oracle: non-square");
    if (n_max < 2) throw std::invalid_argument("gelfand_oracle: n_max must be >= 2");
    std::vector<GelfandSample> out;
    out.reserve(n_max);
    ZMat p = M;
    for (int n = 1; n <= n_max; ++n) {
        mpz_class f2 = 0;
        for (const auto& v : p.a) f2 += v * v;
        GelfandSample s;
        s.n = n;
        s.frob2 = f2;
        if (f2 == 0) {
            s.root = 0;
        } else {
            long exp2;
            double mant = mpz_get_d_2exp(&exp2, f2.get_mpz_t());
            s.root = std::exp((std::log(mant) + static_cast<double>(exp2) * std::log(2.0)) / n);
        }
        out.push_back(std::move(s));
        if (n < n_max) p = p * M;
    }
    return out;
}

}  // namespace abdeg
