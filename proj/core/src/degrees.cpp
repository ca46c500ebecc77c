#include "abdeg/degrees.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace abdeg {

double log_mpq(const mpq_class& v) {
    if (v <= 0) throw std::domain_error("log_mpq: nonpositive");
    long en, ed;
    double mn = mpz_get_d_2exp(&en, v.get_num_mpz_t());
    double md = mpz_get_d_2exp(&ed, v.get_den_mpz_t());
    return std::log(mn) - std::log(md) + (static_cast<double>(en - ed)) * std::log(2.0);
}

std::string to_string(Route r) {
    switch (r) {
        case Route::translation_solved: return "translation_solved";
        case Route::decomposition: return "decomposition";
        case Route::pure_unipotent: return "pure_unipotent";
    }
    return "?";
}

std::string to_string(Density d) {
    switch (d) {
        case Density::dense_by_construction: return "dense_by_construction";
        case Density::non_dense: return "non_dense";
        case Density::unknown: return "unknown";
    }
    return "?";
}

std::string to_string(GrowthMode m) {
    return m == GrowthMode::exponential ? "exponential" : "polynomial";
}

namespace {

struct LinFit {
    double intercept = 0, slope = 0, rms = 0;
};

LinFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    LinFit f;
    if (n == 0) return f;
    if (n == 1) {
        f.intercept = y[0];
        return f;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double den = n * sxx - sx * sx;
    if (den == 0) {
        f.intercept = sy / n;
    } else {
        f.slope = (n * sxy - sx * sy) / den;
        f.intercept = (sy - f.slope * sx) / n;
    }
    double ss = 0;
    for (size_t i = 0; i < n; ++i) {
        double r = y[i] - f.intercept - f.slope * x[i];
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

}  // namespace

AlphaEstimate alpha_from_heights(const std::vector<mpq_class>& heights, int tail_window) {
    const int n_max = static_cast<int>(heights.size()) - 1;
    if (n_max < 1) return {};
    tail_window = std::min(tail_window, n_max);

    AlphaEstimate est;
    est.n_used = n_max;

    // usable samples: positive heights with their logs
    std::vector<int> idx;
    std::vector<double> logh(n_max + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) {
        if (heights[n] > 0) {
            idx.push_back(n);
            logh[n] = log_mpq(heights[n]);
        }
    }
    const int tail_from = n_max - tail_window + 1;
    int tail_positive = 0;
    for (int n : idx)
        if (n >= tail_from) ++tail_positive;
    if (tail_positive < 2) {
        // orbit tail through zero: constant/finite arithmetic complexity
        est.value = 1.0;
        est.mode = GrowthMode::polynomial;
        est.poly_degree_fit = 0;
        est.residual = 0.0;
        return est;
    }

    // regime detection on the broad range: log h against n vs against log n
    std::vector<double> xs_n, xs_ln, ys;
    for (int n : idx) {
        if (n < std::max(1, n_max / 8)) continue;
        xs_n.push_back(static_cast<double>(n));
        xs_ln.push_back(std::log(static_cast<double>(n)));
        ys.push_back(logh[n]);
    }
    LinFit fe = least_squares(xs_n, ys);
    LinFit fp = least_squares(xs_ln, ys);
    bool exponential = fe.rms <= fp.rms;
    if (fe.slope < std::log1p(1e-4)) exponential = false;

    if (!exponential) {
        std::vector<double> tx, ty;
        for (int n : idx) {
            if (n < tail_from) continue;
            tx.push_back(std::log(static_cast<double>(n)));
            ty.push_back(logh[n]);
        }
        LinFit ft = least_squares(tx, ty);
        est.value = 1.0;
        est.mode = GrowthMode::polynomial;
        est.poly_degree_fit = std::max(0, static_cast<int>(std::lround(ft.slope)));
        est.residual = ft.rms;
        return est;
    }

    // exponential regime: fit first differences D(n) = L(n) - L(n-1) against
    // ln(n/(n-1)); the intercept is the exponential rate and the slope soaks
    // up any polynomial factor n^c exactly
    std::vector<double> dx, dy;
    for (size_t t = 1; t < idx.size(); ++t) {
        int n = idx[t], p = idx[t - 1];
        if (n < tail_from || n - p != 1) continue;
        dx.push_back(std::log(static_cast<double>(n) / static_cast<double>(p)));
        dy.push_back(logh[n] - logh[p]);
    }
    LinFit fd = least_squares(dx, dy);
    double slope = dy.empty() ? fe.slope : fd.intercept;

    // one-sided cap: minimum long-range secant over the tail
    double guard = slope;
    const int min_gap = std::max(2, tail_window / 4);
    for (size_t a = 0; a < idx.size(); ++a) {
        if (idx[a] < tail_from) continue;
        for (size_t b = a + 1; b < idx.size(); ++b) {
            int gap = idx[b] - idx[a];
            if (gap < min_gap) continue;
            double s = (logh[idx[b]] - logh[idx[a]]) / gap;
            guard = std::min(guard, s);
        }
    }
    est.value = std::max(1.0, std::exp(std::min(slope, guard)));
    est.mode = GrowthMode::exponential;
    est.residual = fd.rms;
    return est;
}

std::optional<RatPoly> minimal_recurrence(const std::vector<mpq_class>& seq) {
    const int N = static_cast<int>(seq.size());
    if (N == 0) return std::nullopt;
    // Berlekamp-Massey over Q: C(x) = 1 + c_1 x + ... with
    // s_n + c_1 s_(n-1) + ... + c_L s_(n-L) = 0
    std::vector<mpq_class> C{1}, B{1};
    int L = 0, m = 1;
    mpq_class b = 1;
    for (int n = 0; n < N; ++n) {
        mpq_class d = seq[n];
        for (int i = 1; i <= L && i < static_cast<int>(C.size()); ++i)
            if (C[i] != 0) d += C[i] * seq[n - i];
        if (d == 0) {
            ++m;
        } else if (2 * L <= n) {
            std::vector<mpq_class> T = C;
            mpq_class coef = d / b;
            if (static_cast<int>(C.size()) < static_cast<int>(B.size()) + m)
                C.resize(B.size() + m, mpq_class(0));
            for (size_t i = 0; i < B.size(); ++i) C[i + m] -= coef * B[i];
            L = n + 1 - L;
            B = T;
            b = d;
            m = 1;
        } else {
            mpq_class coef = d / b;
            if (static_cast<int>(C.size()) < static_cast<int>(B.size()) + m)
                C.resize(B.size() + m, mpq_class(0));
            for (size_t i = 0; i < B.size(); ++i) C[i + m] -= coef * B[i];
            ++m;
        }
    }
    if (2 * L + 1 > N) return std::nullopt;  // not pinned down by the samples
    // characteristic polynomial: reverse C
    std::vector<mpq_class> chi(L + 1);
    for (int i = 0; i <= L; ++i) chi[L - i] = (i < static_cast<int>(C.size())) ? C[i] : 0;
    RatPoly out(std::move(chi));
    if (out.degree() != L) return std::nullopt;  // leading term must be the monic 1
    return out;
}

AlphaEstimate alpha_certified(const std::vector<mpq_class>& heights, int tail_window,
                              const IntPoly& charpoly_f, const SpectralCertificate& delta) {
    AlphaEstimate est = alpha_from_heights(heights, tail_window);
    if (est.mode != GrowthMode::exponential) return est;

    auto chi = minimal_recurrence(heights);
    if (!chi) return est;
    // every admissible growth root is an eigenvalue pair-product, a single
    // eigenvalue, or 1; the exact division is the certification
    IntPoly ambient = root_product_poly(charpoly_f) * charpoly_f * IntPoly::x_minus(1);
    auto [q, rem] = divrem(RatPoly(ambient), *chi);
    (void)q;
    if (!rem.is_zero()) return est;

    // clear denominators and count real roots inside the certified rho^2 window
    mpz_class den = 1;
    for (const auto& c : chi->coeffs)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    IntPoly chi_int = (mpq_class(den) * *chi).to_intpoly();
    bool dominant = false;
    if (chi_int.degree() >= 1) {
        SturmChain chain(squarefree_part(chi_int));
        dominant = chain.count_roots(delta.lower, delta.upper) >= 1;
    }
    est.certified = true;
    if (dominant) {
        est.value = std::max(1.0, delta.value);
    } else {
        // orbit provably misses every dominant root: alpha < delta
        est.value = std::min(est.value, std::max(1.0, delta.upper.get_d()));
    }
    return est;
}

AlphaEstimate arithmetic_degree_estimate(const AbelianModel& A, const SelfMap& phi,
                                         const PointCoords& P, int n_max, int tail_window) {
    if (n_max < tail_window || tail_window < 4)
        throw std::invalid_argument("arithmetic_degree_estimate: need n_max >= tail_window >= 4");
    std::vector<mpq_class> h;
    h.reserve(n_max + 1);
    PointCoords x = P;
    h.push_back(height(A, x));
    for (int n = 1; n <= n_max; ++n) {
        x = apply(phi.M, x) + phi.Q;
        h.push_back(height(A, x));
    }
    phi.validate();
    return alpha_certified(h, tail_window, charpoly(phi.M), dynamical_degree(phi, 1e-9));
}

SpectralCertificate dynamical_degree(const SelfMap& phi, double tol) {
    return dynamical_degree_of_matrix(phi.M, tol);
}

GrowthProfile growth_profile(const AbelianModel& A, const SelfMap& phi, int r,
                             const PointCoords& P, int n_max) {
    if (r < 0) throw std::invalid_argument("growth_profile: negative r");
    const IntPoly nilpotency = IntPoly::x_minus(1).pow(static_cast<unsigned>(r));
    if (!eval_poly_matrix(nilpotency, phi.M).is_zero())
        throw std::invalid_argument("growth_profile: (M - I)^r != 0");

    GrowthProfile out;
    PointCoords x = P;
    mpq_class cmax = 0;
    std::vector<double> lx, ly;
    mpq_class h0 = height(A, x);
    for (int n = 1; n <= n_max; ++n) {
        x = apply(phi.M, x) + phi.Q;
        mpq_class h = height(A, x);
        // empirical constant for h_n <= C n^(2r)
        mpz_class nn = 1;
        for (int i = 0; i < 2 * r; ++i) nn *= n;
        mpq_class c = h / mpq_class(nn);
        if (c > cmax) cmax = c;
        if (h > 0 && n >= std::max(1, n_max / 4)) {
            lx.push_back(std::log(static_cast<double>(n)));
            ly.push_back(log_mpq(h));
        }
    }
    (void)h0;
    LinFit f = least_squares(lx, ly);
    out.fitted_degree = lx.empty() ? 0 : std::max(0, static_cast<int>(std::lround(f.slope)));
    out.bound_constant = cmax.get_d();
    return out;
}

bool special_case_check(const AbelianModel& A, const SelfMap& phi, const PointCoords& P,
                        const mpz_class& m, const PointCoords& qprime, int n_max) {
    (void)A;
    if (m == 0) throw std::invalid_argument("special_case_check: m must be nonzero");
    const ZMat shifted = phi.M - ZMat::identity(phi.M.n);
    if (!(m * phi.Q == apply(shifted, qprime)))
        throw std::invalid_argument("special_case_check: m Q != (M - I) Q'");
    PointCoords x = P;                     // phi^n(P)
    PointCoords y = m * P + qprime;        // M^n (mP + Q')
    for (int n = 0; n <= n_max; ++n) {
        if (!(m * x == y - qprime)) return false;
        x = apply(phi.M, x) + phi.Q;
        y = apply(phi.M, y);
    }
    return true;
}

/* --------------------------------------------------------- verify_theorem */

namespace {

void add_check(DegreeReport& rep, const std::string& name, bool pass,
               const std::string& detail = "") {
    rep.checks.push_back({name, pass, detail});
    if (!pass) rep.all_ok = false;
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

std::vector<double> running_alpha_sequence(const std::vector<mpq_class>& heights,
                                           double tail_fraction) {
    std::vector<double> out(heights.size(), 1.0);
    for (size_t n = 2; n < heights.size(); ++n) {
        std::vector<mpq_class> prefix(heights.begin(), heights.begin() + n + 1);
        int tail = std::max(2, static_cast<int>(std::lround(tail_fraction * n)));
        out[n] = alpha_from_heights(prefix, tail).value;
    }
    return out;
}

int tail_window_from(const VerifyOptions& opts) {
    return std::max(4, static_cast<int>(std::lround(opts.tail_fraction * opts.n_max)));
}

}  // namespace

DegreeReport verify_theorem(const AbelianModel& A, const SelfMap& phi, const PointCoords& P,
                            const VerifyOptions& opts) {
    A.validate();
    phi.validate();
    if (phi.M.m != A.d || P.c.m != A.d || P.c.n != A.mw.k || phi.Q.c.n != A.mw.k)
        throw std::invalid_argument("verify_theorem: dimension mismatch");

    DegreeReport rep;
    rep.density = opts.density;
    rep.charpoly_f = charpoly(phi.M);
    rep.split = unipotent_split(rep.charpoly_f);
    rep.delta = dynamical_degree(phi, opts.tol);

    // exact orbit heights, shared by the estimate and the exports
    rep.heights.reserve(opts.n_max + 1);
    PointCoords x = P;
    rep.heights.push_back(height(A, x));
    for (int n = 1; n <= opts.n_max; ++n) {
        x = apply(phi.M, x) + phi.Q;
        rep.heights.push_back(height(A, x));
    }
    rep.alpha = alpha_certified(rep.heights, tail_window_from(opts), rep.charpoly_f, rep.delta);
    rep.running_alpha = running_alpha_sequence(rep.heights, opts.tail_fraction);

    auto ts = solve_translation(phi.M, phi.Q, SolveMode::hull);
    if (ts) {
        rep.route = Route::translation_solved;
        bool tele = special_case_check(A, phi, P, ts->m, ts->qprime, std::min(50, opts.n_max));
        add_check(rep, "telescoping-identity", tele);
    } else if (rep.split.r == A.d) {
        rep.route = Route::pure_unipotent;
        GrowthProfile prof = growth_profile(A, phi, rep.split.r, P, opts.n_max);
        add_check(rep, "polynomial-growth-bound", prof.fitted_degree <= 2 * rep.split.r,
                  "fitted degree " + std::to_string(prof.fitted_degree) + " vs bound " +
                      std::to_string(2 * rep.split.r));
        add_check(rep, "unipotent-delta-one", rep.delta.encloses(1),
                  "delta in [" + rep.delta.lower.get_str() + ", " + rep.delta.upper.get_str() + "]");
        add_check(rep, "unipotent-alpha-one", rep.alpha.value == 1.0,
                  "alpha " + fmt_double(rep.alpha.value));
    } else {
        rep.route = Route::decomposition;
        const int r = rep.split.r;
        const IntPoly f1 = IntPoly::x_minus(1).pow(static_cast<unsigned>(r));
        const IntPoly& f2 = rep.split.f2;
        BezoutCertificate cert = bezout_certificate(f1, f2);
        rep.bezout = cert;

        RestrictedMapZ rm1 = restrict_map_saturated(phi.M, f1);
        RestrictedMapZ rm2 = restrict_map_saturated(phi.M, f2);
        rep.basis1 = rm1.basis;
        rep.basis2 = rm2.basis;
        rep.m1 = rm1.map;
        rep.m2 = rm2.map;
        const int d1 = rm1.basis.n, d2 = rm2.basis.n;
        add_check(rep, "decomposition-dimensions", d1 + d2 == A.d,
                  std::to_string(d1) + " + " + std::to_string(d2) + " = " + std::to_string(A.d));

        auto [q1, q2] = split_translation(phi.M, phi.Q, rep.split, cert);
        auto [p1, p2] = split_translation(phi.M, P, rep.split, cert);
        rep.q1 = q1; rep.q2 = q2; rep.p1 = p1; rep.p2 = p2;

        auto q1c = solve(QMat(rm1.basis), q1.c);
        auto q2c = solve(QMat(rm2.basis), q2.c);
        auto p1c = solve(QMat(rm1.basis), p1.c);
        auto p2c = solve(QMat(rm2.basis), p2.c);
        if (!q1c || !q2c || !p1c || !p2c)
            throw std::logic_error("verify_theorem: split points outside factor spans");

        AbelianModel A1{d1, A.mw}, A2{d2, A.mw};
        SelfMap phi1{rm1.map, PointCoords(*q1c)};
        SelfMap phi2{rm2.map, PointCoords(*q2c)};
        PointCoords P1(*p1c), P2(*p2c);

        VerifyOptions sub = opts;  // density is inherited through the isogeny
        rep.factors.push_back(verify_theorem(A1, phi1, P1, sub));
        rep.factors.push_back(verify_theorem(A2, phi2, P2, sub));
        const DegreeReport& fac1 = rep.factors[0];
        const DegreeReport& fac2 = rep.factors[1];
        add_check(rep, "factor-1-verified", fac1.all_ok);
        add_check(rep, "factor-2-verified", fac2.all_ok);

        // delta max law against the factor certificates
        mpq_class maxL = std::max(fac1.delta.lower, fac2.delta.lower);
        mpq_class maxU = std::max(fac1.delta.upper, fac2.delta.upper);
        mpq_class slack = mpq_class(2) * mpq_class(opts.tol);
        bool overlap = rep.delta.lower <= maxU + slack && maxL <= rep.delta.upper + slack;
        add_check(rep, "delta-max-law", overlap);

        // product map on A1 x A2, conjugated back by L = [B1 | B2]
        SelfMap phiP = product_selfmap(A1, phi1, A2, phi2);
        AbelianModel AP{d1 + d2, A.mw};
        PointCoords PP = vstack(P1, P2);
        ZMat L = hstack(rm1.basis, rm2.basis);
        bool diagram = false;
        try {
            SelfMap back = conjugate_selfmap(phiP, L, phi.M);
            diagram = (back.Q == phi.Q) && (apply(L, PP) == P);
        } catch (const std::invalid_argument&) {
            diagram = false;
        }
        add_check(rep, "conjugation-diagram", diagram);

        SpectralCertificate deltaP = dynamical_degree(phiP, opts.tol);
        add_check(rep, "delta-conjugation-invariance",
                  deltaP.overlaps(rep.delta, slack));

        AlphaEstimate alphaP =
            arithmetic_degree_estimate(AP, phiP, PP, opts.n_max, tail_window_from(opts));
        double maxFac = std::max(fac1.alpha.value, fac2.alpha.value);
        add_check(rep, "alpha-product-max-law", std::abs(alphaP.value - maxFac) <= kMaxLawTol,
                  fmt_double(alphaP.value) + " vs " + fmt_double(maxFac));
        add_check(rep, "alpha-conjugation-invariance",
                  std::abs(alphaP.value - rep.alpha.value) <= kMaxLawTol,
                  fmt_double(alphaP.value) + " vs " + fmt_double(rep.alpha.value));
    }

    // the degree inequality is checked for every scenario
    double upper = rep.delta.upper.get_d();
    rep.inequality_ok = rep.alpha.value <= upper + kDegreeInequalityTol;
    add_check(rep, "degree-inequality", rep.inequality_ok,
              "alpha " + fmt_double(rep.alpha.value) + " <= delta " + fmt_double(upper));

    rep.relative_gap = std::abs(rep.alpha.value - rep.delta.value) / rep.delta.value;
    rep.equality_checked = (opts.density == Density::dense_by_construction);
    if (rep.equality_checked) {
        rep.equality_ok = rep.relative_gap <= kDegreeEqualityRelTol;
        add_check(rep, "degree-equality", rep.equality_ok,
                  "relative gap " + fmt_double(rep.relative_gap));
    }
    return rep;
}

}  // namespace abdeg
