#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abdeg/height.hpp"
#include "abdeg/intpoly.hpp"
#include "abdeg/matrix.hpp"
#include "abdeg/spectral.hpp"

namespace abdeg {

enum class GrowthMode { exponential, polynomial };

/* Arithmetic-degree estimate from an exact height sequence. The exponential
 * regime combines a regression estimate (first-difference fit, which absorbs
 * polynomial factors n^c exactly, capped by the minimum long-range secant)
 * with an exact certification layer: the heights satisfy a linear recurrence,
 * recovered exactly by Berlekamp-Massey over Q; its characteristic polynomial
 * divides the eigenvalue pair-product polynomial, and a Sturm count decides
 * whether the orbit excites a dominant root. When it does, alpha equals delta
 * exactly and `certified` is set. Polynomial regime reports value 1 with the
 * fitted degree.
 */
struct AlphaEstimate {
    double value = 1.0;  // >= 1 always
    int n_used = 0;
    GrowthMode mode = GrowthMode::polynomial;
    std::optional<int> poly_degree_fit;
    double residual = 0.0;
    bool certified = false;
};

// natural log of a positive exact rational
double log_mpq(const mpq_class& v);

// regression estimate only
AlphaEstimate alpha_from_heights(const std::vector<mpq_class>& heights, int tail_window);

/* Minimal linear recurrence of an exact rational sequence (Berlekamp-Massey).
 * Returns the monic characteristic polynomial X^L + c_1 X^(L-1) + ... + c_L
 * with s_n = -(c_1 s_(n-1) + ... + c_L s_(n-L)) for all covered n, or nullopt
 * when the order is not well-determined by the sample count (2L+1 > N).
 */
std::optional<RatPoly> minimal_recurrence(const std::vector<mpq_class>& seq);

// regression estimate plus the exact recurrence certification layer
AlphaEstimate alpha_certified(const std::vector<mpq_class>& heights, int tail_window,
                              const IntPoly& charpoly_f, const SpectralCertificate& delta);

AlphaEstimate arithmetic_degree_estimate(const AbelianModel& A, const SelfMap& phi,
                                         const PointCoords& P, int n_max, int tail_window);

// delta = rho(M)^2 certified; a function of the isogeny matrix only.
SpectralCertificate dynamical_degree(const SelfMap& phi, double tol);

struct GrowthProfile {
    int fitted_degree = 0;     // least-squares degree of log h_n vs log n
    double bound_constant = 0; // empirical C with h_n <= C n^(2r) over the range
};

// Polynomial growth profile of a unipotent translation map; requires
// (M - I)^r = 0 exactly for the supplied r.
GrowthProfile growth_profile(const AbelianModel& A, const SelfMap& phi, int r,
                             const PointCoords& P, int n_max);

// m * phi^n(P) = M^n (mP + Q') - Q' exactly for all n <= n_max; requires
// m Q = (M - I) Q' exactly.
bool special_case_check(const AbelianModel& A, const SelfMap& phi, const PointCoords& P,
                        const mpz_class& m, const PointCoords& qprime, int n_max);

enum class Route { translation_solved, decomposition, pure_unipotent };
enum class Density { dense_by_construction, non_dense, unknown };

std::string to_string(Route r);
std::string to_string(Density d);
std::string to_string(GrowthMode m);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    int n_max = 80;
    double tol = 1e-9;
    double tail_fraction = 0.25;
    Density density = Density::unknown;
};

// Pinned verification tolerances.
inline constexpr double kDegreeInequalityTol = 1e-6;  // alpha <= delta + this
inline constexpr double kDegreeEqualityRelTol = 1e-3; // |alpha-delta|/delta
inline constexpr double kMaxLawTol = 1e-3;            // product/conjugation alpha laws

struct DegreeReport {
    SpectralCertificate delta;
    AlphaEstimate alpha;
    Route route = Route::translation_solved;
    Density density = Density::unknown;
    double relative_gap = 0.0;
    bool equality_checked = false;  // asserted only for dense-by-construction
    bool equality_ok = true;
    bool inequality_ok = true;
    bool all_ok = true;
    std::vector<CheckResult> checks;

    // decomposition artifacts
    IntPoly charpoly_f;
    UnipotentSplit split;
    std::optional<BezoutCertificate> bezout;
    std::optional<ZMat> basis1, basis2;
    std::optional<ZMat> m1, m2;
    std::optional<PointCoords> q1, q2, p1, p2;
    std::vector<DegreeReport> factors;

    // orbit data for exports
    std::vector<mpq_class> heights;
    std::vector<double> running_alpha;
};

/* Full verification pipeline: characteristic polynomial and unipotent split,
 * route selection (translation solvable / pure unipotent / decomposition with
 * per-factor recursion, max laws and conjugation invariances), degree
 * comparison. Equality is asserted only when the scenario is declared
 * dense-by-construction; the inequality alpha <= delta is always checked.
 */
DegreeReport verify_theorem(const AbelianModel& A, const SelfMap& phi, const PointCoords& P,
                            const VerifyOptions& opts);

}  // namespace abdeg
