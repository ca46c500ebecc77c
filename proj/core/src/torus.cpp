#include "abdeg/torus.hpp"

#include <stdexcept>

namespace abdeg {

namespace {

mpq_class frac_part(const mpq_class& x) {
    // x - floor(x), in [0, 1)
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return x - mpq_class(fl);
}

}  // namespace

TorusPoint::TorusPoint(std::vector<mpq_class> c) : coords(std::move(c)) {
    for (auto& x : coords) x = frac_part(x);
}

bool TorusPoint::is_zero() const {
    for (const auto& x : coords)
        if (x != 0) return false;
    return true;
}

bool operator==(const TorusPoint& a, const TorusPoint& b) { return a.coords == b.coords; }

TorusPoint operator+(const TorusPoint& a, const TorusPoint& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("TorusPoint+: dim mismatch");
    std::vector<mpq_class> c(a.coords);
    for (int i = 0; i < b.dim(); ++i) c[i] += b.coords[i];
    return TorusPoint(std::move(c));
}

TorusPoint operator*(const mpz_class& c, const TorusPoint& a) {
    std::vector<mpq_class> r(a.coords);
    for (auto& x : r) x *= mpq_class(c);
    return TorusPoint(std::move(r));
}

TorusPoint apply(const ZMat& M, const TorusPoint& x) {
    if (M.n != x.dim()) throw std::invalid_argument("apply: dim mismatch");
    std::vector<mpq_class> r(M.m, mpq_class(0));
    for (int i = 0; i < M.m; ++i)
        for (int j = 0; j < M.n; ++j)
            if (M.at(i, j) != 0) r[i] += mpq_class(M.at(i, j)) * x.coords[j];
    return TorusPoint(std::move(r));
}

Sublattice::Sublattice(int ambient_dim, const ZMat& generators) : ambient(ambient_dim) {
    if (generators.m != ambient_dim)
        throw std::invalid_argument("Sublattice: ambient dimension mismatch");
    basis = hnf_columns(generators);
}

bool operator==(const Sublattice& a, const Sublattice& b) {
    return a.ambient == b.ambient && a.basis == b.basis;
}

ZMat rational_rep(const ZMat& M) {
    if (!M.is_square()) throw std::invalid_argument("rational_rep: non-square");
    if (det(M) == 0) throw std::invalid_argument("not an isogeny");
    return kron(M, ZMat::identity(2));
}

Sublattice image_sublattice(const IntPoly& f, const ZMat& R) {
    if (!R.is_square()) throw std::invalid_argument("image_sublattice: non-square");
    return Sublattice(R.m, eval_poly_matrix(f, R));
}

SumCertificate verify_sum_full(const Sublattice& L1, const Sublattice& L2) {
    if (L1.ambient != L2.ambient)
        throw std::invalid_argument("verify_sum_full: ambient mismatch");
    SumCertificate cert;
    ZMat H = hnf_columns(hstack(L1.basis, L2.basis));
    cert.full_rank = (H.n == L1.ambient);
    if (cert.full_rank) {
        cert.index = 1;
        for (int i = 0; i < H.n; ++i) cert.index *= H.at(i, i);
    } else {
        cert.index = 0;
    }
    return cert;
}

ImageSubgroup::ImageSubgroup(const ZMat& B) : ambient(B.m) {
    sat = saturation(B);
    ZMat ann_cols = integer_kernel(B.transpose());
    annih = ann_cols.transpose();  // rows y^T with y^T B = 0
    if (annih.m > 0) {
        // x in V + Z^m  <=>  annih*x in annih*Z^m; solve against the HNF
        // basis of the full-rank lattice annih * Z^m.
        ZMat H = hnf_columns(annih);
        if (H.n != annih.m) throw std::logic_error("ImageSubgroup: annihilator not full rank");
        auto Hinv = inverse(QMat(H));
        if (!Hinv) throw std::logic_error("ImageSubgroup: HNF basis not invertible");
        membership = *Hinv * QMat(annih);
    }
}

bool ImageSubgroup::contains(const TorusPoint& x) const {
    if (x.dim() != ambient) throw std::invalid_argument("contains: dim mismatch");
    if (annih.m == 0) return true;  // image is the whole torus
    for (int i = 0; i < membership.m; ++i) {
        mpq_class v = 0;
        for (int j = 0; j < ambient; ++j)
            if (membership.at(i, j) != 0) v += membership.at(i, j) * x.coords[j];
        if (v.get_den() != 1) return false;
    }
    return true;
}

std::vector<TorusPoint> ImageSubgroup::points_of_denominator(unsigned q) const {
    if (q == 0) throw std::invalid_argument("points_of_denominator: q must be positive");
    const int r = sat.n;
    std::vector<TorusPoint> pts;
    std::vector<unsigned> t(r, 0);
    const mpq_class inv_q(1, q);
    for (;;) {
        std::vector<mpq_class> c(ambient, mpq_class(0));
        for (int j = 0; j < r; ++j) {
            if (t[j] == 0) continue;
            for (int i = 0; i < ambient; ++i)
                c[i] += mpq_class(sat.at(i, j)) * mpq_class(t[j]) * inv_q;
        }
        pts.emplace_back(std::move(c));
        int j = 0;
        while (j < r && ++t[j] == q) t[j++] = 0;
        if (j == r) break;
    }
    return pts;
}

bool verify_intersection_torsion(const IntPoly& f1, const IntPoly& f2, const ZMat& R,
                                 const mpz_class& rho, unsigned sample_denominator) {
    if (sample_denominator == 0)
        throw std::invalid_argument("verify_intersection_torsion: zero denominator");
    ImageSubgroup g1(eval_poly_matrix(f1, R));
    ImageSubgroup g2(eval_poly_matrix(f2, R));
    const ImageSubgroup& small = (g1.sat.n <= g2.sat.n) ? g1 : g2;
    const ImageSubgroup& other = (g1.sat.n <= g2.sat.n) ? g2 : g1;
    for (const TorusPoint& x : small.points_of_denominator(sample_denominator)) {
        if (!other.contains(x)) continue;
        if (!(rho * x).is_zero()) return false;
    }
    return true;
}

bool verify_unipotent_kernel_bound(const IntPoly& F1, const IntPoly& F2,
                                   const BezoutCertificate& cert, const ZMat& R,
                                   unsigned sample_denominator) {
    if (sample_denominator == 0)
        throw std::invalid_argument("verify_unipotent_kernel_bound: zero denominator");
    if (!cert.check()) throw std::invalid_argument("verify_unipotent_kernel_bound: bad certificate");
    if (!eval_poly_matrix(F1 * F2, R).is_zero())
        throw std::invalid_argument("verify_unipotent_kernel_bound: F1*F2 does not annihilate R");
    ImageSubgroup g1(eval_poly_matrix(F1, R));
    const ZMat shifted = R - ZMat::identity(R.n);
    const mpz_class rho2 = cert.rho * cert.rho;
    for (const TorusPoint& x : g1.points_of_denominator(sample_denominator)) {
        if (!apply(shifted, x).is_zero()) continue;  // not in ker(f - 1)
        if (!(rho2 * x).is_zero()) return false;
    }
    return true;
}

bool restricted_unit_invertibility(const ZMat& M, const QMat& subspace_basis) {
    if (!M.is_square() || M.m != subspace_basis.m)
        throw std::invalid_argument("restricted_unit_invertibility: shape mismatch");
    const QMat MB = QMat(M) * subspace_basis;
    auto coords = solve(subspace_basis, MB);
    if (!coords) throw std::invalid_argument("basis not M-invariant");
    // restriction of (M - I): matrix of M in the basis, minus identity
    QMat rest = *coords - QMat::identity(subspace_basis.n);
    return inverse(rest).has_value();
}

}  // namespace abdeg
