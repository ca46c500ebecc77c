#include <doctest.h>

#include <random>

#include "abdeg/torus.hpp"

using namespace abdeg;

namespace {

mpq_class q(long n, long d = 1) {
    mpq_class v(n, d);
    v.canonicalize();
    return v;
}

}  // namespace

TEST_CASE("rational representation M (x) I2") {
    CHECK(rational_rep(ZMat(1, 1, {2})) == ZMat(2, 2, {2, 0, 0, 2}));
    CHECK(rational_rep(ZMat::identity(3)) == ZMat::identity(6));
    ZMat r = rational_rep(ZMat(2, 2, {2, 1, 1, 1}));
    CHECK(charpoly(r) == IntPoly{1, -3, 1} * IntPoly{1, -3, 1});
    CHECK_THROWS_WITH_AS(rational_rep(ZMat(2, 2, {1, 1, 1, 1})), "not an isogeny",
                         std::invalid_argument);

    SUBCASE("multiplicative") {
        std::mt19937 rng(17);
        std::uniform_int_distribution<int> e(-3, 3);
        for (int t = 0; t < 20; ++t) {
            ZMat a(2, 2), b(2, 2);
            for (auto& v : a.a) v = e(rng);
            for (auto& v : b.a) v = e(rng);
            if (det(a) == 0 || det(b) == 0 || det(a * b) == 0) continue;
            CHECK(rational_rep(a * b) == rational_rep(a) * rational_rep(b));
        }
    }
}

TEST_CASE("image sublattices") {
    CHECK(image_sublattice(IntPoly::x_minus(1), ZMat::identity(4)).rank() == 0);
    // illustration without doubling: f = X-1 on [[1,1],[0,2]]
    Sublattice l = image_sublattice(IntPoly::x_minus(1), ZMat(2, 2, {1, 1, 0, 2}));
    CHECK(l.basis == ZMat(2, 1, {1, 1}));
    CHECK(image_sublattice(IntPoly::one(), ZMat::identity(4)).basis == ZMat::identity(4));
}

TEST_CASE("sum of sublattices is everything") {
    Sublattice l1(2, ZMat(2, 1, {1, 1}));
    Sublattice l2(2, ZMat(2, 1, {1, 0}));
    auto cert = verify_sum_full(l1, l2);
    CHECK(cert.full_rank);
    CHECK(cert.index == 1);

    auto bad = verify_sum_full(l1, l1);
    CHECK_FALSE(bad.full_rank);

    Sublattice full(2, ZMat::identity(2));
    Sublattice zero(2, ZMat(2, 0));
    auto triv = verify_sum_full(full, zero);
    CHECK(triv.full_rank);
    CHECK(triv.index == 1);
}

TEST_CASE("intersection torsion bound") {
    SUBCASE("worked example: coprime split of [[1,1],[0,2]]") {
        ZMat M(2, 2, {1, 1, 0, 2});
        // no doubling here, mirroring the sublattice illustration
        CHECK(verify_intersection_torsion(IntPoly::x_minus(1), IntPoly::x_minus(2), M,
                                          resultant(IntPoly::x_minus(1), IntPoly::x_minus(2)),
                                          6));
    }
    SUBCASE("image of X-1 under the identity is trivial") {
        CHECK(verify_intersection_torsion(IntPoly::x_minus(1), IntPoly::x_minus(3),
                                          ZMat::identity(2), 2, 6));
    }
    SUBCASE("zero denominator is rejected") {
        CHECK_THROWS_AS(verify_intersection_torsion(IntPoly::x_minus(1), IntPoly::x_minus(2),
                                                    ZMat::identity(2), 1, 0),
                        std::invalid_argument);
    }
}

TEST_CASE("bezout identity transported to the torus") {
    // rho x = G1(R)F1(R)x + G2(R)F2(R)x holds for every point when F(R) = 0;
    // at matrix level this is G1(R)F1(R) + G2(R)F2(R) = rho I
    ZMat M(2, 2, {1, 1, 0, 2});
    ZMat R = rational_rep(M);
    IntPoly f1 = IntPoly::x_minus(1), f2 = IntPoly::x_minus(2);
    auto cert = bezout_certificate(f1, f2);
    ZMat lhs = eval_poly_matrix(cert.g1, R) * eval_poly_matrix(f1, R) +
               eval_poly_matrix(cert.g2, R) * eval_poly_matrix(f2, R);
    CHECK(lhs == cert.rho * ZMat::identity(4));
}

TEST_CASE("unipotent kernel bound") {
    SUBCASE("r = 1 split of [[1,1],[0,2]]") {
        ZMat M(2, 2, {1, 1, 0, 2});
        ZMat R = rational_rep(M);
        IntPoly f1 = IntPoly::x_minus(1), f2 = IntPoly::x_minus(2);
        auto cert = bezout_certificate(f1, f2);
        // charpoly(R) = (X-1)^2 (X-2)^2; feed the annihilating product
        CHECK(verify_unipotent_kernel_bound(f1 * f1, f2 * f2,
                                            bezout_certificate(f1 * f1, f2 * f2), R, 6));
        (void)cert;
    }
    SUBCASE("pure unipotent side is vacuous") {
        ZMat R = ZMat::identity(2);
        auto cert = bezout_certificate(IntPoly::x_minus(1), IntPoly{1});
        CHECK(verify_unipotent_kernel_bound(IntPoly::x_minus(1), IntPoly{1}, cert, R, 6));
    }
    SUBCASE("charpoly (X-1)(X-3) at denominator 4") {
        ZMat M(2, 2, {1, 1, 0, 3});
        auto cert = bezout_certificate(IntPoly::x_minus(1), IntPoly::x_minus(3));
        CHECK(verify_unipotent_kernel_bound(IntPoly::x_minus(1), IntPoly::x_minus(3), cert, M, 4));
    }
}

TEST_CASE("restricted unit invertibility") {
    ZMat M(2, 2, {1, 1, 0, 2});
    QMat basis(2, 1);
    basis.at(0, 0) = 1;
    basis.at(1, 0) = 1;
    CHECK(restricted_unit_invertibility(M, basis));

    // restriction of (I - I) to a nontrivial subspace is the zero map
    CHECK_FALSE(restricted_unit_invertibility(ZMat::identity(2), basis));

    QMat full(1, 1);
    full.at(0, 0) = 1;
    CHECK(restricted_unit_invertibility(ZMat(1, 1, {2}), full));

    // non-invariant basis is rejected
    QMat skew(2, 1);
    skew.at(0, 0) = 1;
    skew.at(1, 0) = 0;
    CHECK_THROWS_WITH_AS(restricted_unit_invertibility(ZMat(2, 2, {1, 1, 1, 1}), skew),
                         "basis not M-invariant", std::invalid_argument);
}

TEST_CASE("lemma-level decomposition properties on doubled representations") {
    // matrices whose charpoly splits as (X-1)^r * F2 with F2(1) != 0
    std::vector<ZMat> cases = {
        ZMat(2, 2, {1, 1, 0, 2}),
        ZMat(2, 2, {1, 2, 0, 3}),
        ZMat(3, 3, {1, 1, 0, 0, 2, 1, 0, 0, 3}),
        ZMat(2, 2, {1, 0, 0, 5}),
    };
    for (const auto& M : cases) {
        ZMat R = rational_rep(M);
        IntPoly F = charpoly(R);
        auto split = unipotent_split(F);
        if (split.r == 0 || split.f2.degree() == 0) continue;
        IntPoly f1 = IntPoly::x_minus(1).pow(split.r);
        auto cert = bezout_certificate(f1, split.f2);
        Sublattice l1 = image_sublattice(f1, R);
        Sublattice l2 = image_sublattice(split.f2, R);
        CHECK(verify_sum_full(l1, l2).full_rank);
        CHECK(verify_intersection_torsion(f1, split.f2, R, cert.rho, 8));
        CHECK(verify_unipotent_kernel_bound(f1, split.f2, cert, R, 8));
    }
}

TEST_CASE("torus point canonicalization") {
    TorusPoint x({q(5, 2), q(-1, 3)});
    CHECK(x.coords[0] == q(1, 2));
    CHECK(x.coords[1] == q(2, 3));
    CHECK((mpz_class(6) * x).is_zero());
    CHECK_FALSE((mpz_class(3) * x).is_zero());
}
