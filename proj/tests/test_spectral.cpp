#include <doctest.h>

#include <cmath>

#include "abdeg/spectral.hpp"

using namespace abdeg;

TEST_CASE("power sums and their inverse") {
    // roots 2 and 3: p1 = 5, p2 = 13, p3 = 35
    IntPoly f{6, -5, 1};
    auto p = root_power_sums(f, 3);
    CHECK(p[0] == 5);
    CHECK(p[1] == 13);
    CHECK(p[2] == 35);
    CHECK(poly_from_power_sums({p[0], p[1]}) == f);
}

TEST_CASE("pair-product polynomial") {
    // roots {2}: products {4}
    CHECK(root_product_poly(IntPoly::x_minus(2)) == IntPoly::x_minus(4));
    // roots {i, -i}: products {-1, 1, 1, -1}
    CHECK(root_product_poly(IntPoly{1, 0, 1}) ==
          IntPoly::x_minus(1).pow(2) * IntPoly::x_minus(-1).pow(2));
    // roots {2, 3}: products {4, 6, 6, 9}
    CHECK(root_product_poly(IntPoly{6, -5, 1}) ==
          IntPoly::x_minus(4) * IntPoly::x_minus(6).pow(2) * IntPoly::x_minus(9));
}

TEST_CASE("sturm root isolation") {
    // (X-1)(X-2)(X-4): largest root 4
    IntPoly f = IntPoly::x_minus(1) * IntPoly::x_minus(2) * IntPoly::x_minus(4);
    SturmChain chain(squarefree_part(f));
    CHECK(chain.count_roots(mpq_class(0), mpq_class(5)) == 3);
    CHECK(chain.count_roots(mpq_class(3), mpq_class(5)) == 1);
    CHECK(chain.count_roots(mpq_class(4), mpq_class(5)) == 0);  // half-open (4, 5]

    auto [lo, hi] = largest_real_root_enclosure(f, mpq_class(1, 1000000));
    CHECK(lo < 4);
    CHECK(hi >= 4);
    CHECK(hi - lo <= mpq_class(1, 1000000));

    // repeated roots are handled through the squarefree part
    auto [lo2, hi2] = largest_real_root_enclosure(IntPoly::x_minus(1).pow(4), mpq_class(1, 1024));
    CHECK(lo2 < 1);
    CHECK(hi2 >= 1);
}

TEST_CASE("rational square root bounds") {
    mpq_class v(2);
    mpq_class lo = sqrt_lower(v, 64), hi = sqrt_upper(v, 64);
    CHECK(lo * lo <= v);
    CHECK(hi * hi >= v);
    CHECK(hi - lo < mpq_class(1, 1000000));
    CHECK(sqrt_lower(mpq_class(0), 16) == 0);
    CHECK(sqrt_lower(mpq_class(9, 4), 64) <= mpq_class(3, 2));
    CHECK(sqrt_upper(mpq_class(9, 4), 64) >= mpq_class(3, 2));
}

TEST_CASE("certified spectral radius") {
    SUBCASE("scalar") {
        auto c = spectral_radius_certified(ZMat(1, 1, {2}), 1e-9);
        CHECK(c.encloses(mpq_class(2)));
        CHECK(c.width() <= mpq_class(1, 1000000000));
        CHECK(std::abs(c.value - 2.0) < 1e-9);
    }
    SUBCASE("rotation has radius 1") {
        auto c = spectral_radius_certified(ZMat(2, 2, {0, -1, 1, 0}), 1e-9);
        CHECK(c.encloses(mpq_class(1)));
        CHECK(std::abs(c.value - 1.0) < 1e-9);
    }
    SUBCASE("golden-mean mixing") {
        auto c = spectral_radius_certified(ZMat(2, 2, {2, 1, 1, 1}), 1e-9);
        CHECK(std::abs(c.value - 2.6180339887498949) < 1e-9);
        CHECK(c.width() <= mpq_class(1, 1000000000));
    }
    CHECK_THROWS_AS(spectral_radius_certified(ZMat(1, 1, {2}), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(spectral_radius_certified(ZMat(1, 2, {1, 2}), 1e-9),
                    std::invalid_argument);

    SUBCASE("power compatibility: certificate of M^k encloses rho^k") {
        ZMat M(2, 2, {2, 1, 1, 1});
        auto c1 = spectral_radius_certified(M, 1e-12);
        for (unsigned k : {2u, 3u, 5u}) {
            auto ck = spectral_radius_certified(zmat_pow(M, k), 1e-9);
            mpq_class lo = 1, hi = 1;
            for (unsigned i = 0; i < k; ++i) {
                lo *= c1.lower;
                hi *= c1.upper;
            }
            CHECK(ck.upper >= lo);
            CHECK(ck.lower <= hi);
        }
    }
}

TEST_CASE("certified dynamical degree of a matrix") {
    auto c = dynamical_degree_of_matrix(ZMat(2, 2, {2, 1, 1, 1}), 1e-9);
    CHECK(std::abs(c.value - 6.8541019662496845) < 1e-9);
    auto i = dynamical_degree_of_matrix(ZMat::identity(3), 1e-9);
    CHECK(i.encloses(mpq_class(1)));
    CHECK_THROWS_WITH_AS(dynamical_degree_of_matrix(ZMat(2, 2, {1, 1, 1, 1}), 1e-9),
                         "M singular", std::invalid_argument);
}

TEST_CASE("gelfand oracle on exact powers") {
    SUBCASE("doubling is constant 4") {
        auto seq = gelfand_oracle(ZMat(1, 1, {2}), 10);
        for (const auto& s : seq) {
            mpz_class expect = 1;
            for (int i = 0; i < s.n; ++i) expect *= 4;
            CHECK(s.frob2 == expect);
            CHECK(std::abs(s.root - 4.0) < 1e-12);
        }
    }
    SUBCASE("unipotent norm growth is polynomial") {
        auto seq = gelfand_oracle(ZMat(2, 2, {1, 1, 0, 1}), 40);
        for (const auto& s : seq)
            CHECK(s.frob2 == mpz_class(s.n) * s.n + 2);
        CHECK(seq.back().root < 1.3);  // tends to 1
    }
    SUBCASE("mixing matrix approaches its degree from above") {
        ZMat M(2, 2, {2, 1, 1, 1});
        auto seq = gelfand_oracle(M, 40);
        const double delta = 6.8541019662496845;
        for (const auto& s : seq) CHECK(s.root >= delta - 1e-9);
        CHECK(std::abs(seq.back().root - delta) < 1e-3 * delta);
    }
    CHECK_THROWS_AS(gelfand_oracle(ZMat(1, 1, {2}), 1), std::invalid_argument);
}

