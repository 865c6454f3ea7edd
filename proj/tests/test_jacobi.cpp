#include <catch2/catch_amalgamated.hpp>

#include <siegelcone/jacobi.hpp>
#include <siegelcone/siegel_eis.hpp>

using namespace siegelcone;

TEST_CASE("jacobi eisenstein series of index 1") {
    SECTION("constant term and support") {
        for (int k : {4, 6, 10}) {
            const auto e = jacobi_eisenstein_1(k, 60);
            CHECK(e.coeff(0, 0) == 1);
            CHECK(e.coeff(1, 3) == 0);   // 4n - r^2 < 0
            CHECK(e.coeff_disc(1) == 0); // discriminant 1 mod 4 empty
            CHECK(e.coeff_disc(2) == 0);
        }
    }
    SECTION("cross-check against genus-2 Eisenstein coefficients") {
        for (int k : {10, 14, 18, 22}) {
            const auto e = jacobi_eisenstein_1(k, 300);
            const Rat fac = Rat(2) / zeta_neg(static_cast<unsigned>(k));
            for (long n = 0; n <= 75; ++n)
                for (long r = 0; r * r <= 4 * n; ++r) {
                    const HalfIntMatrix T{n, r, 1};
                    REQUIRE(fac * e.coeff(n, r) == siegel_eis_coeff(k, T));
                }
        }
    }
}

TEST_CASE("index-1 cusp generators") {
    const auto gens = cusp_generators_index1(200);
    SECTION("cusp condition and normalization") {
        CHECK(gens.phi10.weight == 10);
        CHECK(gens.phi12.weight == 12);
        CHECK(gens.phi10.coeff_disc(0) == 0);
        CHECK(gens.phi12.coeff_disc(0) == 0);
        CHECK(gens.phi10.coeff_disc(3) == 1);
        CHECK(gens.phi12.coeff_disc(3) == 1);
    }
    SECTION("singular-support functionals vanish") {
        for (long n = 0; n * n <= 50; ++n) {
            CHECK(gens.phi10.coeff(n * n, 2 * n) == 0);
            CHECK(gens.phi12.coeff(n * n, 2 * n) == 0);
        }
    }
    SECTION("known leading coefficients") {
        // phi10: c(D=4) = -2 c(D=3); phi12: c(D=4) = 10 c(D=3) in the
        // normalization with c(3) = 1 (frozen from the construction itself,
        // then cross-checked downstream by the Maass-lift rank checks)
        CHECK(gens.phi10.coeff_disc(4) == -2);
        CHECK(gens.phi12.coeff_disc(4) == 10);
    }
}

TEST_CASE("index raising operator") {
    const auto gens = cusp_generators_index1(400);
    SECTION("l = 1 is the identity") {
        const auto t = v_operator(gens.phi10, 1, 8);
        for (long n = 0; n <= 8; ++n)
            for (long r = 0; r * r <= 4 * n; ++r)
                REQUIRE(t.coeff(n, r) == gens.phi10.coeff(n, r));
    }
    SECTION("constant term scales by sigma") {
        const auto e = jacobi_eisenstein_1(10, 400);
        for (long l : {2L, 3L, 4L}) {
            const auto t = v_operator(e, l, 5);
            REQUIRE(t.coeff(0, 0) == Rat(sigma_pow(9, l)) * e.coeff(0, 0));
        }
    }
    SECTION("cusp input gives cusp output") {
        for (long l : {2L, 3L}) CHECK(v_operator(gens.phi10, l, 8).is_cusp());
    }
}
