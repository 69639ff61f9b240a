#include <doctest.h>

#include <cmath>
#include <vector>

#include "fidgauss/bessel.hpp"
#include "fidgauss/types.hpp"
#include "oracles.hpp"

using fidgauss::bessel_k;

TEST_CASE("half-integer closed form: K_{1/2}(x) = sqrt(pi/(2x)) exp(-x)") {
    for (const double x : {0.1, 0.5, 1.0, 3.0, 10.0, 40.0}) {
        const double want = std::sqrt(1.5707963267948966 / x) * std::exp(-x);
        CHECK(bessel_k(0.5, x) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("integer orders at x = 1 against frozen references") {
    // Classical tabulated values of K_0(1) and K_1(1).
    CHECK(bessel_k(0.0, 1.0) == doctest::Approx(0.42102443824070834).epsilon(1e-12));
    CHECK(bessel_k(1.0, 1.0) == doctest::Approx(0.6019072301972346).epsilon(1e-12));
}

TEST_CASE("matches the quadrature oracle over the (nu, x) box") {
    const std::vector<double> nus = {0.0, 0.25, 0.5, 0.75, 1.0, 1.5,  2.0,  3.3,
                                     5.0, 7.5,  9.0, 12.0, 16.0, 18.5, 20.0};
    const std::vector<double> xs = {1e-3, 3e-3, 0.01, 0.05, 0.1, 0.3, 0.7, 1.0,
                                    1.9,  2.0,  2.1,  3.0,  5.0, 9.0, 17.0, 30.0, 50.0};
    double worst = 0.0;
    for (const double nu : nus)
        for (const double x : xs) {
            const double got = bessel_k(nu, x);
            const double want = testoracle::bessel_k_integral(nu, x);
            worst = std::max(worst, std::abs(got - want) / want);
        }
    CHECK(worst < 1e-10);
}

TEST_CASE("three-term recurrence holds on a grid") {
    for (const double nu : {0.2, 0.5, 1.0, 2.7, 6.0})
        for (const double x : {0.2, 1.0, 2.0, 4.0, 12.0}) {
            const double lhs = bessel_k(nu + 1.0, x);
            const double rhs = bessel_k(nu - 1.0, x) + (2.0 * nu / x) * bessel_k(nu, x);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
}

TEST_CASE("negative order equals positive order; nonpositive x rejected") {
    CHECK(bessel_k(-1.5, 2.0) == bessel_k(1.5, 2.0));
    CHECK_THROWS_AS(bessel_k(1.0, 0.0), fidgauss::DomainError);
    CHECK_THROWS_AS(bessel_k(1.0, -2.0), fidgauss::DomainError);
}
