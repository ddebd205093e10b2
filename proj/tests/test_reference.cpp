#include <doctest.h>

#include <utility>
#include <vector>

#include "quadrics/errors.hpp"
#include "quadrics/localization.hpp"
#include "quadrics/reference.hpp"

using namespace quadrics;

TEST_CASE("closed forms at known points") {
    CHECK(phi_closed_form(5, 4) == 44);
    CHECK(phi_closed_form(3, 5) == 2);
    CHECK(phi_closed_form(0, 4) == -1);
    for (long n = 1; n <= 10; ++n)
        CHECK(phi_closed_form(n, 1) == 1);
    CHECK(phi_closed_form(4, 2) == 3);
    CHECK(phi_closed_form(4, 3) == 9);
    CHECK(phi_closed_form(4, 4) == 17);
    CHECK(phi_closed_form(6, 5) == 240);
}

TEST_CASE("conjectured rows against the n <= 6 tables") {
    CHECK(phi_closed_form(5, 6) == 137);
    CHECK(phi_closed_form(5, 7) == 188);
    CHECK(phi_closed_form(5, 8) == 212);
    CHECK(phi_closed_form(6, 6) == 528);
    CHECK(phi_closed_form(6, 7) == 1016);
    CHECK(phi_closed_form(6, 8) == 1696);
    CHECK(phi_closed_form(6, 9) == 2396);
    CHECK(phi_closed_form(6, 10) == 2886);
    CHECK(phi_closed_form(6, 11) == 3054);
    CHECK(phi_closed_form(6, 12) == 2886);
}

TEST_CASE("unsupported or invalid a") {
    CHECK_THROWS_AS(phi_closed_form(4, 13), unsupported_formula);
    CHECK_THROWS_AS(phi_closed_form(4, 0), std::invalid_argument);
}

TEST_CASE("extrapolation values at n = 0 and n = -1") {
    for (int a = 1; a <= 12; ++a) {
        mpq_class sign0 = (a - 1) % 2 == 0 ? 1 : -1;
        mpq_class want1 = 1;
        for (int k = 1; k < a; ++k)
            want1 *= -2;
        CHECK(phi_closed_form(0, a) == sign0);
        CHECK(phi_closed_form(-1, a) == want1);
    }
}

TEST_CASE("beta invariant of the diagonal model") {
    CHECK(beta_diagonal(4, 2) == 2);
    for (int n = 2; n <= 8; ++n)
        CHECK(beta_diagonal(n, 1) == 1);
    CHECK(beta_diagonal(3, 3) == 0);
    CHECK(beta_diagonal(1, 1) == 0);
    CHECK(beta_diagonal(6, 3) == 6);
    CHECK_THROWS_AS(beta_diagonal(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(beta_diagonal(3, 0), std::invalid_argument);
    // Pascal recurrence inside the triangle
    for (int n = 4; n <= 9; ++n)
        for (int a = 2; a <= n - 2; ++a)
            CHECK(beta_diagonal(n, a) ==
                  beta_diagonal(n - 1, a - 1) + beta_diagonal(n - 1, a));
}

TEST_CASE("interpolation of small exact samples") {
    const PhiPolynomial line = interpolate_phi(2, {{2, 1}, {3, 2}});
    REQUIRE(line.coeffs.size() == 2);
    CHECK(line.coeffs[0] == -1);
    CHECK(line.coeffs[1] == 1);
    CHECK(line.degree() == 1);

    const PhiPolynomial constant = interpolate_phi(1, {{5, 1}});
    REQUIRE(constant.coeffs.size() == 1);
    CHECK(constant.coeffs[0] == 1);
    CHECK(constant.degree() == 0);
}

TEST_CASE("interpolating computed phi(., 4) recovers the closed form") {
    std::vector<std::pair<long, mpz_class>> samples;
    for (int n = 3; n <= 6; ++n)
        samples.emplace_back(n, ml_degree(n, 4));
    const PhiPolynomial poly = interpolate_phi(4, samples);
    // (1/6)(5n-3)(n-1)(n-2) = (5n^3 - 18n^2 + 19n - 6)/6
    REQUIRE(poly.coeffs.size() == 4);
    CHECK(poly.coeffs[0] == -1);
    CHECK(poly.coeffs[1] == mpq_class(19, 6));
    CHECK(poly.coeffs[2] == -3);
    CHECK(poly.coeffs[3] == mpq_class(5, 6));
    for (const auto& [n, phi] : samples)
        CHECK(poly(mpq_class(n)) == mpq_class(phi));
}

TEST_CASE("interpolating computed phi(., 5) recovers the closed form") {
    std::vector<std::pair<long, mpz_class>> samples;
    for (int n = 3; n <= 7; ++n)
        samples.emplace_back(n, ml_degree(n, 5));
    const PhiPolynomial poly = interpolate_phi(5, samples);
    // (1/12)(7n^2-19n+6)(n-1)(n-2) = (7n^4 - 40n^3 + 77n^2 - 56n + 12)/12
    const std::vector<mpq_class> want = {mpq_class(1), mpq_class(-14, 3),
                                         mpq_class(77, 12), mpq_class(-10, 3),
                                         mpq_class(7, 12)};
    CHECK(poly.coeffs == want);
}

TEST_CASE("extra samples are cross-checked") {
    // consistent extra point passes
    const PhiPolynomial ok = interpolate_phi(2, {{2, 1}, {3, 2}, {4, 3}});
    CHECK(ok.coeffs[1] == 1);
    // inconsistent extra point is rejected
    CHECK_THROWS_AS(interpolate_phi(2, {{2, 1}, {3, 2}, {4, 5}}),
                    inconsistent_samples);
}

TEST_CASE("interpolation argument validation") {
    CHECK_THROWS_AS(interpolate_phi(2, {{2, 1}, {2, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(interpolate_phi(3, {{2, 1}, {3, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(interpolate_phi(0, {}), std::invalid_argument);
}

TEST_CASE("polynomial evaluation uses exact rationals") {
    PhiPolynomial p{3, {mpq_class(1, 2), mpq_class(0), mpq_class(1, 3)}};
    CHECK(p(mpq_class(3)) == mpq_class(7, 2)); // 9/3 + 1/2
    CHECK(p(mpq_class(0)) == mpq_class(1, 2));
    CHECK(p.degree() == 2);
    CHECK(PhiPolynomial{1, {mpq_class(0)}}.degree() == -1);
}
