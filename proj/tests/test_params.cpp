#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "stable_tails/params.hpp"
#include "stable_tails/quad.hpp"

using namespace stable_tails;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Independent oracle for C_alpha: the absolute moment integral
// int_0^inf x^{-alpha} sin x dx, integrated between zeros with Euler
// acceleration of the alternating half-period cells.
double c_alpha_by_quadrature(double alpha) {
    auto head = [alpha](double x) {
        double s = (x < 1e-8) ? 1.0 : std::sin(x) / x;
        return std::pow(x, 1.0 - alpha) * s;
    };
    double h = integrate_singular(head, 0.0, kPi, 1e-12);
    auto amp = [alpha](double x) { return std::pow(x, -alpha); };
    double t = integrate_sin_tail(amp, kPi, 1.0);
    return 1.0 / (h + t);
}
}  // namespace

TEST_CASE("gamma_negative matches the standard library on both alpha ranges") {
    for (double a : {0.1, 0.3, 0.5, 0.7, 0.9, 1.1, 1.3, 1.5, 1.7, 1.9}) {
        double ref = std::tgamma(-a);
        CHECK(std::abs(gamma_negative(a) - ref) <= 1e-12 * std::abs(ref));
    }
    CHECK_THROWS_AS(gamma_negative(1.0), std::domain_error);
    CHECK_THROWS_AS(gamma_negative(2.0), std::domain_error);
    CHECK_THROWS_AS(gamma_negative(-0.5), std::domain_error);
}

TEST_CASE("from_levy conversions") {
    SUBCASE("symmetric alpha = 0.5") {
        StableParams p = from_levy(LevyCanonical::symmetric(0.5));
        CHECK(p.beta == doctest::Approx(0.0));
        double expect = std::tgamma(-0.5) * std::cos(0.75 * kPi) * 2.0;  // ~5.0133
        CHECK(expect == doctest::Approx(5.0133).epsilon(1e-4));
        CHECK(std::pow(p.sigma, 0.5) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(p.mu == 0.0);
    }
    SUBCASE("totally asymmetric has beta = 1") {
        CHECK(from_levy(LevyCanonical::totally_asymmetric(0.5)).beta == doctest::Approx(1.0));
    }
    SUBCASE("symmetric alpha = 1.5") {
        StableParams p = from_levy(LevyCanonical::symmetric(1.5));
        CHECK(p.beta == doctest::Approx(0.0));
        double g = 4.0 * std::sqrt(kPi) / 3.0;  // Gamma(-1.5)
        double expect = g * std::cos(0.25 * kPi) * 2.0;
        CHECK(std::pow(p.sigma, 1.5) == doctest::Approx(expect).epsilon(1e-12));
    }
    SUBCASE("rejects invalid parameters") {
        CHECK_THROWS_AS(from_levy({1.0, 1.0, 1.0}), std::domain_error);
        CHECK_THROWS_AS(from_levy({2.5, 1.0, 1.0}), std::domain_error);
        CHECK_THROWS_AS(from_levy({0.5, 0.0, 0.0}), std::domain_error);
        CHECK_THROWS_AS(from_levy({0.5, -1.0, 1.0}), std::domain_error);
    }
}

TEST_CASE("sigma^alpha positive across the whole alpha range") {
    for (double a = 0.1; a < 2.0; a += 0.1) {
        if (std::abs(a - 1.0) < 1e-9) continue;
        CHECK(sigma_pow_alpha(LevyCanonical::symmetric(a)) > 0.0);
        CHECK(sigma_pow_alpha(LevyCanonical::totally_asymmetric(a)) > 0.0);
        CHECK(sigma_pow_alpha({a, 0.3, 1.7}) > 0.0);
    }
}

TEST_CASE("round trip from_levy -> to_levy recovers the weights") {
    for (double a : {0.2, 0.5, 0.8, 1.2, 1.5, 1.8}) {
        for (auto [c1, c2] : {std::pair{1.0, 1.0}, {1.0, 0.0}, {0.4, 2.3}}) {
            LevyCanonical canon{a, c1, c2};
            LevyCanonical back = to_levy(from_levy(canon));
            CHECK(back.c1 == doctest::Approx(c1).epsilon(1e-12));
            CHECK(back.c2 == doctest::Approx(c2).epsilon(1e-12));
        }
    }
}

TEST_CASE("constants") {
    SUBCASE("C_alpha at 0.5 is sqrt(2/pi)") {
        StableParams p = from_levy(LevyCanonical::symmetric(0.5));
        CHECK(constants(p).c_alpha == doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-12));
    }
    SUBCASE("canonical symmetric right tail constant equals 1/alpha") {
        for (double a : {0.3, 0.5, 0.7, 1.3, 1.5, 1.9}) {
            StableParams p = from_levy(LevyCanonical::symmetric(a));
            CHECK(constants(p).tail_const_right == doctest::Approx(1.0 / a).epsilon(1e-10));
        }
    }
    SUBCASE("beta = -1 kills the right tail constant") {
        StableParams p = from_levy({0.5, 0.0, 1.0});
        CHECK(p.beta == doctest::Approx(-1.0));
        CHECK(constants(p).tail_const_right == doctest::Approx(0.0));
        CHECK(constants(p).tail_const_left > 0.0);
    }
    SUBCASE("kappa_alpha positive") {
        for (double a : {0.5, 1.2, 1.8}) {
            CHECK(constants(from_levy(LevyCanonical::totally_asymmetric(a))).kappa_alpha >
                  0.0);
        }
    }
}

TEST_CASE("C_alpha equals the inverse oscillatory moment integral") {
    for (double a : {0.25, 0.5, 0.75, 1.25, 1.5, 1.75}) {
        double quad = c_alpha_by_quadrature(a);
        CHECK(std::abs(quad - c_alpha(a)) / c_alpha(a) < 1e-6);
    }
}

TEST_CASE("c_alpha_regime classification and limit values") {
    auto r0 = c_alpha_regime(0.01);
    CHECK(r0.regime == CAlphaRegime::near_zero);
    CHECK(std::abs(r0.c_alpha - 1.0) < 0.05);

    auto r1 = c_alpha_regime(0.999);
    CHECK(r1.regime == CAlphaRegime::near_one);
    CHECK(std::abs(r1.c_alpha - 2.0 / kPi) < 0.05 * 2.0 / kPi);

    auto r2 = c_alpha_regime(1.99);
    CHECK(r2.regime == CAlphaRegime::near_two);
    CHECK(std::abs(r2.c_alpha - 0.01) < 0.1 * 0.01);
    CHECK(r2.reference == doctest::Approx(0.01));
}
