#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "stable_tails/analytic.hpp"
#include "stable_tails/quad.hpp"

using namespace stable_tails;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;
}  // namespace

TEST_CASE("characteristic function basics on a grid") {
    std::vector<CharFn> fns{
        CharFn::canonical(LevyCanonical::symmetric(0.5)),
        CharFn::canonical(LevyCanonical::symmetric(1.5)),
        CharFn::canonical(LevyCanonical::totally_asymmetric(0.5)),
        CharFn::canonical(LevyCanonical::totally_asymmetric(1.7)),
        CharFn::inner(1.5, true),
        CharFn::inner(1.5, false),
        CharFn::outer(1.5, true),
        CharFn::outer(1.5, false),
    };
    for (const auto& cf : fns) {
        CHECK(std::abs(cf_eval(cf, 0.0) - 1.0) == 0.0);
        for (double t : {0.3, 1.0, 2.5}) {
            auto v = cf_eval(cf, t);
            CHECK(std::abs(v) <= 1.0 + 1e-12);
            auto w = cf_eval(cf, -t);
            CHECK(std::abs(w - std::conj(v)) < 1e-12);
            if (cf.symmetric) CHECK(std::abs(v.imag()) < 1e-12);
        }
    }
}

TEST_CASE("canonical exponent closed form equals the quadrature route") {
    for (double a : {0.5, 1.5}) {
        for (auto canon : {LevyCanonical::symmetric(a), LevyCanonical::totally_asymmetric(a)}) {
            for (double t : {0.5, 1.0, 2.0}) {
                auto closed = cf_exponent(CharFn::canonical(canon), t);
                auto quad = cf_exponent_quadrature(canon, t);
                CHECK(std::abs(closed - quad) < 1e-8 * std::max(1.0, std::abs(closed)));
            }
        }
    }
}

TEST_CASE("split product identity reproduces the full characteristic function") {
    for (double a : {1.2, 1.5, 1.8}) {
        for (bool sym : {false, true}) {
            auto canon = sym ? LevyCanonical::symmetric(a) : LevyCanonical::totally_asymmetric(a);
            for (double t : {0.5, 1.0, 2.0}) {
                auto inner = cf_eval(CharFn::inner(a, sym), t);
                auto outer = cf_eval(CharFn::outer(a, sym), t);
                auto full = cf_eval(CharFn::canonical(canon), t);
                CHECK(std::abs(inner * outer - full) < 1e-8);
            }
        }
    }
}

TEST_CASE("symmetric canonical value at alpha = 1.5, t = 1 is exp(-2 J)") {
    double j = one_minus_cos_integral(1.5);
    auto v = cf_eval(CharFn::canonical(LevyCanonical::symmetric(1.5)), 1.0);
    CHECK(v.real() == doctest::Approx(std::exp(-2.0 * j)).epsilon(1e-12));
}

TEST_CASE("J(alpha) quadrature equals the reflection closed form") {
    for (double a : {0.3, 0.5, 0.9, 1.1, 1.5, 1.9}) {
        double closed = -gamma_negative(a) * std::cos(0.5 * kPi * a);
        CHECK(one_minus_cos_integral(a) == doctest::Approx(closed).epsilon(1e-9));
    }
}

TEST_CASE("residual summary closed forms") {
    auto s = residual_summary(0.5, 2.0);
    CHECK(s.mean == doctest::Approx(2.0));
    CHECK(s.variance == doctest::Approx(2.0 / 3.0));
    auto s8 = residual_summary(0.5, 8.0);
    CHECK(s8.mean == doctest::Approx(0.5));
    CHECK(s8.variance == doctest::Approx(1.0 / 96.0));
    auto s81 = residual_summary(0.8, 1.0);
    CHECK(s81.mean == doctest::Approx(5.0 * std::pow(0.8, -0.25)));
    // mean decreases in x for alpha < 1
    CHECK(residual_summary(0.5, 16.0).mean < residual_summary(0.5, 2.0).mean);
    CHECK_THROWS_AS(residual_summary(1.5, 2.0), std::domain_error);
    CHECK_THROWS_AS(residual_summary(0.5, -1.0), std::domain_error);
}

TEST_CASE("residual exponent") {
    SUBCASE("vanishes at lambda = 0 and rejects positive tilts") {
        CHECK(residual_exponent(0.5, 2.0, 0.0) == 0.0);
        CHECK_THROWS_AS(residual_exponent(0.5, 2.0, 0.1), std::domain_error);
        CHECK_THROWS_AS(mgf_residual(0.5, 2.0, 1.0), std::domain_error);
    }
    SUBCASE("nonnegative and nondecreasing in |lambda|") {
        double prev = 0.0;
        for (double l = -0.25; l >= -4.0; l -= 0.25) {
            double f = residual_exponent(0.5, 2.0, l);
            CHECK(f >= prev);
            prev = f;
        }
    }
    SUBCASE("quadrature and series routes agree") {
        for (double a : {0.3, 0.5, 0.8}) {
            for (double x : {0.5, 2.0, 8.0}) {
                for (double l : {-0.5, -1.0, -2.0}) {
                    double q = residual_exponent(a, x, l);
                    double s = residual_exponent_series(a, x, l);
                    CHECK(q == doctest::Approx(s).epsilon(1e-9));
                }
            }
        }
    }
    SUBCASE("finite differences at 0 reproduce mean and variance") {
        // the defining integral extends smoothly to small lambda > 0, so a
        // central stencil is usable as an oracle here
        const double a = 0.5, x = 2.0;
        auto f = [&](double l) {
            if (l == 0.0) return 0.0;
            double c = l * std::pow(a, -1.0 / a);
            double upper = std::pow(x, -1.0 / a);
            auto integrand = [=](double w) {
                double u = c * w;
                double ratio = (std::abs(u) < 1e-8) ? (1.0 + 0.5 * u) : (std::expm1(u) / u);
                return -ratio * c * a * std::pow(w, -a);
            };
            return integrate_singular(integrand, 0.0, upper, 1e-12);
        };
        auto s = residual_summary(a, x);
        double h = 1e-3;
        double d1 = (f(h) - f(-h)) / (2.0 * h);
        CHECK(std::abs(-d1 - s.mean) < 1e-6 * s.mean);
        double h2 = 3e-3;
        double d2 = (f(h2) - 2.0 * f(0.0) + f(-h2)) / (h2 * h2);
        CHECK(std::abs(-d2 - s.variance) < 1e-5 * s.variance);
    }
}

TEST_CASE("residual MGF") {
    CHECK(mgf_residual(0.5, 2.0, 0.0) == 1.0);
    double v = mgf_residual(0.5, 2.0, -1.0);
    CHECK(v > std::exp(-2.0));  // Jensen floor e^{lambda E S}
    CHECK(v < 1.0);
}

TEST_CASE("inner tilt exponents: series route equals quadrature route") {
    for (double a : {1.2, 1.5, 1.8}) {
        for (double t : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
            auto asym_quad = [&]() {
                auto g = [=](double x) {
                    double u = t * x;
                    double rem;  // (e^u - 1 - u) / u^2 -> 1/2
                    if (std::abs(u) < 1e-5) {
                        rem = 0.5 + u / 6.0;
                    } else {
                        rem = (std::expm1(u) - u) / (u * u);
                    }
                    return t * t * rem * std::pow(x, 1.0 - a);
                };
                return integrate_singular(g, 0.0, 1.0, 1e-12);
            }();
            CHECK(inner_tilt_exponent_asym(a, t) == doctest::Approx(asym_quad).epsilon(1e-9));
            if (t > 0.0) {
                auto sym_quad = [&]() {
                    auto g = [=](double x) {
                        double u = t * x;
                        double rem = (std::abs(u) < 1e-5)
                                         ? (0.5 + u * u / 24.0)
                                         : ((std::cosh(u) - 1.0) / (u * u));
                        return 2.0 * t * t * rem * std::pow(x, 1.0 - a);
                    };
                    return integrate_singular(g, 0.0, 1.0, 1e-12);
                }();
                CHECK(inner_tilt_exponent_sym(a, t) ==
                      doctest::Approx(sym_quad).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("exponential-moment envelopes contain the exact tilted exponent") {
    for (double a : {1.2, 1.5, 1.8}) {
        auto right = laplace_envelope(a, EnvelopeRegime::asym_right);
        auto left_small = laplace_envelope(a, EnvelopeRegime::asym_left_small);
        auto left_large = laplace_envelope(a, EnvelopeRegime::asym_left_large);
        auto sym = laplace_envelope(a, EnvelopeRegime::symmetric_all);
        for (double t : {0.25, 0.5, 1.0}) {
            double exact = std::exp(inner_tilt_exponent_asym(a, t));
            CHECK(right.lower(t) <= exact);
            CHECK(exact <= right.upper(t));
            double exact_m = std::exp(inner_tilt_exponent_asym(a, -t));
            CHECK(left_small.lower(-t) <= exact_m);
            CHECK(exact_m <= left_small.upper(-t));
            double exact_s = std::exp(inner_tilt_exponent_sym(a, t));
            CHECK(sym.lower(t) <= exact_s);
            CHECK(exact_s <= sym.upper(t));
        }
        for (double t : {-1.5, -2.0, -4.0}) {
            double exact = std::exp(inner_tilt_exponent_asym(a, t));
            CHECK(left_large.lower(t) <= exact);
            CHECK(exact <= left_large.upper(t));
        }
    }
}

TEST_CASE("envelope display values") {
    SUBCASE("symmetric at t = 0 and alpha = 1.5, t = 1") {
        auto env = laplace_envelope(1.5, EnvelopeRegime::symmetric_all);
        CHECK(env.lower(0.0) == doctest::Approx(1.0));
        CHECK(env.upper(0.0) == doctest::Approx(1.0));
        CHECK(env.lower(1.0) == doctest::Approx(std::exp(2.0)));
        double gap = (1.0 / 24.0) * (14.0 / 15.0 + std::cosh(1.0) / 15.0);
        CHECK(env.upper(1.0) == doctest::Approx(std::exp(2.0) * std::exp(gap)));
        CHECK(env.upper(1.0) / env.lower(1.0) ==
              doctest::Approx(std::exp(envelope_gap_sym(1.0))));
    }
    SUBCASE("asym left large at alpha = 1.5, t = -2") {
        auto env = laplace_envelope(1.5, EnvelopeRegime::asym_left_large);
        CHECK(env.upper(-2.0) ==
              doctest::Approx(std::exp(4.0 * std::pow(2.0, 1.5) - 4.0)).epsilon(1e-12));
    }
    SUBCASE("domain errors outside each regime") {
        CHECK_THROWS_AS(laplace_envelope(1.5, EnvelopeRegime::asym_right).upper(1.5),
                        std::domain_error);
        CHECK_THROWS_AS(laplace_envelope(1.5, EnvelopeRegime::asym_right).lower(-0.5),
                        std::domain_error);
        CHECK_THROWS_AS(laplace_envelope(1.5, EnvelopeRegime::asym_left_small).upper(-1.5),
                        std::domain_error);
        CHECK_THROWS_AS(laplace_envelope(1.5, EnvelopeRegime::asym_left_large).upper(-0.5),
                        std::domain_error);
        CHECK_THROWS_AS(laplace_envelope(0.5, EnvelopeRegime::symmetric_all),
                        std::domain_error);
    }
}

TEST_CASE("tilt root solves its defining equation") {
    for (double a : {1.2, 1.5, 1.8}) {
        for (double y : {2.0 / (2.0 - a), 3.0 / (2.0 - a), 10.0 / (2.0 - a)}) {
            double t = tilt_root(a, y);
            double resid = a * (1.0 / (2.0 - a) + 1.0 / (a - 1.0)) * std::pow(t, a - 1.0) -
                           (y + 1.0 / (a - 1.0));
            CHECK(std::abs(resid) < 1e-10 * (y + 1.0));
            CHECK(t > 1.0);  // side condition in the large-y regime
        }
    }
}

TEST_CASE("density series") {
    SUBCASE("alpha = 2 reproduces the Gaussian implied by the CF normalization") {
        // CF exp(-t^2) => variance 2 Gaussian
        auto f0 = density_series({2.0}, 0.0);
        CHECK(f0.converged);
        CHECK(f0.value == doctest::Approx(1.0 / (2.0 * std::sqrt(kPi))).epsilon(1e-12));
        auto f1 = density_series({2.0}, 1.0);
        CHECK(f1.value ==
              doctest::Approx(std::exp(-0.25) / (2.0 * std::sqrt(kPi))).epsilon(1e-12));
    }
    SUBCASE("even in x") {
        for (double a : {0.5, 1.5}) {
            for (double x : {0.7, 2.0}) {
                CHECK(density_series({a}, x).value ==
                      doctest::Approx(density_series({a}, -x).value));
            }
        }
    }
    SUBCASE("alpha < 1 needs x away from zero") {
        CHECK_THROWS_AS(density_series({0.5}, 0.0), std::domain_error);
        CHECK_THROWS_AS(density_series({0.9}, 0.05), std::domain_error);  // divergent regime
    }
    SUBCASE("the alternate angle variant disagrees with the inversion oracle") {
        double c = 0.5 / one_minus_cos_integral(0.5);
        double inv = density_inversion({0.5, c, c}, 3.0);
        auto good = density_series({0.5, DensityModel::Angle::half_pi_alpha}, 3.0);
        auto bad = density_series({0.5, DensityModel::Angle::half_alpha}, 3.0);
        CHECK(std::abs(good.value - inv) / inv < 1e-4);
        CHECK(std::abs(bad.value - inv) / inv > 0.1);
    }
}

TEST_CASE("density inversion") {
    SUBCASE("value at zero equals the plain CF integral") {
        LevyCanonical canon = LevyCanonical::symmetric(0.5);
        CharFn cf = CharFn::canonical(canon);
        double direct =
            integrate_to_inf([&](double t) { return cf_eval(cf, t).real(); }, 0.0) / kPi;
        CHECK(density_inversion(canon, 0.0) == doctest::Approx(direct).epsilon(1e-8));
    }
    SUBCASE("agrees with the series where the series converges") {
        for (double a : {0.5, 1.5}) {
            double c = 0.5 / one_minus_cos_integral(a);
            LevyCanonical canon{a, c, c};
            for (double x : {1.0, 2.0, 5.0}) {
                auto sv = density_series({a}, x);
                REQUIRE(sv.converged);
                double iv = density_inversion(canon, x);
                CHECK(iv > 0.0);
                CHECK(std::abs(sv.value - iv) / iv < 1e-4);
            }
        }
    }
    SUBCASE("asymmetric inversion is a proper density near the bulk") {
        LevyCanonical canon = LevyCanonical::totally_asymmetric(1.5);
        double mass = integrate(
            [&](double x) { return density_inversion(canon, x); }, -8.0, 20.0, 1e-6);
        CHECK(mass > 0.9);
        CHECK(mass < 1.0 + 1e-6);
    }
    SUBCASE("total mass") {
        for (double a : {0.5, 1.5}) {
            double c = 0.5 / one_minus_cos_integral(a);
            CHECK(std::abs(inversion_total_mass({a, c, c}) - 1.0) < 1e-4);
        }
    }
}

TEST_CASE("asymptotic left-tail rate") {
    const double a = 1.5;
    double sigma = 1.408;  // scale of the one-sided alpha = 1.5 law, approximately
    SUBCASE("monotone decreasing for large y") {
        double prev = asymptotic_left_rate(a, sigma, 5.0);
        for (double y = 6.0; y <= 40.0; y += 1.0) {
            double r = asymptotic_left_rate(a, sigma, y);
            CHECK(r < prev);
            prev = r;
        }
    }
    SUBCASE("log-log slope of the stretched exponent approaches 2 near alpha = 2") {
        const double a2 = 1.95;
        double kappa = a2 * 1.0 / std::cos(0.5 * (2.0 - a2) * kPi);
        auto expo = [&](double y) {
            double pre = 1.0 / std::sqrt(2.0 * a2 * kPi * (a2 - 1.0));
            double poly = std::pow(y / kappa, -0.5 * a2 / (a2 - 1.0));
            return -std::log(asymptotic_left_rate(a2, 1.0, y) / (pre * poly));
        };
        double slope = std::log(expo(20.0 * kappa) / expo(10.0 * kappa)) / std::log(2.0);
        CHECK(std::abs(slope - 2.0) < 0.1);
        CHECK(slope == doctest::Approx(a2 / (a2 - 1.0)).epsilon(1e-9));
    }
}
