#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "stable_tails/analytic.hpp"
#include "stable_tails/quad.hpp"
#include "stable_tails/series.hpp"
#include "stable_tails/verify.hpp"

using namespace stable_tails;

namespace {

double levy_cdf(double y) { return y <= 0.0 ? 0.0 : std::erfc(std::sqrt(M_PI / y)); }

SeriesConfig quick_cfg(double tol) {
    SeriesConfig cfg;
    cfg.tail_tolerance = tol;
    return cfg;
}

}  // namespace

TEST_CASE("asym01 draws are strictly positive and deterministic") {
    SeriesConfig cfg = quick_cfg(1e-2);
    ArrivalStream a(10), b(10);
    for (int i = 0; i < 200; ++i) {
        auto ra = sample_asym_01(0.5, cfg, a);
        auto rb = sample_asym_01(0.5, cfg, b);
        CHECK(ra.value > 0.0);
        CHECK(ra.value == rb.value);
        CHECK(ra.converged);
    }
}

TEST_CASE("asym01 flags truncation when max_terms is exhausted") {
    SeriesConfig cfg;
    cfg.tail_tolerance = 1e-6;
    cfg.max_terms = 10;
    ArrivalStream s(3);
    auto r = sample_asym_01(0.5, cfg, s);
    CHECK_FALSE(r.converged);
    CHECK(r.terms == 10);
    CHECK(r.value > 0.0);
}

TEST_CASE("asym01 alpha=0.5 matches the closed-form heavy-tail CDF") {
    SeriesConfig cfg = quick_cfg(2e-3);
    SamplerSpec spec{SourceLaw::asym01_series, 0.5, 0.0, 0.0, cfg};
    auto draws = draw_batch(spec, 30000, 91);
    double ks = ks_statistic(draws, levy_cdf);
    CHECK(ks < 0.015);  // 99% critical value at n = 3e4 is 0.0094
}

TEST_CASE("first dropped series term matches its quadrature mean") {
    // the first arrival beyond a level L is L + Exp(1); at alpha = 0.5 the
    // term (alpha tau)^{-1/alpha} then has mean int e^{-u} (alpha(L+u))^{-2} du
    const double alpha = 0.5, level = 2.0;
    ArrivalStream s(17);
    const int n = 200000;
    double mc = 0.0;
    for (int i = 0; i < n; ++i) {
        double tau = level + s.exponential();
        mc += std::pow(alpha * tau, -1.0 / alpha);
    }
    mc /= n;
    double quad = integrate_to_inf(
        [&](double u) { return std::exp(-u) * std::pow(alpha * (level + u), -2.0) ; }, 0.0);
    CHECK(std::abs(mc - quad) < 0.01 * quad);
}

TEST_CASE("residual series moments and monotonicity") {
    SUBCASE("same stream realization decreases in x") {
        SeriesConfig cfg = quick_cfg(1e-3);
        for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
            ArrivalStream s1(seed), s2(seed);
            auto lo = sample_residual(0.5, 1.0, cfg, s1);
            auto hi = sample_residual(0.5, 3.0, cfg, s2);
            CHECK(lo.value > hi.value);
        }
    }
    SUBCASE("mean and variance at (alpha, x) = (0.5, 2)") {
        SeriesConfig cfg = quick_cfg(3e-3);
        SamplerSpec spec{SourceLaw::residual, 0.5, 0.0, 2.0, cfg};
        auto draws = draw_batch(spec, 100000, 23);
        double mean = 0.0;
        for (double d : draws) mean += d;
        mean /= static_cast<double>(draws.size());
        double var = 0.0;
        for (double d : draws) var += (d - mean) * (d - mean);
        var /= static_cast<double>(draws.size());
        CHECK(std::abs(mean - 2.0) < 0.01);          // exact mean 2
        CHECK(std::abs(var - 2.0 / 3.0) < 0.015);    // exact variance 2/3
    }
}

TEST_CASE("tilde arrivals have the plain arrival law and are uncorrelated with tau_1") {
    const int m = 100000;
    double mean1 = 0.0, mean3 = 0.0;
    double sum_t = 0.0, sum_s = 0.0, sum_ts = 0.0, sum_t2 = 0.0, sum_s2 = 0.0;
    for (int i = 0; i < m; ++i) {
        ResidualStream rs(2.0, ArrivalStream(9090, static_cast<std::uint64_t>(i)));
        // S(x) draw built literally from the tilde offsets (30-term truncation)
        double sval = 0.0;
        for (int k = 0; k < 30; ++k) {
            double off = rs.next_offset();
            if (k == 0) mean1 += off;
            if (k == 2) mean3 += off;
            sval += std::pow(0.5 * (rs.x() + off), -2.0);
        }
        double t1 = rs.tau1();
        sum_t += t1;
        sum_s += sval;
        sum_ts += t1 * sval;
        sum_t2 += t1 * t1;
        sum_s2 += sval * sval;
    }
    CHECK(std::abs(mean1 / m - 1.0) < 0.02);
    CHECK(std::abs(mean3 / m - 3.0) < 0.03);
    double n = m;
    double cov = sum_ts / n - (sum_t / n) * (sum_s / n);
    double corr = cov / std::sqrt((sum_t2 / n - std::pow(sum_t / n, 2)) *
                                  (sum_s2 / n - std::pow(sum_s / n, 2)));
    CHECK(std::abs(corr) < 4.0 / std::sqrt(n));
}

TEST_CASE("symmetric sampler distributional symmetry") {
    SeriesConfig cfg = quick_cfg(5e-3);
    SamplerSpec spec{SourceLaw::sym_series, 1.5, 0.0, 0.0, cfg};
    auto draws = draw_batch(spec, 40000, 5);
    std::vector<double> neg(draws);
    for (double& d : neg) d = -d;
    CHECK(ks_two_sample(draws, neg) < 0.015);
    std::sort(draws.begin(), draws.end());
    double median = draws[draws.size() / 2];
    CHECK(std::abs(median) < 0.05);
}

TEST_CASE("symmetric sampler matches the closed-form characteristic function") {
    SeriesConfig cfg = quick_cfg(5e-3);
    for (double alpha : {0.5, 1.5}) {
        SamplerSpec spec{SourceLaw::sym_series, alpha, 0.0, 0.0, cfg};
        CharFn cf = CharFn::canonical(LevyCanonical::symmetric(alpha));
        std::vector<double> grid{0.1, 0.5, 1.0, 2.0, 3.0};
        auto rep = verify_cf(spec, cf, grid, 100000, 13);
        CHECK(rep.sup_err < 0.02);
        for (const auto& p : rep.points) CHECK(std::abs(p.analytic.imag()) < 1e-12);
    }
}

TEST_CASE("sym sampler without compensation flags non-convergence above alpha = 1") {
    SeriesConfig cfg;
    cfg.tail_tolerance = 1e-4;
    cfg.max_terms = 2000;
    cfg.compensate = false;
    ArrivalStream s(77);
    auto r = sample_sym(1.5, cfg, s);
    CHECK_FALSE(r.converged);
    CHECK(r.terms == 2000);
}

TEST_CASE("asym12 series descriptor") {
    SUBCASE("printed compensator values") {
        Asym12Series series = Asym12Series::with_constant(1.5, 1.0);
        CHECK(series.compensator(1) == doctest::Approx(1.0 / 3.0));  // (0.5/1.5)(1 - 0)
        double prev = series.compensator(1);
        for (std::uint64_t i = 2; i <= 50; ++i) {
            double ai = series.compensator(i);
            CHECK(ai > 0.0);
            CHECK(ai < prev);
            prev = ai;
        }
    }
    SUBCASE("uncalibrated constant is rejected") {
        Asym12Series bad{1.5, 0.0};
        SeriesConfig cfg = quick_cfg(5e-3);
        ArrivalStream s(1);
        CHECK_THROWS_AS(sample_asym_12(bad, cfg, s), std::invalid_argument);
    }
    SUBCASE("table is versioned and covers the grid") {
        CHECK(std::string(asym12_calibration_version()) == "asym12-cal-v1");
        auto s15 = Asym12Series::calibrated(1.5);
        CHECK(s15.c_alpha_series > 0.7);
        CHECK(s15.c_alpha_series < 0.83);
    }
}

TEST_CASE("asym12 sampler matches the target characteristic function and is centered") {
    SeriesConfig cfg = quick_cfg(5e-3);
    SamplerSpec spec{SourceLaw::asym12_series, 1.5, 0.0, 0.0, cfg};
    CharFn cf = CharFn::canonical(LevyCanonical::totally_asymmetric(1.5));
    std::vector<double> grid{0.2, 0.6, 1.0, 1.8, 3.0};
    auto rep = verify_cf(spec, cf, grid, 100000, 21);
    CHECK(rep.sup_err < 0.02);

    auto draws = draw_batch(spec, 100000, 22);
    double mean = 0.0;
    for (double d : draws) mean += d;
    mean /= static_cast<double>(draws.size());
    CHECK(std::abs(mean) < 0.05);  // strictly stable, mean zero
}

TEST_CASE("compound Poisson big-jump component") {
    SUBCASE("zero-jump atom frequency is e^{-1/alpha}") {
        auto split = TruncationSplit::asymmetric(1.5);
        ArrivalStream s(40);
        const int n = 200000;
        int zeros = 0;
        for (int i = 0; i < n; ++i) {
            auto d = sample_xupper(split, s);
            if (d.n_jumps == 0) {
                zeros++;
                CHECK(d.value == doctest::Approx(-2.0));  // -1/(alpha-1)
            }
        }
        double freq = static_cast<double>(zeros) / n;
        double expect = std::exp(-1.0 / 1.5);
        CHECK(std::abs(freq - expect) < 3.0 * std::sqrt(expect * (1 - expect) / n));
    }
    SUBCASE("every jump has modulus at least one") {
        auto split = TruncationSplit::asymmetric(1.5);
        ArrivalStream s(41);
        for (int i = 0; i < 20000; ++i) {
            auto d = sample_xupper(split, s);
            CHECK(d.value + 2.0 >= static_cast<double>(d.n_jumps) - 1e-12);
        }
    }
    SUBCASE("symmetric tail sits inside the lemma bracket at y = 2") {
        auto split = TruncationSplit::symmetric_split(1.5);
        ArrivalStream s(42);
        const int n = 200000;
        int hits = 0;
        for (int i = 0; i < n; ++i) hits += (sample_xupper(split, s).value >= 2.0) ? 1 : 0;
        double p = static_cast<double>(hits) / n;
        double lo = std::exp(-1.0) * std::pow(2.0, -1.5);
        double hi = (10.0 / 3.0) * std::pow(2.0, -1.5);
        CHECK(p >= lo);
        CHECK(p <= hi);
    }
}

TEST_CASE("CMS oracle") {
    SUBCASE("rejects unsupported beta") {
        ArrivalStream s(1);
        CHECK_THROWS_AS(sample_cms({0.5, 0.5, 1.0, 0.0}, s), std::domain_error);
        CHECK_THROWS_AS(sample_cms({0.5, -1.0, 1.0, 0.0}, s), std::domain_error);
    }
    SUBCASE("alpha = 0.5, beta = 1 equals the closed-form law") {
        SamplerSpec spec{SourceLaw::cms, 0.5, 1.0, 0.0, {}};
        auto draws = draw_batch(spec, 30000, 51);
        for (double d : draws) CHECK(d > 0.0);
        CHECK(ks_statistic(draws, levy_cdf) < 0.015);
    }
    SUBCASE("two-sample agreement with the series samplers") {
        SeriesConfig cfg = quick_cfg(5e-3);
        SamplerSpec series{SourceLaw::asym01_series, 0.5, 0.0, 0.0, cfg};
        SamplerSpec cms{SourceLaw::cms, 0.5, 1.0, 0.0, {}};
        CHECK(ks_two_sample(draw_batch(series, 30000, 61), draw_batch(cms, 30000, 62)) <
              0.02);

        SamplerSpec series15{SourceLaw::asym12_series, 1.5, 0.0, 0.0, cfg};
        SamplerSpec cms15{SourceLaw::cms, 1.5, 1.0, 0.0, {}};
        CHECK(ks_two_sample(draw_batch(series15, 30000, 63), draw_batch(cms15, 30000, 64)) <
              0.02);
    }
}

TEST_CASE("draw_batch is independent of the worker count") {
    SeriesConfig cfg = quick_cfg(1e-2);
    SamplerSpec spec{SourceLaw::sym_series, 0.5, 0.0, 0.0, cfg};
    setenv("STABLE_TAILS_THREADS", "1", 1);
    auto one = draw_batch(spec, 300000, 99);
    setenv("STABLE_TAILS_THREADS", "2", 1);
    auto two = draw_batch(spec, 300000, 99);
    unsetenv("STABLE_TAILS_THREADS");
    CHECK(one == two);
}

TEST_CASE("per-alpha series defaults") {
    CHECK(SeriesConfig::for_alpha(0.5).tail_tolerance == doctest::Approx(1e-4));
    CHECK(SeriesConfig::for_alpha(1.5).tail_tolerance == doctest::Approx(2e-3));
    CHECK(SeriesConfig::for_alpha(0.5).compensate);
}
