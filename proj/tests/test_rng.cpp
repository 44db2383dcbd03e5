#include <doctest.h>

#include <cmath>
#include <vector>

#include "stable_tails/rng.hpp"

using namespace stable_tails;

TEST_CASE("identical seed and stream id give bit-identical sequences") {
    ArrivalStream a(123, 7), b(123, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_arrival() == b.next_arrival());
    ArrivalStream c(123, 8);
    bool all_same = true;
    ArrivalStream a2(123, 7);
    for (int i = 0; i < 100; ++i) all_same &= (a2.next_arrival() == c.next_arrival());
    CHECK_FALSE(all_same);
}

TEST_CASE("arrivals are strictly increasing and indexed") {
    ArrivalStream s(1);
    double prev = 0.0;
    for (int i = 1; i <= 10000; ++i) {
        double t = s.next_arrival();
        CHECK(t > prev);
        prev = t;
    }
    CHECK(s.index() == 10000);
    CHECK(s.last_arrival() == prev);
}

TEST_CASE("first arrival is Exp(1) across streams") {
    const int m = 100000;
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
        ArrivalStream s(777, static_cast<std::uint64_t>(i));
        sum += s.next_arrival();
    }
    CHECK(std::abs(sum / m - 1.0) < 0.01);
}

TEST_CASE("tau_i has Erlang moments for i in {1, 5, 20}") {
    const int m = 50000;
    for (int idx : {1, 5, 20}) {
        double mean = 0.0, m2 = 0.0;
        std::vector<double> vals(m);
        for (int i = 0; i < m; ++i) {
            ArrivalStream s(31337, static_cast<std::uint64_t>(i));
            double t = 0.0;
            for (int k = 0; k < idx; ++k) t = s.next_arrival();
            vals[i] = t;
            mean += t;
        }
        mean /= m;
        for (double v : vals) m2 += (v - mean) * (v - mean);
        m2 /= m;
        // E tau_i = i, Var tau_i = i; allow 3 standard errors
        double se_mean = std::sqrt(static_cast<double>(idx) / m);
        double se_var = std::sqrt(2.0 * idx * idx + 6.0 * idx) / std::sqrt(m);
        CHECK(std::abs(mean - idx) < 3.0 * se_mean);
        CHECK(std::abs(m2 - idx) < 3.0 * se_var);
    }
}

TEST_CASE("expected sum of f over arrivals equals the integral of f") {
    // f = e^{-x}: E sum_i f(tau_i) = int_0^inf e^{-x} dx = 1
    const int m = 100000;
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        ArrivalStream s(555, static_cast<std::uint64_t>(i));
        double acc = 0.0, t = 0.0;
        while ((t = s.next_arrival()) < 40.0) acc += std::exp(-t);
        total += acc;
    }
    CHECK(std::abs(total / m - 1.0) < 0.01);
}

TEST_CASE("expected product of f over arrivals below a matches the exponential formula") {
    // f = e^{-x} on [0, a], a = 3: E prod = exp(-int_0^a (1 - e^{-x}) dx)
    const double a = 3.0;
    const int m = 200000;
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        ArrivalStream s(888, static_cast<std::uint64_t>(i));
        double prod = 1.0, t = 0.0;
        while ((t = s.next_arrival()) < a) prod *= std::exp(-t);
        total += prod;
    }
    double expect = std::exp(-(a - 1.0 + std::exp(-a)));
    CHECK(std::abs(total / m - expect) < 0.01 * expect);
}

TEST_CASE("poisson counter has the right mean and variance") {
    ArrivalStream s(42);
    const int m = 200000;
    double mean = 0.0, m2 = 0.0;
    std::vector<double> vals(m);
    for (int i = 0; i < m; ++i) {
        vals[i] = static_cast<double>(s.poisson(2.0 / 1.5));
        mean += vals[i];
    }
    mean /= m;
    for (double v : vals) m2 += (v - mean) * (v - mean);
    m2 /= m;
    CHECK(std::abs(mean - 4.0 / 3.0) < 0.01);
    CHECK(std::abs(m2 - 4.0 / 3.0) < 0.02);
}

TEST_CASE("normal draws are standardized") {
    ArrivalStream s(4242);
    const int m = 200000;
    double mean = 0.0, m2 = 0.0;
    std::vector<double> vals(m);
    for (int i = 0; i < m; ++i) {
        vals[i] = s.normal();
        mean += vals[i];
    }
    mean /= m;
    for (double v : vals) m2 += (v - mean) * (v - mean);
    m2 /= m;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(m2 - 1.0) < 0.02);
}
