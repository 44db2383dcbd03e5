#include "stable_tails/analytic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "stable_tails/quad.hpp"

namespace stable_tails {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Singularity-safe kernels: the x -> 0 behavior is factored out so the
// integrands never multiply an overflowing power by a vanishing factor.
// (cos u - 1) / u^2  ->  -1/2
double cos_rem(double u) {
    if (std::abs(u) < 1e-4) return -0.5 + u * u / 24.0;
    return (std::cos(u) - 1.0) / (u * u);
}
// (sin u - u) / u^3  ->  -1/6
double sin_rem(double u) {
    if (std::abs(u) < 1e-3) return -1.0 / 6.0 + u * u / 120.0;
    return (std::sin(u) - u) / (u * u * u);
}
// sin(u) / u
double sinc(double u) {
    if (std::abs(u) < 1e-4) return 1.0 - u * u / 6.0;
    return std::sin(u) / u;
}

void require_alpha_12(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0)) {
        throw std::domain_error("split descriptors need alpha in (1,2); got " +
                                std::to_string(alpha));
    }
}

// sum_{k>=2} z^k / (k! (k - alpha)) -- the one-sided inner exponent with
// tilt z (real or i t); entire, so plain term recursion suffices.
std::complex<double> inner_series(double alpha, std::complex<double> z) {
    std::complex<double> term = z * z / 2.0;
    std::complex<double> sum = term / (2.0 - alpha);
    for (int k = 3; k < 400; ++k) {
        term *= z / static_cast<double>(k);
        std::complex<double> add = term / (static_cast<double>(k) - alpha);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

// 2 sum_{k>=1} w^k / ((2k)! (2k - alpha)) with w = t^2 (cosh form) or w = -t^2
// (cos form): the symmetric inner exponent.
double inner_series_sym(double alpha, double w) {
    double term = w / 2.0;
    double sum = 2.0 * term / (2.0 - alpha);
    for (int k = 2; k < 400; ++k) {
        term *= w / (static_cast<double>(2 * k) * static_cast<double>(2 * k - 1));
        double add = 2.0 * term / (static_cast<double>(2 * k) - alpha);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

}  // namespace

double one_minus_cos_integral(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0) {
        throw std::domain_error("J(alpha) defined for alpha in (0,1) u (1,2)");
    }
    static std::mutex mu;
    static std::map<double, double> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(alpha);
    if (it != cache.end()) return it->second;

    double split = 0.5 * kPi;
    auto head = [=](double z) { return -cos_rem(z) * std::pow(z, 1.0 - alpha); };
    double value = integrate_singular(head, 0.0, split, 1e-12);
    value += std::pow(split, -alpha) / alpha;  // int_split^inf z^{-alpha-1} dz
    auto amp = [=](double z) { return std::pow(z, -alpha - 1.0); };
    value -= integrate_cos_tail(amp, split, 1.0);
    cache.emplace(alpha, value);
    return value;
}

std::complex<double> jump_cf(double alpha, bool symmetric, double t) {
    require_alpha_12(alpha);
    if (t == 0.0) return {1.0, 0.0};
    double at = std::abs(t);
    auto amp = [=](double x) { return alpha * std::pow(x, -alpha - 1.0); };
    double re, im;
    if (at < 0.02) {
        // long first period; the plain adaptive rule is cheaper and exact here
        double cut = std::min(4.0 * kPi / at, 1e6);
        re = integrate([&](double x) { return amp(x) * std::cos(at * x); }, 1.0, cut, 1e-12);
        im = integrate([&](double x) { return amp(x) * std::sin(at * x); }, 1.0, cut, 1e-12);
    } else {
        re = integrate_cos_tail(amp, 1.0, at);
        im = integrate_sin_tail(amp, 1.0, at);
    }
    if (symmetric) return {re, 0.0};
    return {re, t > 0.0 ? im : -im};
}

std::complex<double> cf_exponent(const CharFn& cf, double t) {
    const double alpha = cf.canon.alpha;
    switch (cf.kind) {
        case CharFn::Kind::stable_canonical: {
            validate(cf.canon);
            if (t == 0.0) return {0.0, 0.0};
            double at = std::abs(t);
            double pow_at = std::pow(at, alpha);
            if (cf.canon.c1 == cf.canon.c2) {
                // symmetric: -(c1+c2) |t|^alpha J(alpha)
                return {-(cf.canon.c1 + cf.canon.c2) * pow_at * one_minus_cos_integral(alpha),
                        0.0};
            }
            // Gamma(-alpha) |t|^alpha [(c1+c2) cos(pi alpha/2)
            //                          - i (c1-c2) sin(pi alpha/2) sgn(t)]
            double g = gamma_negative(alpha);
            double re = g * pow_at * (cf.canon.c1 + cf.canon.c2) * std::cos(0.5 * kPi * alpha);
            double im = -g * pow_at * (cf.canon.c1 - cf.canon.c2) *
                        std::sin(0.5 * kPi * alpha) * (t > 0.0 ? 1.0 : -1.0);
            return {re, im};
        }
        case CharFn::Kind::split_inner: {
            require_alpha_12(alpha);
            if (cf.symmetric) return {inner_series_sym(alpha, -t * t), 0.0};
            return inner_series(alpha, std::complex<double>(0.0, t));
        }
        case CharFn::Kind::split_outer: {
            require_alpha_12(alpha);
            std::complex<double> phi_y = jump_cf(alpha, cf.symmetric, t);
            if (cf.symmetric) return (2.0 / alpha) * (phi_y - 1.0);
            return (1.0 / alpha) * (phi_y - 1.0) -
                   std::complex<double>(0.0, t / (alpha - 1.0));
        }
    }
    throw std::logic_error("unreachable CharFn kind");
}

std::complex<double> cf_eval(const CharFn& cf, double t) { return std::exp(cf_exponent(cf, t)); }

std::complex<double> cf_exponent_quadrature(const LevyCanonical& canon, double t) {
    validate(canon);
    if (t == 0.0) return {0.0, 0.0};
    const double alpha = canon.alpha;
    const double at = std::abs(t);
    const double split = 1.0 / at;
    double re, im;
    if (alpha < 1.0) {
        // int_0^inf (e^{i a x} - 1) x^{-alpha-1} dx, a = |t|
        auto re_head = [=](double x) {
            return at * at * cos_rem(at * x) * std::pow(x, 1.0 - alpha);
        };
        auto im_head = [=](double x) { return at * sinc(at * x) * std::pow(x, -alpha); };
        re = integrate_singular(re_head, 0.0, split, 1e-12);
        im = integrate_singular(im_head, 0.0, split, 1e-12);
        auto amp = [=](double x) { return std::pow(x, -alpha - 1.0); };
        re += integrate_cos_tail(amp, split, at) - std::pow(split, -alpha) / alpha;
        im += integrate_sin_tail(amp, split, at);
    } else {
        // int_0^inf (e^{i a x} - 1 - i a x) x^{-alpha-1} dx
        auto re_head = [=](double x) {
            return at * at * cos_rem(at * x) * std::pow(x, 1.0 - alpha);
        };
        auto im_head = [=](double x) {
            return at * at * at * sin_rem(at * x) * std::pow(x, 2.0 - alpha);
        };
        re = integrate_singular(re_head, 0.0, split, 1e-12);
        im = integrate_singular(im_head, 0.0, split, 1e-12);
        auto amp = [=](double x) { return std::pow(x, -alpha - 1.0); };
        re += integrate_cos_tail(amp, split, at) - std::pow(split, -alpha) / alpha;
        im += integrate_sin_tail(amp, split, at) -
              at * std::pow(split, 1.0 - alpha) / (alpha - 1.0);
    }
    std::complex<double> pos(re, t > 0.0 ? im : -im);
    std::complex<double> neg = std::conj(pos);
    return canon.c1 * pos + canon.c2 * neg;
}

double residual_exponent(double alpha, double x, double lambda) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("residual exponent: alpha in (0,1)");
    if (!(x > 0.0)) throw std::domain_error("residual exponent: x > 0");
    if (lambda > 0.0) {
        throw std::domain_error("residual MGF exponent is established for lambda <= 0 only");
    }
    if (lambda == 0.0) return 0.0;
    // substitution w = (x+y)^{-1/alpha}:
    //   f = int_0^{x^{-1/alpha}} (1 - e^{lambda alpha^{-1/alpha} w}) alpha w^{-alpha-1} dw
    const double c = lambda * std::pow(alpha, -1.0 / alpha);
    const double upper = std::pow(x, -1.0 / alpha);
    // (1 - e^{cw}) w^{-alpha-1} = [-expm1(cw)/(cw)] * c * w^{-alpha}
    auto integrand = [=](double w) {
        double u = c * w;
        double ratio = (std::abs(u) < 1e-8) ? (1.0 + 0.5 * u) : (std::expm1(u) / u);
        return -ratio * c * alpha * std::pow(w, -alpha);
    };
    return integrate_singular(integrand, 0.0, upper, 1e-11);
}

double residual_exponent_series(double alpha, double x, double lambda) {
    if (lambda > 0.0) throw std::domain_error("lambda must be <= 0");
    if (lambda == 0.0) return 0.0;
    const double c = lambda * std::pow(alpha, -1.0 / alpha);
    const double w = std::pow(x, -1.0 / alpha);
    // f = -alpha x sum_{k>=1} (c W)^k / (k! (k-alpha)), W = x^{-1/alpha}
    double cw = c * w;
    double term = cw;
    double sum = term / (1.0 - alpha);
    for (int k = 2; k < 400; ++k) {
        term *= cw / static_cast<double>(k);
        double add = term / (static_cast<double>(k) - alpha);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum) + 1e-300) break;
    }
    return -alpha * x * sum;
}

ResidualSummary residual_summary(double alpha, double x) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("residual summary: alpha in (0,1)");
    if (!(x > 0.0)) throw std::domain_error("residual summary: x > 0");
    ResidualSummary out;
    out.alpha = alpha;
    out.x = x;
    out.mean = std::pow(alpha * x, 1.0 - 1.0 / alpha) / (1.0 - alpha);
    out.variance = std::pow(alpha * x, 1.0 - 2.0 / alpha) / (2.0 - alpha);
    return out;
}

double mgf_residual(double alpha, double x, double lambda) {
    return std::exp(-residual_exponent(alpha, x, lambda));
}

double inner_tilt_exponent_asym(double alpha, double t) {
    require_alpha_12(alpha);
    return inner_series(alpha, std::complex<double>(t, 0.0)).real();
}

double inner_tilt_exponent_sym(double alpha, double t) {
    require_alpha_12(alpha);
    return inner_series_sym(alpha, t * t);
}

double envelope_gap_sym(double t) {
    return t * t * t * t / 24.0 * (14.0 / 15.0 + std::cosh(t) / 15.0);
}

double LaplaceEnvelope::lower(double t) const {
    const double d = 2.0 - alpha;
    switch (regime) {
        case EnvelopeRegime::asym_right:
            if (t < 0.0 || t > 1.0) throw std::domain_error("asym-right tilt needs t in [0,1]");
            return std::exp(0.5 * t * t / d);
        case EnvelopeRegime::asym_left_small:
            if (t > 0.0 || t < -1.0) {
                throw std::domain_error("asym-left-small tilt needs t in [-1,0]");
            }
            return std::exp(0.5 * t * t / d - std::abs(t * t * t) / 6.0);
        case EnvelopeRegime::asym_left_large: {
            if (!(t < -1.0)) throw std::domain_error("asym-left-large tilt needs t < -1");
            double a = std::abs(t);
            double coef = 1.0 / d + 1.0 / (alpha - 1.0);
            constexpr double kInvE = 0.36787944117144232;
            return std::exp(kInvE * (coef * std::pow(a, alpha) - a / (alpha - 1.0)));
        }
        case EnvelopeRegime::symmetric_all:
            return std::exp(t * t / d);
    }
    throw std::logic_error("unreachable envelope regime");
}

double LaplaceEnvelope::upper(double t) const {
    const double d = 2.0 - alpha;
    switch (regime) {
        case EnvelopeRegime::asym_right: {
            if (t < 0.0 || t > 1.0) throw std::domain_error("asym-right tilt needs t in [0,1]");
            double t3 = t * t * t;
            return std::exp(0.5 * t * t / d +
                            (t3 / 8.0 + t3 * std::exp(t) / 24.0) / (3.0 - alpha));
        }
        case EnvelopeRegime::asym_left_small: {
            if (t > 0.0 || t < -1.0) {
                throw std::domain_error("asym-left-small tilt needs t in [-1,0]");
            }
            double a3 = std::abs(t * t * t);
            return std::exp(0.5 * t * t / d + a3 / (6.0 * (3.0 - alpha)));
        }
        case EnvelopeRegime::asym_left_large: {
            if (!(t < -1.0)) throw std::domain_error("asym-left-large tilt needs t < -1");
            double a = std::abs(t);
            double coef = 1.0 / d + 1.0 / (alpha - 1.0);
            return std::exp(coef * std::pow(a, alpha) - a / (alpha - 1.0));
        }
        case EnvelopeRegime::symmetric_all:
            return std::exp(t * t / d + envelope_gap_sym(t));
    }
    throw std::logic_error("unreachable envelope regime");
}

LaplaceEnvelope laplace_envelope(double alpha, EnvelopeRegime regime) {
    require_alpha_12(alpha);
    return {alpha, regime};
}

DensityValue density_series(const DensityModel& model, double x) {
    const double alpha = model.alpha;
    if (!(alpha > 0.0 && alpha <= 2.0) || alpha == 1.0) {
        throw std::domain_error("density series: alpha in (0,1) or (1,2]");
    }
    const long double ax = std::abs(static_cast<long double>(x));
    if (alpha < 1.0) {
        if (!(ax > 0.0L)) {
            throw std::domain_error("alpha<1 density series needs x != 0");
        }
        const long double theta =
            (model.angle == DensityModel::Angle::half_pi_alpha) ? 0.5L * kPi * alpha
                                                                : 0.5L * alpha;
        const long double lx = std::log(ax);
        long double sum = 0.0L, comp = 0.0L;
        long double max_term = 0.0L, prev_mag = 0.0L;
        int growth = 0;
        bool terminated = false;
        int small_in_a_row = 0;
        for (int n = 1; n <= 400; ++n) {
            long double lmag = lgammal(static_cast<long double>(n) * alpha + 1.0L) -
                               lgammal(static_cast<long double>(n) + 1.0L) -
                               (static_cast<long double>(n) * alpha + 1.0L) * lx;
            long double mag = expl(lmag);
            long double term =
                ((n % 2 == 1) ? 1.0L : -1.0L) * mag * sinl(static_cast<long double>(n) * theta);
            // Kahan-compensated accumulation
            long double y = term - comp;
            long double t2 = sum + y;
            comp = (t2 - sum) - y;
            sum = t2;
            max_term = std::max(max_term, std::abs(term));
            if (mag > prev_mag && n > 1) {
                if (++growth > 50) {
                    throw std::domain_error(
                        "density series diverges at this x; use the inversion oracle");
                }
            } else {
                growth = 0;
            }
            prev_mag = mag;
            if (std::abs(term) < 1e-12L * std::abs(sum)) {
                if (++small_in_a_row >= 2) {
                    terminated = true;
                    break;
                }
            } else {
                small_in_a_row = 0;
            }
        }
        double value = static_cast<double>(sum / kPi);
        bool ok = terminated && max_term < 1e12L * std::abs(sum);
        return {value, ok};
    }
    // alpha in (1,2]
    const long double lx = (ax > 0.0L) ? std::log(ax) : 0.0L;
    long double sum = 0.0L, comp = 0.0L, max_term = 0.0L;
    bool terminated = false;
    int small_in_a_row = 0;
    for (int n = 0; n <= 500; ++n) {
        long double lmag = lgammal((2.0L * n + 1.0L) / alpha) -
                           lgammal(2.0L * n + 1.0L);
        if (n > 0) {
            if (ax == 0.0L) {
                terminated = true;
                break;  // only the n = 0 term survives at x = 0
            }
            lmag += 2.0L * n * lx;
        }
        long double term = ((n % 2 == 0) ? 1.0L : -1.0L) * expl(lmag);
        long double y = term - comp;
        long double t2 = sum + y;
        comp = (t2 - sum) - y;
        sum = t2;
        max_term = std::max(max_term, std::abs(term));
        if (n > 2 && std::abs(term) < 1e-14L * std::abs(sum)) {
            if (++small_in_a_row >= 2) {
                terminated = true;
                break;
            }
        } else {
            small_in_a_row = 0;
        }
    }
    double value = static_cast<double>(sum / (alpha * kPi));
    bool ok = terminated && max_term < 1e13L * std::abs(sum) && value >= 0.0;
    return {value, ok};
}

double density_inversion(const LevyCanonical& canon, double x) {
    validate(canon);
    CharFn cf = CharFn::canonical(canon);
    // amplitude cutoff where |phi| < 1e-16
    double decay = -cf_exponent(cf, 1.0).real();  // Re exponent = -decay * |t|^alpha
    double t_max = std::pow(37.0 / decay, 1.0 / canon.alpha);

    if (canon.c1 == canon.c2) {
        // real phi: f(x) = (1/pi) int_0^inf phi(t) cos(t x) dt
        auto amp = [&](double t) { return cf_eval(cf, t).real(); };
        double ax = std::abs(x);
        if (ax * t_max < 0.5 * kPi) {
            auto g = [&](double t) { return amp(t) * std::cos(t * ax); };
            return integrate_singular(g, 0.0, t_max, 1e-10) / kPi;
        }
        double head_end = std::min(t_max, 0.5 * kPi / ax);
        auto g = [&](double t) { return amp(t) * std::cos(t * ax); };
        double head = integrate_singular(g, 0.0, head_end, 1e-11);
        double tail = integrate_cos_tail(amp, head_end, ax, 1e-11);
        return (head + tail) / kPi;
    }

    // asymmetric: integrate Re[e^{-itx} phi(t)] over fixed-width cells
    auto g = [&](double t) {
        std::complex<double> e = cf_exponent(cf, t);
        return std::exp(e.real()) * std::cos(e.imag() - t * x);
    };
    double cell = kPi / std::max(std::abs(x), 1.0);
    auto cells = static_cast<std::size_t>(t_max / cell) + 1;
    if (cells > 200000) {
        throw std::runtime_error("density inversion: oscillation count too large at this x");
    }
    double head_end = std::min({1.0, t_max, cell});
    double total = integrate_singular(g, 0.0, head_end, 1e-11);
    double lo = head_end;
    while (lo < t_max) {
        double hi = std::min(lo + cell, t_max);
        total += integrate(g, lo, hi, 1e-12);
        lo = hi;
    }
    return total / kPi;
}

double inversion_total_mass(const LevyCanonical& canon) {
    validate(canon);
    if (canon.c1 != canon.c2) {
        throw std::domain_error("total-mass check implemented for symmetric laws");
    }
    const double alpha = canon.alpha;
    // the law equals sigma times the sigma=1 law (CF exp(-|t|^alpha))
    double sigma_e = (canon.c1 + canon.c2) * one_minus_cos_integral(alpha);
    double sigma = std::pow(sigma_e, 1.0 / alpha);

    auto f = [&](double x) { return density_inversion(canon, x); };

    double spa = std::pow(sigma, alpha);
    if (alpha > 1.0) {
        // R chosen from the tail bound so the missing mass is < 2e-5
        double r = std::pow(c_alpha(alpha) * spa / 2e-5, 1.0 / alpha);
        return 2.0 * integrate(f, 0.0, r, 1e-7);
    }
    // alpha < 1: the power tail carries non-negligible mass out to scales the
    // oscillatory inversion cannot reach; integrate the inversion density
    // over a bulk window and add the term-wise integrated series tail beyond
    // it (in standardized units u = x / sigma)
    double u0 = 40.0;
    double bulk = 2.0 * integrate(f, 0.0, u0 * sigma, 1e-7);
    double tail = 0.0;
    double theta = 0.5 * kPi * alpha;
    for (int n = 1; n <= 120; ++n) {
        double lmag = std::lgamma(n * alpha + 1.0) - std::lgamma(n + 1.0) -
                      n * alpha * std::log(u0);
        double term = ((n % 2 == 1) ? 1.0 : -1.0) * std::exp(lmag) * std::sin(n * theta) /
                      (n * alpha);
        tail += term;
        if (std::abs(term) < 1e-12 * std::abs(tail)) break;
    }
    tail *= 2.0 / kPi;  // both tails
    return bulk + tail;
}

double asymptotic_left_rate(double alpha, double sigma, double y) {
    require_alpha_12(alpha);
    if (!(y > 0.0) || !(sigma > 0.0)) throw std::domain_error("left rate needs y, sigma > 0");
    double kappa = alpha * sigma / std::cos(0.5 * (2.0 - alpha) * kPi);
    double r = y / kappa;
    double pre = 1.0 / std::sqrt(2.0 * alpha * kPi * (alpha - 1.0));
    return pre * std::pow(r, -0.5 * alpha / (alpha - 1.0)) *
           std::exp(-(alpha - 1.0) * std::pow(r, alpha / (alpha - 1.0)));
}

double tilt_root(double alpha, double y) {
    require_alpha_12(alpha);
    double coef = alpha * (1.0 / (2.0 - alpha) + 1.0 / (alpha - 1.0));
    return std::pow((y + 1.0 / (alpha - 1.0)) / coef, 1.0 / (alpha - 1.0));
}

}  // namespace stable_tails
