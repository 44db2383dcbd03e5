#include "stable_tails/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "stable_tails/analytic.hpp"
#include "stable_tails/quad.hpp"

namespace stable_tails {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_alpha_01(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("alpha must lie in (0,1); got " + std::to_string(alpha));
    }
}

void require_alpha_12(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0)) {
        throw std::domain_error("alpha must lie in (1,2); got " + std::to_string(alpha));
    }
}

void require_alpha_any(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0) {
        throw std::domain_error("alpha must lie in (0,1) or (1,2); got " +
                                std::to_string(alpha));
    }
}

// Arrival level L with remainder mean (alpha L)^{1-1/alpha}/(1-alpha) = tol.
double level_for_mean(double alpha, double tol) {
    return std::pow((1.0 - alpha) * tol, alpha / (alpha - 1.0)) / alpha;
}

// Arrival level L with remainder variance (alpha L)^{1-2/alpha}/(2-alpha) = tol^2.
double level_for_std_asym01(double alpha, double tol) {
    return std::pow((2.0 - alpha) * tol * tol, alpha / (alpha - 2.0)) / alpha;
}

// Symmetric series: Var of the tail beyond level L is
// (alpha/2)^{-2/alpha} L^{1-2/alpha} / (2/alpha - 1).
double sym_tail_variance(double alpha, double level) {
    return std::pow(0.5 * alpha, -2.0 / alpha) * std::pow(level, 1.0 - 2.0 / alpha) /
           (2.0 / alpha - 1.0);
}

double level_for_std_sym(double alpha, double tol) {
    double target = tol * tol * (2.0 / alpha - 1.0) * std::pow(0.5 * alpha, 2.0 / alpha);
    return std::pow(target, alpha / (alpha - 2.0));
}

// alpha in (1,2): level chosen so that the Berry-Esseen estimate
// 0.56 * m3 / v^{3/2} of the Gaussian-replacement error is <= tol, where the
// tail jumps have intensity coefficient A (jump-size density A |u|^{-alpha-1}
// in total over both sides).  Jump cutoff u and arrival level L = (A/alpha)
// u^{-alpha}.
double jump_cutoff_for_be(double alpha, double tol, double intensity_coeff) {
    double c = tol * (3.0 - alpha) * std::sqrt(intensity_coeff) /
               (0.56 * std::pow(2.0 - alpha, 1.5));
    return std::pow(c, 2.0 / alpha);
}

double tail_variance_from_cutoff(double alpha, double cutoff, double intensity_coeff) {
    return intensity_coeff * std::pow(cutoff, 2.0 - alpha) / (2.0 - alpha);
}

// (alpha x)^{-1/alpha} with a fast path for the ubiquitous alpha = 1/2.
inline double pow_neg_inv_alpha(double ax, double inv_alpha) {
    if (inv_alpha == 2.0) return 1.0 / (ax * ax);
    return std::pow(ax, -inv_alpha);
}

}  // namespace

double residual_mean(double alpha, double x) {
    require_alpha_01(alpha);
    return std::pow(alpha * x, 1.0 - 1.0 / alpha) / (1.0 - alpha);
}

double residual_variance(double alpha, double x) {
    require_alpha_01(alpha);
    return std::pow(alpha * x, 1.0 - 2.0 / alpha) / (2.0 - alpha);
}

SeriesSample sample_asym_01(double alpha, const SeriesConfig& cfg, ArrivalStream& s) {
    require_alpha_01(alpha);
    if (!(cfg.tail_tolerance > 0.0) || cfg.max_terms < 1) {
        throw std::invalid_argument("series config requires tail_tolerance > 0, max_terms >= 1");
    }
    const double level = cfg.compensate ? level_for_std_asym01(alpha, cfg.tail_tolerance)
                                        : level_for_mean(alpha, cfg.tail_tolerance);
    const double inv_alpha = 1.0 / alpha;

    SeriesSample out;
    double sum = 0.0;
    double eff_level = level;
    const double start = s.last_arrival();  // fresh arrival process by memorylessness
    for (;;) {
        double tau = s.next_arrival() - start;
        if (tau > level) break;  // tau belongs to the dropped tail region
        sum += pow_neg_inv_alpha(alpha * tau, inv_alpha);
        if (++out.terms >= cfg.max_terms) {
            eff_level = tau;
            out.converged = false;
            break;
        }
    }
    out.level = eff_level;
    out.remainder_mean = residual_mean(alpha, eff_level);
    out.remainder_std = std::sqrt(residual_variance(alpha, eff_level));
    out.value = sum + (cfg.compensate ? out.remainder_mean : 0.0);
    if (!out.converged) {
        double metric = cfg.compensate ? out.remainder_std : out.remainder_mean;
        out.converged = metric <= cfg.tail_tolerance;
    }
    return out;
}

SeriesSample sample_residual(double alpha, double x, const SeriesConfig& cfg,
                             ArrivalStream& s) {
    require_alpha_01(alpha);
    if (!(x > 0.0)) throw std::domain_error("residual series requires x > 0");
    const double u_level = std::max(
        x, cfg.compensate ? level_for_std_asym01(alpha, cfg.tail_tolerance)
                          : level_for_mean(alpha, cfg.tail_tolerance));
    const double offset_level = u_level - x;
    const double inv_alpha = 1.0 / alpha;

    SeriesSample out;
    double sum = 0.0;
    double eff_u = u_level;
    if (offset_level > 0.0) {
        const double start = s.last_arrival();
        for (;;) {
            double off = s.next_arrival() - start;
            if (off > offset_level) break;
            sum += pow_neg_inv_alpha(alpha * (x + off), inv_alpha);
            if (++out.terms >= cfg.max_terms) {
                eff_u = x + off;
                out.converged = false;
                break;
            }
        }
    }
    out.level = eff_u - x;
    out.remainder_mean = residual_mean(alpha, eff_u);
    out.remainder_std = std::sqrt(residual_variance(alpha, eff_u));
    out.value = sum + (cfg.compensate ? out.remainder_mean : 0.0);
    if (!out.converged) {
        double metric = cfg.compensate ? out.remainder_std : out.remainder_mean;
        out.converged = metric <= cfg.tail_tolerance;
    }
    return out;
}

SeriesSample sample_sym(double alpha, const SeriesConfig& cfg, ArrivalStream& s) {
    require_alpha_any(alpha);
    if (!(cfg.tail_tolerance > 0.0) || cfg.max_terms < 1) {
        throw std::invalid_argument("series config requires tail_tolerance > 0, max_terms >= 1");
    }
    double level;
    if (alpha < 1.0) {
        level = level_for_std_sym(alpha, cfg.tail_tolerance);
    } else {
        double cutoff = jump_cutoff_for_be(alpha, cfg.tail_tolerance, 2.0);
        level = (2.0 / alpha) * std::pow(cutoff, -alpha);
    }
    const double inv_alpha = 1.0 / alpha;
    const double scale = std::pow(0.5 * alpha, -inv_alpha);

    SeriesSample out;
    double sum = 0.0;
    double eff_level = level;
    const double start = s.last_arrival();
    for (;;) {
        double tau = s.next_arrival() - start;
        if (tau > level) break;
        sum += s.rademacher() * pow_neg_inv_alpha(tau, inv_alpha);
        if (++out.terms >= cfg.max_terms) {
            eff_level = tau;
            out.converged = false;
            break;
        }
    }
    double tail_var = sym_tail_variance(alpha, eff_level);
    out.level = eff_level;
    out.remainder_mean = 0.0;
    out.remainder_std = std::sqrt(tail_var);
    out.value = scale * sum;
    if (cfg.compensate) out.value += out.remainder_std * s.normal();
    if (!out.converged && alpha < 1.0) {
        out.converged = out.remainder_std <= cfg.tail_tolerance;
    }
    return out;
}

double Asym12Series::compensator(std::uint64_t i) const {
    require_alpha_12(alpha);
    if (i < 1) throw std::domain_error("compensator index starts at 1");
    double q = (alpha - 1.0) / alpha;
    return q * (std::pow(static_cast<double>(i), q) - std::pow(static_cast<double>(i - 1), q));
}

Asym12Series Asym12Series::with_constant(double alpha, double c) {
    require_alpha_12(alpha);
    return {alpha, c};
}

SeriesSample sample_asym_12(const Asym12Series& series, const SeriesConfig& cfg,
                            ArrivalStream& s) {
    require_alpha_12(series.alpha);
    if (!(series.c_alpha_series > 0.0) || !std::isfinite(series.c_alpha_series)) {
        throw std::invalid_argument("asym12 series constant is not calibrated");
    }
    if (!(cfg.tail_tolerance > 0.0) || cfg.max_terms < 1) {
        throw std::invalid_argument("series config requires tail_tolerance > 0, max_terms >= 1");
    }
    const double alpha = series.alpha;
    const double c = series.c_alpha_series;
    const double intensity = alpha * std::pow(c, alpha);
    double cutoff = jump_cutoff_for_be(alpha, cfg.tail_tolerance, intensity);
    double level = (intensity / alpha) * std::pow(cutoff, -alpha);
    const double inv_alpha = 1.0 / alpha;

    SeriesSample out;
    double sum = 0.0;
    double eff_level = level;
    const double start = s.last_arrival();
    for (;;) {
        double tau = s.next_arrival() - start;
        if (tau > level) break;
        sum += pow_neg_inv_alpha(tau, inv_alpha);
        if (++out.terms >= cfg.max_terms) {
            eff_level = tau;
            out.converged = false;
            break;
        }
    }
    // centering integral of x^{-1/alpha} over the covered region [0, L]
    double centering = alpha / (alpha - 1.0) * std::pow(eff_level, (alpha - 1.0) / alpha);
    double eff_cutoff = c * std::pow(eff_level, -inv_alpha);
    double tail_var = tail_variance_from_cutoff(alpha, eff_cutoff, intensity);
    out.level = eff_level;
    out.remainder_mean = 0.0;
    out.remainder_std = std::sqrt(tail_var);
    out.value = c * (sum - centering);
    if (cfg.compensate) out.value += out.remainder_std * s.normal();
    return out;
}

namespace {

struct CalibrationTable {
    const char* version;
    double alpha_lo;
    double step;
    std::vector<double> values;
};

// Generated by calibrate_asym12_constant over alpha = 1.05 .. 1.95 (step
// 0.05), n = 100000 draws each, seed 0x57AB1ECA1.
const CalibrationTable& calibration_table() {
    static const CalibrationTable table{
        "asym12-cal-v1",
        1.05,
        0.05,
        {
            0.954428,  // alpha = 1.05
            0.916576,  // alpha = 1.10
            0.885305,  // alpha = 1.15
            0.857248,  // alpha = 1.20
            0.836934,  // alpha = 1.25
            0.818473,  // alpha = 1.30
            0.799906,  // alpha = 1.35
            0.786338,  // alpha = 1.40
            0.774368,  // alpha = 1.45
            0.761773,  // alpha = 1.50
            0.753428,  // alpha = 1.55
            0.747324,  // alpha = 1.60
            0.735849,  // alpha = 1.65
            0.732208,  // alpha = 1.70
            0.726837,  // alpha = 1.75
            0.719480,  // alpha = 1.80
            0.719587,  // alpha = 1.85
            0.710164,  // alpha = 1.90
            0.707124,  // alpha = 1.95
        },
    };
    return table;
}

}  // namespace

const char* asym12_calibration_version() { return calibration_table().version; }

double calibrate_asym12_constant(double alpha, std::uint64_t n_draws, std::uint64_t seed) {
    require_alpha_12(alpha);
    SeriesConfig cfg;
    cfg.tail_tolerance = 5e-3;
    // raw series (scale 1): intensity alpha * 1^alpha = alpha
    Asym12Series raw{alpha, 1.0};
    ArrivalStream s(seed, 0xA51 /* calibration stream */);
    std::vector<double> draws(n_draws);
    for (auto& d : draws) d = sample_asym_12(raw, cfg, s).value;

    std::vector<double> t_grid;
    for (int k = 1; k <= 12; ++k) t_grid.push_back(0.1 * k);
    // quadrature-evaluated target characteristic function
    const LevyCanonical target_law = LevyCanonical::totally_asymmetric(alpha);
    std::vector<std::complex<double>> target(t_grid.size());
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
        target[j] = std::exp(cf_exponent_quadrature(target_law, t_grid[j]));
    }

    auto sse = [&](double c) {
        double total = 0.0;
        for (std::size_t j = 0; j < t_grid.size(); ++j) {
            double ct = c * t_grid[j];
            double re = 0.0, im = 0.0;
            for (double d : draws) {
                re += std::cos(ct * d);
                im += std::sin(ct * d);
            }
            std::complex<double> emp(re / n_draws, im / n_draws);
            total += std::norm(emp - target[j]);
        }
        return total;
    };

    // golden-section search on [0.3, 1.3]
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 0.3, b = 1.3;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = sse(x1), f2 = sse(x2);
    while (b - a > 1e-4) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = sse(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = sse(x2);
        }
    }
    return 0.5 * (a + b);
}

Asym12Series Asym12Series::calibrated(double alpha) {
    require_alpha_12(alpha);
    const CalibrationTable& table = calibration_table();
    if (!table.values.empty()) {
        double pos = (alpha - table.alpha_lo) / table.step;
        long idx = std::lround(pos);
        if (idx >= 0 && idx < static_cast<long>(table.values.size()) &&
            std::abs(pos - static_cast<double>(idx)) < 1e-9) {
            return {alpha, table.values[static_cast<std::size_t>(idx)]};
        }
        // off-grid alpha: linear interpolation when bracketed by the table
        if (pos > 0.0 && pos < static_cast<double>(table.values.size()) - 1.0) {
            auto lo = static_cast<std::size_t>(pos);
            double w = pos - static_cast<double>(lo);
            return {alpha, (1.0 - w) * table.values[lo] + w * table.values[lo + 1]};
        }
    }
    // cache on-demand calibrations
    static std::mutex mu;
    static std::map<double, double> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(alpha);
    if (it == cache.end()) {
        it = cache.emplace(alpha, calibrate_asym12_constant(alpha)).first;
    }
    return {alpha, it->second};
}

XUpperDraw sample_xupper(const TruncationSplit& split, ArrivalStream& s) {
    require_alpha_12(split.alpha);
    XUpperDraw draw{split.drift(), s.poisson(split.poisson_mean())};
    const double inv_alpha = 1.0 / split.alpha;
    for (std::uint64_t k = 0; k < draw.n_jumps; ++k) {
        double jump = std::pow(1.0 - s.u01(), -inv_alpha);  // Pareto, |Y| >= 1
        draw.value += split.symmetric ? s.rademacher() * jump : jump;
    }
    return draw;
}

double sample_cms(const StableParams& params, ArrivalStream& s) {
    require_alpha_any(params.alpha);
    if (params.beta != 0.0 && params.beta != 1.0) {
        throw std::domain_error("CMS oracle supports beta in {0, 1} only");
    }
    const double alpha = params.alpha;
    const double beta = params.beta;
    const double tb = beta * std::tan(0.5 * kPi * alpha);
    const double b0 = std::atan(tb) / alpha;
    const double s0 = std::pow(1.0 + tb * tb, 0.5 / alpha);

    double v = kPi * (s.u01() - 0.5);
    double w = s.exponential();
    double x = s0 * std::sin(alpha * (v + b0)) / std::pow(std::cos(v), 1.0 / alpha) *
               std::pow(std::cos(v - alpha * (v + b0)) / w, (1.0 - alpha) / alpha);
    return params.sigma * x + params.mu;
}

}  // namespace stable_tails
