#pragma once

#include <cstdint>

#include "stable_tails/params.hpp"
#include "stable_tails/rng.hpp"

namespace stable_tails {

/// Truncation policy for the Poisson-series samplers.
///
/// The series are summed over all arrivals up to a deterministic level L
/// derived from `tail_tolerance`; the arrivals beyond L form an independent
/// Poisson process, so the discarded remainder has exactly known mean and
/// variance.  What the tolerance controls depends on the regime:
///
///   * alpha in (0,1), one-sided:  remainder mean (compensate=false) or
///     remainder standard deviation (compensate=true; the conditional mean is
///     added back, so the tolerance bounds the leftover fluctuation).
///   * symmetric, alpha in (0,1): remainder standard deviation.
///   * alpha in (1,2) (symmetric and one-sided): the remainder converges too
///     slowly for a std-dev target to be reachable; with compensate=true it
///     is replaced by a centered Gaussian with the exact remainder variance,
///     and the tolerance bounds the Berry-Esseen estimate of the Kolmogorov
///     error of that replacement.  With compensate=false the same level is
///     used and the remainder is simply dropped.
///
/// max_terms is a hard cap; hitting it flags the sample as not converged and
/// compensates at the last arrival actually reached.
struct SeriesConfig {
    std::uint64_t max_terms = 1'000'000;
    double tail_tolerance = 1e-4;
    bool compensate = true;

    /// Default tolerance per regime: 1e-4 below alpha = 1, 2e-3 above
    /// (see the note above for what the number means in each regime).
    static SeriesConfig for_alpha(double alpha) {
        SeriesConfig cfg;
        if (alpha > 1.0) cfg.tail_tolerance = 2e-3;
        return cfg;
    }
};

struct SeriesSample {
    double value = 0.0;
    std::uint64_t terms = 0;      ///< arrivals included in the partial sum
    double level = 0.0;           ///< covered arrival-time region [0, level]
    double remainder_mean = 0.0;  ///< conditional mean of the dropped tail
    double remainder_std = 0.0;   ///< conditional std-dev of the dropped tail
    bool converged = true;        ///< false: max_terms hit before the level
};

/// Totally asymmetric alpha in (0,1):  X = sum_i (alpha tau_i)^{-1/alpha}.
SeriesSample sample_asym_01(double alpha, const SeriesConfig& cfg, ArrivalStream& s);

/// Symmetric, alpha in (0,1) u (1,2):
/// X = (alpha/2)^{-1/alpha} sum_i eps_i tau_i^{-1/alpha} with Rademacher eps.
SeriesSample sample_sym(double alpha, const SeriesConfig& cfg, ArrivalStream& s);

/// Residual series S(x) = sum_i alpha^{-1/alpha} (x + offset_i)^{-1/alpha}
/// for x > 0, offsets being fresh unit-Poisson arrivals.
SeriesSample sample_residual(double alpha, double x, const SeriesConfig& cfg, ArrivalStream& s);

/// Closed-form moments of S(x) used by the truncation rules.
double residual_mean(double alpha, double x);
double residual_variance(double alpha, double x);

/// The tilde arrivals: offset_i = tau_{i+1} - tau_1 built literally from a
/// base stream.  Distributionally the offsets are again unit-Poisson
/// arrivals, independent of tau_1.
class ResidualStream {
  public:
    ResidualStream(double x, ArrivalStream base) : x_(x), base_(std::move(base)) {}

    double next_offset() {
        if (base_.index() == 0) tau1_ = base_.next_arrival();
        return base_.next_arrival() - tau1_;
    }
    double x() const { return x_; }
    double tau1() const { return tau1_; }
    ArrivalStream& base() { return base_; }

  private:
    double x_;
    ArrivalStream base_;
    double tau1_ = 0.0;
};

/// Totally asymmetric alpha in (1,2):  X = c * sum_i (tau_i^{-1/alpha} - a_i)
/// summed in compensated form over a covered arrival region.  The scale
/// constant is not analytic here; it is calibrated against the target
/// characteristic function (see calibrate_asym12_constant) and cached in a
/// versioned table.
struct Asym12Series {
    double alpha = 0.0;
    double c_alpha_series = 0.0;

    /// Printed per-term compensator sequence
    /// a_i = ((alpha-1)/alpha) (i^{(alpha-1)/alpha} - (i-1)^{(alpha-1)/alpha});
    /// positive and decreasing.  The sampler centers with the integral
    /// int_0^L x^{-1/alpha} dx over the covered region, whose unit cells are
    /// (alpha/(alpha-1))^2 * a_i; summing the raw a_i does not converge.
    double compensator(std::uint64_t i) const;

    static Asym12Series with_constant(double alpha, double c);

    /// Table-backed factory (interpolating the calibration table); calibrates
    /// on demand and caches for alphas far from the table grid.
    static Asym12Series calibrated(double alpha);
};

SeriesSample sample_asym_12(const Asym12Series& series, const SeriesConfig& cfg,
                            ArrivalStream& s);

/// Least-squares fit of the series scale constant on a fixed t-grid against
/// the target characteristic function.  Deterministic for a given seed.
double calibrate_asym12_constant(double alpha, std::uint64_t n_draws = 100000,
                                 std::uint64_t seed = 0x57AB1ECA1ULL);

/// Version tag of the built-in calibration table.
const char* asym12_calibration_version();

/// Compound-Poisson big-jump component: jumps |Y_k| >= 1 with Pareto(alpha)
/// modulus; the asymmetric variant subtracts the drift 1/(alpha-1).
struct TruncationSplit {
    double alpha;
    bool symmetric;

    static TruncationSplit asymmetric(double alpha) { return {alpha, false}; }
    static TruncationSplit symmetric_split(double alpha) { return {alpha, true}; }

    double poisson_mean() const { return (symmetric ? 2.0 : 1.0) / alpha; }
    double drift() const { return symmetric ? 0.0 : -1.0 / (alpha - 1.0); }
};

struct XUpperDraw {
    double value;
    std::uint64_t n_jumps;
};

/// Exact draw of the big-jump component (no truncation error).
XUpperDraw sample_xupper(const TruncationSplit& split, ArrivalStream& s);

/// Chambers-Mallows-Stuck draw of the same laws, used as an independent
/// cross-validation oracle.  Supports beta in {0, 1}.
double sample_cms(const StableParams& params, ArrivalStream& s);

}  // namespace stable_tails
