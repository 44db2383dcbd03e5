#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stable_tails/bounds.hpp"
#include "stable_tails/series.hpp"

namespace stable_tails {

/// Exact binomial (Clopper-Pearson) estimate of a probability.
struct MCEstimate {
    double p_hat = 0.0;
    std::uint64_t n = 0;
    std::uint64_t hits = 0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    double confidence = 0.99;
    std::uint64_t seed = 0;
};

MCEstimate clopper_pearson(std::uint64_t hits, std::uint64_t n, double confidence,
                           std::uint64_t seed);

/// Sampling sources the harness can draw from.
enum class SourceLaw {
    asym01_series,
    sym_series,
    asym12_series,
    xupper_asym,
    xupper_sym,
    cms,
    residual,
};

struct SamplerSpec {
    SourceLaw law;
    double alpha;
    double beta = 0.0;   ///< CMS only
    double x = 0.0;      ///< residual conditioning point
    SeriesConfig cfg{};  ///< series laws

    static SamplerSpec series_for(BoundLaw law, double alpha, const SeriesConfig& cfg);
};

/// n draws, sharded deterministically: shard k of fixed size 2^18 uses the
/// sub-stream (seed, k), so the result is independent of the worker count and
/// a longer batch extends a shorter one with the same seed.  Workers are
/// capped by STABLE_TAILS_THREADS when set.
std::vector<double> draw_batch(const SamplerSpec& spec, std::uint64_t n, std::uint64_t seed);

std::uint64_t batch_shard_size();
unsigned worker_count();

enum class Verdict { pass, fail, vacuous, inconclusive, refused };
std::string to_string(Verdict v);

struct PointResult {
    double alpha = 0.0;
    double y = 0.0;
    double threshold = 0.0;
    double bound = 0.0;      ///< clamped (and debug-scaled) bound value
    double raw_bound = 0.0;  ///< unclamped
    Side side = Side::right;
    Direction direction = Direction::upper;
    std::string regime;
    bool vacuous = false;
    Verdict verdict = Verdict::refused;
    MCEstimate estimate{};
    std::string note;
};

struct VerificationReport {
    std::string spec_id;
    double alpha = 0.0;
    std::uint64_t n_request = 0;
    double confidence = 0.99;
    std::uint64_t seed = 0;
    double debug_scale = 1.0;
    std::string config_hash;
    std::vector<PointResult> points;

    std::uint64_t count(Verdict v) const;
    bool any_fail() const { return count(Verdict::fail) > 0; }

    std::string to_csv() const;
    std::string to_json() const;
};

/// Empirical tail probability P(X >= threshold) (right) or P(X <= threshold)
/// (left) with an exact interval; deterministic given the seed.
MCEstimate empirical_tail(const SamplerSpec& spec, double threshold, Side side,
                          std::uint64_t n, double confidence, std::uint64_t seed);

/// Verify one bound spec over a y-grid.  For lower bounds the sample size
/// auto-scales so the expected hit count under the bound is >= 100 (capped at
/// 1e7; bounds below the cap's resolution keep the requested n -- any hit
/// then certifies them).  One batch per report, reused across the grid.
/// `debug_scale` multiplies bound values (negative-control hook; non-semantic).
VerificationReport verify_bound(std::string_view spec_id, double alpha,
                                const std::vector<double>& y_grid, std::uint64_t n,
                                double confidence, std::uint64_t seed,
                                double debug_scale = 1.0,
                                std::optional<double> theta = std::nullopt,
                                const SeriesConfig* cfg_override = nullptr);

/// Batch size verify_bound would draw for this request (the auto-scale
/// maximum over the grid).
std::uint64_t verify_bound_batch_size(std::string_view spec_id, double alpha,
                                      const std::vector<double>& y_grid, std::uint64_t n,
                                      double debug_scale = 1.0,
                                      std::optional<double> theta = std::nullopt);

/// Same verification against a caller-provided batch (one batch can serve
/// several specs of the same law).  The batch must come from draw_batch with
/// the recorded seed for the determinism contract to hold; auto-scaled
/// points are capped at the batch size.
VerificationReport verify_bound_with_batch(std::string_view spec_id, double alpha,
                                           const std::vector<double>& y_grid,
                                           std::uint64_t n, double confidence,
                                           std::uint64_t seed,
                                           const std::vector<double>& draws,
                                           double debug_scale = 1.0,
                                           std::optional<double> theta = std::nullopt);

struct CfPoint {
    double t = 0.0;
    std::complex<double> empirical;
    std::complex<double> analytic;
    double abs_err = 0.0;
    double error_bar = 0.0;  ///< CLT bar ~ 4/sqrt(n) per component
};

struct CfReport {
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    double sup_err = 0.0;
    std::vector<CfPoint> points;
};

/// sup_t |empirical CF - analytic CF| over the grid.
CfReport verify_cf(const SamplerSpec& spec, const CharFn& cf,
                   const std::vector<double>& t_grid, std::uint64_t n, std::uint64_t seed);

struct MomentReport {
    double alpha = 0.0, x = 0.0;
    std::uint64_t n = 0, seed = 0;
    double mean_mc = 0.0, mean_exact = 0.0, mean_se = 0.0;
    double var_mc = 0.0, var_exact = 0.0, var_se = 0.0;
    bool pass = false;  ///< both within 3 standard errors
};

MomentReport verify_residual_moments(double alpha, double x, std::uint64_t n,
                                     std::uint64_t seed,
                                     const SeriesConfig* cfg_override = nullptr);

struct MgfPoint {
    double lambda = 0.0;
    double mc = 0.0;
    double analytic = 0.0;
    double rel_err = 0.0;
    double mc_rel_se = 0.0;
};

struct MgfReport {
    double alpha = 0.0, x = 0.0;
    std::uint64_t n = 0, seed = 0;
    std::vector<MgfPoint> points;
    double max_rel_err = 0.0;
};

/// MC average of exp(lambda S(x)) against exp(-f(lambda,x)); lambdas <= 0.
MgfReport verify_mgf(double alpha, double x, const std::vector<double>& lambdas,
                     std::uint64_t n, std::uint64_t seed,
                     const SeriesConfig* cfg_override = nullptr);

/// One-sample Kolmogorov-Smirnov statistic against an evaluable CDF
/// (requires >= 1000 samples).
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample KS statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// FNV-1a hash of a canonical config string; appears in every artifact.
std::string config_hash(const std::string& canonical);

}  // namespace stable_tails
