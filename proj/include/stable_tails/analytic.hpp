#pragma once

#include <complex>
#include <cstdint>
#include <functional>

#include "stable_tails/params.hpp"

namespace stable_tails {

/// Characteristic-function descriptors.
///
///   stable_canonical -- the full law for a LevyCanonical parameter set
///   split_inner      -- jumps restricted to |x| <= 1 (the light component)
///   split_outer      -- jumps with |x| > 1 (compound Poisson, plus the
///                       -t/(alpha-1) drift in the one-sided case)
///
/// split descriptors exist for alpha in (1,2) only; `symmetric` selects the
/// two-sided normalization (c1 = c2 = 1) versus the one-sided one (c1 = 1).
struct CharFn {
    enum class Kind { stable_canonical, split_inner, split_outer };

    Kind kind;
    LevyCanonical canon{0.0, 0.0, 0.0};
    bool symmetric = false;

    static CharFn canonical(const LevyCanonical& c) {
        return {Kind::stable_canonical, c, c.c1 == c.c2};
    }
    static CharFn inner(double alpha, bool symmetric) {
        return {Kind::split_inner, {alpha, 1.0, symmetric ? 1.0 : 0.0}, symmetric};
    }
    static CharFn outer(double alpha, bool symmetric) {
        return {Kind::split_outer, {alpha, 1.0, symmetric ? 1.0 : 0.0}, symmetric};
    }
};

/// phi(t) for a descriptor.  Canonical and inner evaluations use closed-form
/// or finite-interval exponents; the outer one goes through the
/// compound-Poisson form with the jump CF evaluated by quadrature.
std::complex<double> cf_eval(const CharFn& cf, double t);

/// The characteristic exponent log phi(t) (principal value).
std::complex<double> cf_exponent(const CharFn& cf, double t);

/// Canonical exponent evaluated purely by quadrature; test oracle for the
/// closed form used at runtime.
std::complex<double> cf_exponent_quadrature(const LevyCanonical& canon, double t);

/// J(alpha) = int_0^inf (1 - cos z) z^{-alpha-1} dz, cached per alpha; the
/// symmetric canonical exponent is -2 |t|^alpha J(alpha).
double one_minus_cos_integral(double alpha);

/// Jump characteristic function of the big-jump component: for the one-sided
/// split E e^{itY} with density alpha x^{-alpha-1} on (1,inf); symmetric
/// variant has density alpha/(2|x|^{alpha+1}) on |x| > 1.
std::complex<double> jump_cf(double alpha, bool symmetric, double t);

/// Exponent f(lambda, x) of the residual series:
/// f = int_0^inf 1 - exp(alpha^{-1/alpha} lambda (x+y)^{-1/alpha}) dy for
/// lambda <= 0, by quadrature after the substitution u = (x+y)^{-1/alpha}.
double residual_exponent(double alpha, double x, double lambda);

/// Same value from the entire-series expansion; independent route used by
/// tests.
double residual_exponent_series(double alpha, double x, double lambda);

/// Moment package for S(x): closed-form mean/variance plus the exponent.
struct ResidualSummary {
    double alpha;
    double x;
    double mean;
    double variance;

    double exponent(double lambda) const { return residual_exponent(alpha, x, lambda); }
};

ResidualSummary residual_summary(double alpha, double x);

/// E exp(lambda S(x)) = exp(-f(lambda, x)); defined for lambda <= 0.
double mgf_residual(double alpha, double x, double lambda);

/// Exact exponents of the light split component under a real tilt:
///   one-sided:  log E e^{tX_1} = int_0^1 (e^{tx}-1-tx) x^{-alpha-1} dx
///             = sum_{k>=2} t^k / (k! (k-alpha))
///   symmetric:  log E e^{tX_1} = 2 int_0^1 (cosh(tx)-1) x^{-alpha-1} dx
///             = 2 sum_{k>=1} t^{2k} / ((2k)! (2k-alpha))
double inner_tilt_exponent_asym(double alpha, double t);
double inner_tilt_exponent_sym(double alpha, double t);

enum class EnvelopeRegime { asym_right, asym_left_small, asym_left_large, symmetric_all };

/// Exponential-moment envelopes for the light component: lower(t) <= E e^{tX_1}
/// <= upper(t) on the regime's t-domain.
struct LaplaceEnvelope {
    double alpha;
    EnvelopeRegime regime;

    double lower(double t) const;
    double upper(double t) const;
};

LaplaceEnvelope laplace_envelope(double alpha, EnvelopeRegime regime);

/// C(t) = t^4/24 (14/15 + cosh(t)/15), the symmetric envelope gap exponent.
double envelope_gap_sym(double t);

/// Densities under the sigma = 1 normalization (CF exp(-|t|^alpha)),
/// symmetric case.  Two series expansions:
///   alpha in (0,1):   f(x) = (1/pi) sum_{n>=1} (-1)^{n+1}/n!
///                              Gamma(n alpha + 1) sin(n theta) x^{-n alpha - 1}
///   alpha in (1,2]:   f(x) = (1/(alpha pi)) sum_{n>=0} (-1)^n/(2n)!
///                              Gamma((2n+1)/alpha) x^{2n}
/// The angle theta defaults to pi alpha / 2, which is the variant that agrees
/// with the Fourier-inversion oracle; the alternate theta = alpha/2 appears in
/// some prints of the expansion and is kept selectable for diagnostics only.
struct DensityModel {
    enum class Angle { half_pi_alpha, half_alpha };

    double alpha;
    Angle angle = Angle::half_pi_alpha;
};

struct DensityValue {
    double value;
    bool converged;  ///< false: terms grew before shrinking / cancellation too deep
};

DensityValue density_series(const DensityModel& model, double x);

/// Fourier-inversion density f(x) = (1/pi) int_0^inf Re[e^{-itx} phi(t)] dt
/// for a canonical law; absolute accuracy target 1e-8.
double density_inversion(const LevyCanonical& canon, double x);

/// Mass of the inversion density: direct quadrature over [-R, R] plus, for
/// alpha < 1, the term-wise integrated series tail beyond R (the pure
/// power-law region).  Used by the self-consistency checks.
double inversion_total_mass(const LevyCanonical& canon);

/// Left-tail decay rate of the totally asymmetric law for alpha in (1,2):
/// (2 alpha pi (alpha-1))^{-1/2} (y/kappa)^{-alpha/(2(alpha-1))}
///   * exp(-(alpha-1) (y/kappa)^{alpha/(alpha-1)}).
double asymptotic_left_rate(double alpha, double sigma, double y);

/// |t_y| solving alpha (1/(2-alpha) + 1/(alpha-1)) |t|^{alpha-1} = y + 1/(alpha-1).
double tilt_root(double alpha, double y);

}  // namespace stable_tails
