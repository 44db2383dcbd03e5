#pragma once

#include <string>

namespace stable_tails {

/// Levy-measure form of a strictly stable law with alpha in (0,1) or (1,2):
/// jump density c1/x^{alpha+1} on (0,inf) plus c2/|x|^{alpha+1} on (-inf,0).
/// The symmetric normalization is c1 = c2 = 1, the totally asymmetric one
/// c1 = 1, c2 = 0.  This is the representation every bound in the library is
/// stated in; StableParams is derived from it.
struct LevyCanonical {
    double alpha;
    double c1;
    double c2;

    static LevyCanonical symmetric(double alpha) { return {alpha, 1.0, 1.0}; }
    static LevyCanonical totally_asymmetric(double alpha) { return {alpha, 1.0, 0.0}; }
};

/// (alpha, beta, sigma, mu) form used by the characteristic function
/// exp(-sigma^alpha |t|^alpha (1 - i beta sgn(t) tan(pi alpha/2)) + i mu t).
/// mu is fixed to 0 (strict stability).
struct StableParams {
    double alpha;
    double beta;
    double sigma;
    double mu = 0.0;
};

/// Tail-asymptotics package: y^alpha P(X >= y) -> tail_const_right and
/// |y|^alpha P(X <= y) -> tail_const_left, plus the constants they are
/// built from.
struct AsymptoticConstants {
    double c_alpha;
    double kappa_alpha;
    double tail_const_right;
    double tail_const_left;
};

/// Throws std::domain_error unless alpha in (0,1) u (1,2), c1,c2 >= 0 and
/// c1 + c2 > 0.
void validate(const LevyCanonical& canon);

/// Gamma(-alpha) for alpha in (0,1) u (1,2) via the recurrence
/// Gamma(-a) = -Gamma(2-a)/(a(1-a)), which keeps the gamma argument in
/// (0,2).  Relative accuracy ~1e-15 (target 1e-12).
double gamma_negative(double alpha);

/// C_alpha = 1 / (alpha Gamma(-alpha) cos((2-alpha) pi/2)), the constant in
/// the power-tail asymptotics.
double c_alpha(double alpha);

/// sigma^alpha = Gamma(-alpha) cos((2-alpha) pi/2) (c1+c2); positive on both
/// sides of alpha = 1 because the two factors change sign together.
double sigma_pow_alpha(const LevyCanonical& canon);

StableParams from_levy(const LevyCanonical& canon);

/// Inverse conversion (exact round-trip up to rounding).
LevyCanonical to_levy(const StableParams& params);

AsymptoticConstants constants(const StableParams& params);

enum class CAlphaRegime { near_zero, near_one, near_two };

struct CAlphaReport {
    CAlphaRegime regime;
    double c_alpha;     ///< exact value
    double reference;   ///< the limit approximation for the regime
};

/// Which limit regime of C_alpha applies (C_alpha -> 1, 2/pi, or (2-alpha)
/// as alpha -> 0, 1, 2), classified by the nearest of the three anchors,
/// together with the exact value.
CAlphaReport c_alpha_regime(double alpha);

std::string to_string(CAlphaRegime regime);

}  // namespace stable_tails
