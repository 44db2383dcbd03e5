#include "stable_tails/params.hpp"

#include <cmath>
#include <stdexcept>

namespace stable_tails {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0) {
        throw std::domain_error("alpha must lie in (0,1) or (1,2); got " + std::to_string(alpha));
    }
}
}  // namespace

void validate(const LevyCanonical& canon) {
    check_alpha(canon.alpha);
    if (!(canon.c1 >= 0.0) || !(canon.c2 >= 0.0)) {
        throw std::domain_error("Levy weights c1, c2 must be nonnegative");
    }
    if (!(canon.c1 + canon.c2 > 0.0)) {
        throw std::domain_error("Levy weights must satisfy c1 + c2 > 0");
    }
}

double gamma_negative(double alpha) {
    check_alpha(alpha);
    return -std::tgamma(2.0 - alpha) / (alpha * (1.0 - alpha));
}

double c_alpha(double alpha) {
    check_alpha(alpha);
    return 1.0 / (alpha * gamma_negative(alpha) * std::cos(0.5 * (2.0 - alpha) * kPi));
}

double sigma_pow_alpha(const LevyCanonical& canon) {
    validate(canon);
    return gamma_negative(canon.alpha) * std::cos(0.5 * (2.0 - canon.alpha) * kPi) *
           (canon.c1 + canon.c2);
}

StableParams from_levy(const LevyCanonical& canon) {
    validate(canon);
    double spa = sigma_pow_alpha(canon);
    StableParams p;
    p.alpha = canon.alpha;
    p.beta = (canon.c1 - canon.c2) / (canon.c1 + canon.c2);
    p.sigma = std::pow(spa, 1.0 / canon.alpha);
    p.mu = 0.0;
    return p;
}

LevyCanonical to_levy(const StableParams& params) {
    check_alpha(params.alpha);
    if (!(params.sigma > 0.0)) throw std::domain_error("sigma must be positive");
    if (!(params.beta >= -1.0 && params.beta <= 1.0)) {
        throw std::domain_error("beta must lie in [-1,1]");
    }
    double denom = gamma_negative(params.alpha) * std::cos(0.5 * (2.0 - params.alpha) * kPi);
    double total = std::pow(params.sigma, params.alpha) / denom;
    return {params.alpha, 0.5 * (1.0 + params.beta) * total, 0.5 * (1.0 - params.beta) * total};
}

AsymptoticConstants constants(const StableParams& params) {
    check_alpha(params.alpha);
    if (!(params.sigma > 0.0)) throw std::domain_error("sigma must be positive");
    AsymptoticConstants out;
    out.c_alpha = c_alpha(params.alpha);
    // cos((2-alpha) pi/2) changes sign below alpha = 1; the magnitude keeps
    // kappa positive there (it only enters the alpha > 1 left-tail rate).
    out.kappa_alpha =
        params.alpha * params.sigma / std::abs(std::cos(0.5 * (2.0 - params.alpha) * kPi));
    double spa = std::pow(params.sigma, params.alpha);
    out.tail_const_right = out.c_alpha * 0.5 * (1.0 + params.beta) * spa;
    out.tail_const_left = out.c_alpha * 0.5 * (1.0 - params.beta) * spa;
    return out;
}

CAlphaReport c_alpha_regime(double alpha) {
    check_alpha(alpha);
    double value = c_alpha(alpha);
    // Nearest anchor of {0, 1, 2} decides the regime label.
    if (alpha < 0.5) return {CAlphaRegime::near_zero, value, 1.0};
    if (alpha < 1.5) return {CAlphaRegime::near_one, value, 2.0 / kPi};
    return {CAlphaRegime::near_two, value, 2.0 - alpha};
}

std::string to_string(CAlphaRegime regime) {
    switch (regime) {
        case CAlphaRegime::near_zero: return "near-zero";
        case CAlphaRegime::near_one: return "near-one";
        case CAlphaRegime::near_two: return "near-two";
    }
    return "unknown";
}

}  // namespace stable_tails
