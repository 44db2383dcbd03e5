#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stable_tails/analytic.hpp"

namespace stable_tails {

enum class Side { right, left };
enum class Direction { upper, lower };

/// Which law a bound constrains; mc-verify uses this to pick a sampler.
/// The x1_* laws have no exact sampler and are checked through their
/// exponential-moment envelopes instead.
enum class BoundLaw { asym01, sym01, sym12, asym12, xupper_asym, xupper_sym, x1_asym, x1_sym };

struct BoundEvaluation {
    std::string spec_id;
    double alpha = 0.0;
    double y = 0.0;
    double threshold = 0.0;    ///< actual probability argument
    double bound_value = 0.0;  ///< clamped to [0,1]
    double raw_value = 0.0;    ///< before clamping
    Side side = Side::right;
    Direction direction = Direction::upper;
    BoundLaw law = BoundLaw::asym01;
    std::string regime;
    bool valid = false;
    bool vacuous = false;      ///< clamped at 1; regime entry point, uninformative
    std::string refusal;       ///< the violated regime condition when !valid
};

/// One closed-form tail bound: validity predicate, threshold map and value.
/// `evaluate` never throws; out-of-regime points come back with valid=false
/// and the precise condition in `refusal`.
class TailBoundSpec {
  public:
    using Validity = std::string (*)(double alpha, double y, double theta);
    using Map = double (*)(double alpha, double y, double theta);

    TailBoundSpec(std::string id, Side side, Direction dir, BoundLaw law, std::string regime,
                  bool needs_theta, Validity validity, Map threshold, Map value)
        : id_(std::move(id)), side_(side), direction_(dir), law_(law),
          regime_(std::move(regime)), needs_theta_(needs_theta), validity_(validity),
          threshold_(threshold), value_(value) {}

    const std::string& id() const { return id_; }
    Side side() const { return side_; }
    Direction direction() const { return direction_; }
    BoundLaw law() const { return law_; }
    const std::string& regime() const { return regime_; }
    bool needs_theta() const { return needs_theta_; }

    BoundEvaluation evaluate(double alpha, double y,
                             std::optional<double> theta = std::nullopt) const;

  private:
    std::string id_;
    Side side_;
    Direction direction_;
    BoundLaw law_;
    std::string regime_;
    bool needs_theta_;
    Validity validity_;
    Map threshold_;
    Map value_;
};

/// All registered bounds (the stable id vocabulary).
const std::vector<const TailBoundSpec*>& bound_registry();
const TailBoundSpec* find_bound_spec(std::string_view id);

/// Named operations; these throw std::domain_error outside the regime.
BoundEvaluation asym01_upper(double alpha, double y);
BoundEvaluation asym01_lower(double alpha, double y, double theta);
std::pair<BoundEvaluation, BoundEvaluation> sym_bounds_01(double alpha, double y);
std::vector<BoundEvaluation> asym12_right(double alpha, double y);
std::vector<BoundEvaluation> asym12_left(double alpha, double y);
std::vector<BoundEvaluation> sym12(double alpha, double y);

/// Lemma-level bounds on the split components; `which` is a registry id or
/// id prefix ("lemma.asym12.xupper" selects that pair).
std::vector<BoundEvaluation> lemma_bounds(double alpha, double y, std::string_view which);

/// The big-jump upper-bound constant e^{-1/alpha} sum_k k^{alpha+1}/(alpha^k k!)
/// (one-sided) and its symmetric counterpart
/// (1/2) sum_k e^{-2/alpha} (2/alpha)^k k^{alpha+1} / k!.
double xupper_upper_constant_asym(double alpha);
double xupper_upper_constant_sym(double alpha);

/// P(|Z| > y) <= (y/2) int_{-2/y}^{2/y} (1 - Re phi_Z(t)) dt, by quadrature,
/// clamped to [0,1].
double kallenberg_bound(const CharFn& cf, double y);

/// Fixed tilt points and Paley-Zygmund levels the displayed constants rely
/// on; read-only.
struct ExponentialTilt {
    double t;
    double lambda_pz;
};

ExponentialTilt tilt_asym12_right_mid(double alpha, double y);   // t = (2-alpha) y, 1/e
ExponentialTilt tilt_asym12_left_mid(double alpha, double y);    // t = -(2-alpha) y, 1/sqrt(e)
ExponentialTilt tilt_asym12_left_large(double alpha, double y);  // root tilt, 1/sqrt(e)
ExponentialTilt tilt_sym12(double alpha, double y);              // t = (2-alpha) y / sqrt2, 1/e

struct CrossoverResult {
    double y_star;            ///< larger root of A y^{-alpha} = B exp(-kappa (2-alpha) y^2)
    double residual;          ///< equation residual at y_star
    double reduced_root;      ///< larger root of (2-alpha) y = ln y
    double bracket_lo;        ///< (1/d) ln(1/d), d = 2-alpha
    double bracket_hi;        ///< (2/d) ln(1/d)
    double reference_scale;   ///< sqrt((1/d) ln(1/d))
    bool bracket_guaranteed;  ///< d < 1/e
};

/// Gaussian-to-Pareto crossover scale: where the power term overtakes the
/// Gaussian term.  Bisection to 1e-9 in y; throws std::runtime_error when the
/// two-root configuration is absent.
CrossoverResult crossover(double alpha, double pareto_coeff, double gauss_coeff, double kappa);

/// Coefficient presets matching the displayed upper and lower mid-regime
/// bounds: (2/e, e^{1/4}, 1/2) and (e^{-1}/(400 sqrt e), 1/(400 sqrt e), 1).
struct CrossoverPreset {
    double pareto_coeff;
    double gauss_coeff;
    double kappa;
};
CrossoverPreset crossover_upper_preset();
CrossoverPreset crossover_lower_preset();

std::string to_string(Side s);
std::string to_string(Direction d);
std::string to_string(BoundLaw law);

}  // namespace stable_tails
