#include "stable_tails/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "stable_tails/quad.hpp"

namespace stable_tails {

namespace {

constexpr double kE = 2.71828182845904523536;

std::string ok() { return {}; }

std::string need_alpha01(double alpha) {
    if (alpha > 0.0 && alpha < 1.0) return ok();
    return "alpha in (0,1) required";
}

std::string need_alpha12(double alpha) {
    if (alpha > 1.0 && alpha < 2.0) return ok();
    return "alpha in (1,2) required";
}

std::string need_alpha_any(double alpha) {
    if ((alpha > 0.0 && alpha < 1.0) || (alpha > 1.0 && alpha < 2.0)) return ok();
    return "alpha in (0,1) or (1,2) required";
}

double inv_am1(double alpha) { return 1.0 / (alpha - 1.0); }

double pow_y(double alpha, double y) { return std::pow(y, -alpha); }

// ---- registry ----------------------------------------------------------

const std::vector<TailBoundSpec>& specs() {
    static const std::vector<TailBoundSpec> all = [] {
        std::vector<TailBoundSpec> v;

        // alpha in (0,1), totally asymmetric
        v.emplace_back(
            "asym01.upper", Side::right, Direction::upper, BoundLaw::asym01, "asym01",
            false,
            +[](double alpha, double y, double) {
                if (auto m = need_alpha01(alpha); !m.empty()) return m;
                double entry = std::pow(1.0 / alpha, 1.0 / alpha);
                if (!(y >= entry)) {
                    return "y >= (1/alpha)^{1/alpha} = " + std::to_string(entry) + " required";
                }
                return ok();
            },
            +[](double alpha, double y, double) { return 1.0 / (1.0 - alpha) + 3.0 * y; },
            +[](double alpha, double y, double) { return 2.0 / (alpha * std::pow(y, alpha)); });
        v.emplace_back(
            "asym01.lower", Side::right, Direction::lower, BoundLaw::asym01, "asym01",
            true,
            +[](double alpha, double y, double theta) {
                if (auto m = need_alpha01(alpha); !m.empty()) return m;
                if (!(y >= 1.0)) return std::string("y >= 1 required");
                if (!(theta > 0.0 && theta < 1.0)) return std::string("theta in (0,1) required");
                return ok();
            },
            +[](double alpha, double y, double theta) { return theta / (1.0 - alpha) + y; },
            +[](double alpha, double y, double theta) {
                return (2.0 / 3.0) * (1.0 - theta) * (1.0 - theta) /
                       (1.0 + alpha * std::pow(y, alpha));
            });

        // symmetric, alpha in (0,1) (lower also serves (1,2))
        v.emplace_back(
            "sym01.upper", Side::right, Direction::upper, BoundLaw::sym01, "sym01", false,
            +[](double alpha, double y, double) {
                if (auto m = need_alpha01(alpha); !m.empty()) return m;
                if (!(y > 0.0)) return std::string("y > 0 required");
                return ok();
            },
            +[](double, double y, double) { return y; },
            +[](double alpha, double y, double) { return 4.0 / (alpha * std::pow(y, alpha)); });
        v.emplace_back(
            "sym01.lower", Side::right, Direction::lower, BoundLaw::sym01, "sym01", false,
            +[](double alpha, double y, double) {
                if (auto m = need_alpha_any(alpha); !m.empty()) return m;
                if (!(y > 0.0)) return std::string("y > 0 required");
                return ok();
            },
            +[](double, double y, double) { return y; },
            +[](double alpha, double y, double) {
                return 0.5 / (2.0 + alpha * std::pow(y, alpha));
            });

        // alpha in (1,2), totally asymmetric, right tail
        auto mid_right = +[](double alpha, double y, double) {
            if (auto m = need_alpha12(alpha); !m.empty()) return m;
            double d = 2.0 - alpha;
            if (!(y >= 2.0 / std::sqrt(d) && y <= 1.0 / d)) {
                return std::string("y in [2/sqrt(2-alpha), 1/(2-alpha)] required (empty for alpha < 1.75)");
            }
            return ok();
        };
        v.emplace_back(
            "asym12.right.mid.upper", Side::right, Direction::upper, BoundLaw::asym12,
            "mid", false, mid_right,
            +[](double alpha, double y, double) { return 2.0 * y - inv_am1(alpha); },
            +[](double alpha, double y, double) {
                double d = 2.0 - alpha;
                return (2.0 / kE) * pow_y(alpha, y) +
                       std::exp(0.25) * std::exp(-0.5 * d * y * y);
            });
        v.emplace_back(
            "asym12.right.mid.lower", Side::right, Direction::lower, BoundLaw::asym12,
            "mid", false, mid_right,
            +[](double alpha, double y, double) { return 0.25 * y - inv_am1(alpha); },
            +[](double alpha, double y, double) {
                double d = 2.0 - alpha;
                return (pow_y(alpha, y) / kE + std::exp(-d * y * y)) /
                       (400.0 * std::sqrt(kE));
            });
        auto big_right = +[](double alpha, double y, double) {
            if (auto m = need_alpha12(alpha); !m.empty()) return m;
            if (!(y >= 1.0 / (2.0 - alpha))) return std::string("y >= 1/(2-alpha) required");
            return ok();
        };
        v.emplace_back(
            "asym12.right.big.upper", Side::right, Direction::upper, BoundLaw::asym12,
            "big", false, big_right,
            +[](double alpha, double y, double) { return 2.0 * y - inv_am1(alpha); },
            +[](double alpha, double y, double) { return 8.0 * pow_y(alpha, y); });
        v.emplace_back(
            "asym12.right.big.lower", Side::right, Direction::lower, BoundLaw::asym12,
            "big", false, big_right,
            +[](double alpha, double y, double) { return y - inv_am1(alpha); },
            +[](double alpha, double y, double) { return 1e-3 * pow_y(alpha, y); });

        // alpha in (1,2), totally asymmetric, left tail
        auto mid_left = +[](double alpha, double y, double) {
            if (auto m = need_alpha12(alpha); !m.empty()) return m;
            double d = 2.0 - alpha;
            if (!(y >= 2.0 / std::sqrt(d) && y <= 2.0 / d)) {
                return std::string("y in [2/sqrt(2-alpha), 2/(2-alpha)] required");
            }
            return ok();
        };
        auto large_left = +[](double alpha, double y, double) {
            if (auto m = need_alpha12(alpha); !m.empty()) return m;
            if (!(y >= 2.0 / (2.0 - alpha))) return std::string("y >= 2/(2-alpha) required");
            return ok();
        };
        v.emplace_back(
            "asym12.left.mid.upper", Side::left, Direction::upper, BoundLaw::asym12,
            "mid", false, mid_left,
            +[](double alpha, double y, double) { return -y - inv_am1(alpha); },
            +[](double alpha, double y, double) {
                return std::exp(4.0 / 3.0) * std::exp(-0.5 * (2.0 - alpha) * y * y);
            });
        v.emplace_back(
            "asym12.left.mid.lower", Side::left, Direction::lower, BoundLaw::asym12,
            "mid", false, mid_left,
            +[](double alpha, double y, double) { return -y / 24.0 - inv_am1(alpha); },
            +[](double alpha, double y, double) {
                return 1e-2 / kE * std::exp(-(2.0 - alpha) * y * y);
            });
        v.emplace_back(
            "asym12.left.large.upper", Side::left, Direction::upper, BoundLaw::asym12,
            "large", false, large_left,
            +[](double alpha, double y, double) { return -y - inv_am1(alpha); },
            +[](double alpha, double y, double) {
                double coef = 1.0 / (2.0 - alpha) + inv_am1(alpha);
                double num = std::pow(0.5 * (y + inv_am1(alpha)), alpha / (alpha - 1.0));
                return std::exp(-num / std::pow(coef, 1.0 / (alpha - 1.0)));
            });
        v.emplace_back(
            "asym12.left.large.lower", Side::left, Direction::lower, BoundLaw::asym12,
            "large", false, large_left,
            +[](double alpha, double y, double) {
                return -(1.0 / kE - 0.25) * y - inv_am1(alpha);
            },
            +[](double alpha, double y, double) {
                double coef = 1.0 / (2.0 - alpha) + inv_am1(alpha);
                double num = std::pow(std::sqrt(4.0 - 2.0 / kE) * (y + inv_am1(alpha)),
                                      alpha / (alpha - 1.0));
                return std::exp(-num / std::pow(coef, 1.0 / (alpha - 1.0))) / kE;
            });

        // alpha in (1,2), symmetric
        auto mid_sym = +[](double alpha, double y, double) {
            if (auto m = need_alpha12(alpha); !m.empty()) return m;
            double d = 2.0 - alpha;
            if (!(y >= 2.0 / std::sqrt(d) && y <= 2.0 / d)) {
                return std::string("y in [2/sqrt(2-alpha), 2/(2-alpha)] required");
            }
            return ok();
        };
        auto large_sym = +[](double alpha, double y, double) {
            if (auto m = need_alpha12(alpha); !m.empty()) return m;
            if (!(y >= 2.0 / (2.0 - alpha))) return std::string("y >= 2/(2-alpha) required");
            return ok();
        };
        v.emplace_back(
            "sym12.mid.upper", Side::right, Direction::upper, BoundLaw::sym12, "mid", false,
            mid_sym, +[](double, double y, double) { return 2.0 * y; },
            +[](double alpha, double y, double) {
                return (10.0 / 3.0) * pow_y(alpha, y) +
                       std::exp(2.0 / 45.0) * std::exp(-0.25 * (2.0 - alpha) * y * y);
            });
        v.emplace_back(
            "sym12.mid.lower", Side::right, Direction::lower, BoundLaw::sym12, "mid", false,
            mid_sym,
            +[](double, double y, double) { return 0.25 * std::sqrt(2.0) * y; },
            +[](double alpha, double y, double) {
                return pow_y(alpha, y) / (6.0 * std::pow(kE, 5)) +
                       std::exp(-(2.0 - alpha) * y * y) / (6.0 * kE);
            });
        v.emplace_back(
            "sym12.large.upper", Side::right, Direction::upper, BoundLaw::sym12, "large",
            false, large_sym, +[](double, double y, double) { return 2.0 * y; },
            +[](double alpha, double y, double) { return (16.0 / 3.0) * pow_y(alpha, y); });
        v.emplace_back(
            "sym12.large.lower", Side::right, Direction::lower, BoundLaw::sym12, "large",
            false, large_sym, +[](double, double y, double) { return y; },
            +[](double alpha, double y, double) {
                return 0.5 / (2.0 + alpha * std::pow(y, alpha));
            });

        // lemma-level bounds on the big-jump component X^1
        auto y_ge_1 = +[](double alpha, double y, double) {
            if (auto m = need_alpha12(alpha); !m.empty()) return m;
            if (!(y >= 1.0)) return std::string("y >= 1 required");
            return ok();
        };
        v.emplace_back(
            "lemma.asym12.xupper.lower", Side::right, Direction::lower,
            BoundLaw::xupper_asym, "lemma", false, y_ge_1,
            +[](double alpha, double y, double) { return y - inv_am1(alpha); },
            +[](double alpha, double y, double) {
                return std::exp(-1.0 / alpha) / alpha * pow_y(alpha, y);
            });
        v.emplace_back(
            "lemma.asym12.xupper.lower.floor", Side::right, Direction::lower,
            BoundLaw::xupper_asym, "lemma", false, y_ge_1,
            +[](double alpha, double y, double) { return y - inv_am1(alpha); },
            +[](double alpha, double y, double) {
                return 0.5 / std::sqrt(kE) * pow_y(alpha, y);
            });
        v.emplace_back(
            "lemma.asym12.xupper.upper", Side::right, Direction::upper,
            BoundLaw::xupper_asym, "lemma", false, y_ge_1,
            +[](double alpha, double y, double) { return y - inv_am1(alpha); },
            +[](double alpha, double y, double) {
                return xupper_upper_constant_asym(alpha) * pow_y(alpha, y);
            });
        v.emplace_back(
            "lemma.sym12.xupper.lower", Side::right, Direction::lower, BoundLaw::xupper_sym,
            "lemma", false, y_ge_1, +[](double, double y, double) { return y; },
            +[](double alpha, double y, double) { return pow_y(alpha, y) / kE; });
        v.emplace_back(
            "lemma.sym12.xupper.upper", Side::right, Direction::upper, BoundLaw::xupper_sym,
            "lemma", false, y_ge_1, +[](double, double y, double) { return y; },
            +[](double alpha, double y, double) { return (10.0 / 3.0) * pow_y(alpha, y); });

        // lemma-level bounds on the small-jump component X_1 (envelope-checked;
        // no exact sampler exists for these laws)
        v.emplace_back(
            "lemma.asym12.x1.right.upper", Side::right, Direction::upper, BoundLaw::x1_asym,
            "lemma", false,
            +[](double alpha, double y, double) {
                if (auto m = need_alpha12(alpha); !m.empty()) return m;
                if (!(y >= 0.0 && y <= 1.0 / (2.0 - alpha))) {
                    return std::string("y in [0, 1/(2-alpha)] required");
                }
                return ok();
            },
            +[](double, double y, double) { return y; },
            +[](double alpha, double y, double) {
                return std::exp(0.25) * std::exp(-0.5 * (2.0 - alpha) * y * y);
            });
        v.emplace_back(
            "lemma.asym12.x1.left.upper", Side::left, Direction::upper, BoundLaw::x1_asym,
            "lemma", false,
            +[](double alpha, double y, double) {
                if (auto m = need_alpha12(alpha); !m.empty()) return m;
                if (!(y >= 0.0 && y <= 2.0 / (2.0 - alpha))) {
                    return std::string("y in [0, 2/(2-alpha)] required");
                }
                return ok();
            },
            +[](double, double y, double) { return -y; },
            +[](double alpha, double y, double) {
                return std::exp(4.0 / 3.0) * std::exp(-0.5 * (2.0 - alpha) * y * y);
            });
        v.emplace_back(
            "lemma.asym12.x1.right.lower", Side::right, Direction::lower, BoundLaw::x1_asym,
            "lemma", false,
            +[](double alpha, double y, double) {
                if (auto m = need_alpha12(alpha); !m.empty()) return m;
                double d = 2.0 - alpha;
                if (!(y >= 2.0 / std::sqrt(d) && y <= 1.0 / d)) {
                    return std::string("y in [2/sqrt(2-alpha), 1/(2-alpha)] required (empty for alpha < 1.75)");
                }
                return ok();
            },
            +[](double, double y, double) { return 0.25 * y; },
            +[](double alpha, double y, double) {
                return 1e-2 * std::exp(-(2.0 - alpha) * y * y);
            });
        v.emplace_back(
            "lemma.asym12.x1.left.lower", Side::left, Direction::lower, BoundLaw::x1_asym,
            "lemma", false,
            +[](double alpha, double y, double) {
                if (auto m = need_alpha12(alpha); !m.empty()) return m;
                double d = 2.0 - alpha;
                if (!(y >= 2.0 / std::sqrt(d) && y <= 2.0 / d)) {
                    return std::string("y in [2/sqrt(2-alpha), 2/(2-alpha)] required");
                }
                return ok();
            },
            +[](double, double y, double) { return -y / 24.0; },
            +[](double alpha, double y, double) {
                return 1e-2 * std::exp(-(2.0 - alpha) * y * y);
            });
        v.emplace_back(
            "lemma.asym12.x1.farleft.upper", Side::left, Direction::upper, BoundLaw::x1_asym,
            "lemma", false,
            +[](double alpha, double y, double) {
                if (auto m = need_alpha12(alpha); !m.empty()) return m;
                if (!(y >= 2.0 / (2.0 - alpha))) return std::string("y >= 2/(2-alpha) required");
                return ok();
            },
            +[](double, double y, double) { return -y; },
            +[](double alpha, double y, double) {
                double coef = 1.0 / (2.0 - alpha) + inv_am1(alpha);
                double num = std::pow(0.5 * (y + inv_am1(alpha)), alpha / (alpha - 1.0));
                return std::exp(-num / std::pow(coef, 1.0 / (alpha - 1.0)));
            });
        v.emplace_back(
            "lemma.asym12.x1.farleft.lower", Side::left, Direction::lower, BoundLaw::x1_asym,
            "lemma", false,
            +[](double alpha, double y, double) {
                if (auto m = need_alpha12(alpha); !m.empty()) return m;
                if (!(y >= 2.0 / (2.0 - alpha))) return std::string("y >= 2/(2-alpha) required");
                return ok();
            },
            +[](double, double y, double) { return -(1.0 / kE - 0.25) * y; },
            +[](double alpha, double y, double) {
                double coef = 1.0 / (2.0 - alpha) + inv_am1(alpha);
                double lam = 1.0 - 1.0 / std::sqrt(kE);
                double num = std::pow(std::sqrt(4.0 - 2.0 / kE) * (y + inv_am1(alpha)),
                                      alpha / (alpha - 1.0));
                return lam * lam * std::exp(-num / std::pow(coef, 1.0 / (alpha - 1.0)));
            });
        v.emplace_back(
            "lemma.sym12.x1.upper", Side::right, Direction::upper, BoundLaw::x1_sym, "lemma",
            false,
            +[](double alpha, double y, double) {
                if (auto m = need_alpha12(alpha); !m.empty()) return m;
                if (!(y >= 0.0 && y <= 2.0 / (2.0 - alpha))) {
                    return std::string("y in [0, 2/(2-alpha)] required");
                }
                return ok();
            },
            +[](double, double y, double) { return y; },
            +[](double alpha, double y, double) {
                return std::exp(2.0 / 45.0) * std::exp(-0.25 * (2.0 - alpha) * y * y);
            });
        v.emplace_back(
            "lemma.sym12.x1.lower", Side::right, Direction::lower, BoundLaw::x1_sym, "lemma",
            false,
            +[](double alpha, double y, double) {
                if (auto m = need_alpha12(alpha); !m.empty()) return m;
                double d = 2.0 - alpha;
                if (!(y >= 2.0 / std::sqrt(d) && y <= 2.0 / d)) {
                    return std::string("y in [2/sqrt(2-alpha), 2/(2-alpha)] required");
                }
                return ok();
            },
            +[](double, double y, double) { return 0.25 * std::sqrt(2.0) * y; },
            +[](double alpha, double y, double) {
                return std::exp(-(2.0 - alpha) * y * y) / 3.0;
            });

        return v;
    }();
    return all;
}

}  // namespace

BoundEvaluation TailBoundSpec::evaluate(double alpha, double y,
                                        std::optional<double> theta) const {
    BoundEvaluation ev;
    ev.spec_id = id_;
    ev.alpha = alpha;
    ev.y = y;
    ev.side = side_;
    ev.direction = direction_;
    ev.law = law_;
    ev.regime = regime_;
    double th = theta.value_or(0.5);
    if (needs_theta_ && !theta.has_value()) {
        // default aux level for the Paley-Zygmund bound
        th = 0.5;
    }
    std::string reason = validity_(alpha, y, th);
    if (!reason.empty()) {
        ev.valid = false;
        ev.refusal = std::move(reason);
        return ev;
    }
    ev.valid = true;
    ev.threshold = threshold_(alpha, y, th);
    ev.raw_value = value_(alpha, y, th);
    ev.bound_value = std::min(1.0, std::max(0.0, ev.raw_value));
    ev.vacuous = (direction_ == Direction::upper && ev.raw_value >= 1.0);
    return ev;
}

const std::vector<const TailBoundSpec*>& bound_registry() {
    static const std::vector<const TailBoundSpec*> ptrs = [] {
        std::vector<const TailBoundSpec*> p;
        for (const auto& s : specs()) p.push_back(&s);
        return p;
    }();
    return ptrs;
}

const TailBoundSpec* find_bound_spec(std::string_view id) {
    for (const auto* s : bound_registry()) {
        if (s->id() == id) return s;
    }
    return nullptr;
}

namespace {

BoundEvaluation evaluate_or_throw(std::string_view id, double alpha, double y,
                                  std::optional<double> theta = std::nullopt) {
    const TailBoundSpec* spec = find_bound_spec(id);
    if (spec == nullptr) throw std::logic_error("unknown bound spec: " + std::string(id));
    BoundEvaluation ev = spec->evaluate(alpha, y, theta);
    if (!ev.valid) {
        throw std::domain_error(std::string(id) + " refused: " + ev.refusal);
    }
    return ev;
}

void append_if_valid(std::vector<BoundEvaluation>& out, std::string_view id, double alpha,
                     double y) {
    BoundEvaluation ev = find_bound_spec(id)->evaluate(alpha, y);
    if (ev.valid) out.push_back(std::move(ev));
}

}  // namespace

BoundEvaluation asym01_upper(double alpha, double y) {
    return evaluate_or_throw("asym01.upper", alpha, y);
}

BoundEvaluation asym01_lower(double alpha, double y, double theta) {
    return evaluate_or_throw("asym01.lower", alpha, y, theta);
}

std::pair<BoundEvaluation, BoundEvaluation> sym_bounds_01(double alpha, double y) {
    return {evaluate_or_throw("sym01.upper", alpha, y),
            evaluate_or_throw("sym01.lower", alpha, y)};
}

std::vector<BoundEvaluation> asym12_right(double alpha, double y) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw std::domain_error("alpha in (1,2) required");
    double d = 2.0 - alpha;
    if (!(y >= 2.0 / std::sqrt(d))) {
        throw std::domain_error("asym12 right tail needs y >= 2/sqrt(2-alpha)");
    }
    std::vector<BoundEvaluation> out;
    append_if_valid(out, "asym12.right.mid.upper", alpha, y);
    append_if_valid(out, "asym12.right.mid.lower", alpha, y);
    append_if_valid(out, "asym12.right.big.upper", alpha, y);
    append_if_valid(out, "asym12.right.big.lower", alpha, y);
    return out;
}

std::vector<BoundEvaluation> asym12_left(double alpha, double y) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw std::domain_error("alpha in (1,2) required");
    double d = 2.0 - alpha;
    if (!(y >= 2.0 / std::sqrt(d))) {
        throw std::domain_error("asym12 left tail needs y >= 2/sqrt(2-alpha)");
    }
    std::vector<BoundEvaluation> out;
    append_if_valid(out, "asym12.left.mid.upper", alpha, y);
    append_if_valid(out, "asym12.left.mid.lower", alpha, y);
    append_if_valid(out, "asym12.left.large.upper", alpha, y);
    append_if_valid(out, "asym12.left.large.lower", alpha, y);
    return out;
}

std::vector<BoundEvaluation> sym12(double alpha, double y) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw std::domain_error("alpha in (1,2) required");
    double d = 2.0 - alpha;
    if (!(y >= 2.0 / std::sqrt(d))) {
        throw std::domain_error("sym12 bounds need y >= 2/sqrt(2-alpha)");
    }
    std::vector<BoundEvaluation> out;
    append_if_valid(out, "sym12.mid.upper", alpha, y);
    append_if_valid(out, "sym12.mid.lower", alpha, y);
    append_if_valid(out, "sym12.large.upper", alpha, y);
    append_if_valid(out, "sym12.large.lower", alpha, y);
    return out;
}

std::vector<BoundEvaluation> lemma_bounds(double alpha, double y, std::string_view which) {
    std::vector<BoundEvaluation> out;
    for (const auto* s : bound_registry()) {
        if (s->id().rfind("lemma.", 0) != 0) continue;
        if (s->id().rfind(which, 0) != 0 && s->id() != which) continue;
        BoundEvaluation ev = s->evaluate(alpha, y);
        if (ev.valid) out.push_back(std::move(ev));
    }
    if (out.empty()) {
        throw std::domain_error("no lemma bound matches '" + std::string(which) +
                                "' in its regime at (alpha=" + std::to_string(alpha) +
                                ", y=" + std::to_string(y) + ")");
    }
    return out;
}

double xupper_upper_constant_asym(double alpha) {
    double sum = 0.0;
    double pow_ak = 1.0;  // alpha^k
    double fact = 1.0;
    for (int k = 1; k <= 60; ++k) {
        pow_ak *= alpha;
        fact *= k;
        double term = std::pow(static_cast<double>(k), alpha + 1.0) / (pow_ak * fact);
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return std::exp(-1.0 / alpha) * sum;
}

double xupper_upper_constant_sym(double alpha) {
    double lam = 2.0 / alpha;
    double sum = 0.0;
    double pow_lk = 1.0;
    double fact = 1.0;
    for (int k = 1; k <= 60; ++k) {
        pow_lk *= lam;
        fact *= k;
        double term = pow_lk * std::pow(static_cast<double>(k), alpha + 1.0) / fact;
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return 0.5 * std::exp(-lam) * sum;
}

double kallenberg_bound(const CharFn& cf, double y) {
    if (!(y > 0.0)) throw std::domain_error("Kallenberg bound needs y > 0");
    auto integrand = [&](double t) { return 1.0 - cf_eval(cf, t).real(); };
    // Re phi is even, so integrate one side and double.
    double v = integrate_singular(integrand, 0.0, 2.0 / y, 1e-12);
    return std::min(1.0, std::max(0.0, y * v));
}

ExponentialTilt tilt_asym12_right_mid(double alpha, double y) {
    return {(2.0 - alpha) * y, 1.0 / kE};
}
ExponentialTilt tilt_asym12_left_mid(double alpha, double y) {
    return {-(2.0 - alpha) * y, 1.0 / std::sqrt(kE)};
}
ExponentialTilt tilt_asym12_left_large(double alpha, double y) {
    return {-tilt_root(alpha, y), 1.0 / std::sqrt(kE)};
}
ExponentialTilt tilt_sym12(double alpha, double y) {
    return {(2.0 - alpha) * y / std::sqrt(2.0), 1.0 / kE};
}

CrossoverPreset crossover_upper_preset() { return {2.0 / kE, std::exp(0.25), 0.5}; }
CrossoverPreset crossover_lower_preset() {
    return {1.0 / (kE * 400.0 * std::sqrt(kE)), 1.0 / (400.0 * std::sqrt(kE)), 1.0};
}

CrossoverResult crossover(double alpha, double pareto_coeff, double gauss_coeff,
                          double kappa) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw std::domain_error("alpha in (1,2) required");
    if (!(pareto_coeff > 0.0 && gauss_coeff > 0.0 && kappa > 0.0)) {
        throw std::domain_error("crossover coefficients must be positive");
    }
    const double d = 2.0 - alpha;
    CrossoverResult out;
    out.bracket_guaranteed = d < 1.0 / kE;
    out.bracket_lo = std::log(1.0 / d) / d;
    out.bracket_hi = 2.0 * std::log(1.0 / d) / d;
    out.reference_scale = std::sqrt(std::log(1.0 / d) / d);

    // reduced equation d*y = ln y, larger root
    {
        auto h = [&](double y) { return d * y - std::log(y); };
        double lo = kE;
        double hi = std::max(2.0 * kE, out.bracket_hi);
        int guard = 0;
        while (h(hi) < 0.0 && guard++ < 64) hi *= 2.0;
        if (h(lo) >= 0.0 || h(hi) < 0.0) {
            throw std::runtime_error("reduced crossover equation: no sign change found");
        }
        out.reduced_root = bisect(h, lo, hi, 1e-10);
    }

    // full equation: g(y) = ln(B) - kappa d y^2 - ln(A) + alpha ln y, g > 0
    // where the Gaussian term dominates; the larger root is the crossover.
    auto g = [&](double y) {
        return std::log(gauss_coeff) - kappa * d * y * y - std::log(pareto_coeff) +
               alpha * std::log(y);
    };
    double peak = std::sqrt(alpha / (2.0 * kappa * d));
    if (!(g(peak) > 0.0)) {
        throw std::runtime_error(
            "crossover: the Gaussian term never dominates (no two-root configuration)");
    }
    double hi = 2.0 * peak;
    int guard = 0;
    while (g(hi) > 0.0 && guard++ < 128) hi *= 2.0;
    if (g(hi) > 0.0) throw std::runtime_error("crossover: upper bracket not found");
    out.y_star = bisect(g, peak, hi, 1e-9);
    out.residual = pareto_coeff * std::pow(out.y_star, -alpha) -
                   gauss_coeff * std::exp(-kappa * d * out.y_star * out.y_star);
    return out;
}

std::string to_string(Side s) { return s == Side::right ? "right" : "left"; }
std::string to_string(Direction d) { return d == Direction::upper ? "upper" : "lower"; }
std::string to_string(BoundLaw law) {
    switch (law) {
        case BoundLaw::asym01: return "asym01";
        case BoundLaw::sym01: return "sym01";
        case BoundLaw::sym12: return "sym12";
        case BoundLaw::asym12: return "asym12";
        case BoundLaw::xupper_asym: return "xupper-asym";
        case BoundLaw::xupper_sym: return "xupper-sym";
        case BoundLaw::x1_asym: return "x1-asym";
        case BoundLaw::x1_sym: return "x1-sym";
    }
    return "unknown";
}

}  // namespace stable_tails
