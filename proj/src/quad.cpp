#include "stable_tails/quad.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace stable_tails {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Non-adaptive 15-point Gauss-Kronrod, used for the smooth half-period cells
// of the oscillatory integrals.
double gk15(const std::function<double(double)>& f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0);
}
}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, 14, 1e-12, &err);
    if (!(err <= std::max(abs_tol, 1e-12 * std::abs(v)) || err <= 1e-14)) {
        // one retry with a deeper 61-point rule before giving up
        v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-12,
                                                                          &err);
        if (!(err <= std::max(abs_tol, 1e-10 * std::abs(v)))) {
            throw std::runtime_error("adaptive quadrature failed to converge (err=" +
                                     std::to_string(err) + ")");
        }
    }
    return v;
}

double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          double abs_tol) {
    boost::math::quadrature::tanh_sinh<double> integ;
    double err = 0.0, l1 = 0.0;
    double v = integ.integrate(f, a, b, 1e-10, &err, &l1);
    (void)abs_tol;
    if (!(err <= 1e-5)) {
        throw std::runtime_error("tanh-sinh quadrature failed to converge");
    }
    return v;
}

double integrate_to_inf(const std::function<double(double)>& f, double a, double abs_tol) {
    boost::math::quadrature::exp_sinh<double> integ;
    double err = 0.0;
    double v = integ.integrate([&](double x) { return f(x + a); }, 1e-12, &err);
    (void)abs_tol;
    if (!std::isfinite(v)) throw std::runtime_error("semi-infinite quadrature diverged");
    return v;
}

double EulerAccumulator::add(double magnitude) {
    // van Wijngaarden's variant of the Euler transformation (running averages
    // of partial sums); wksp_[j] holds the j-th averaged column.
    double sign = (n_ % 2 == 0) ? 1.0 : -1.0;
    double term = sign * magnitude;
    if (n_ == 0) {
        wksp_.assign(1, term);
        sum_ = 0.5 * term;
    } else {
        double tmp = wksp_[0];
        wksp_[0] = term;
        std::size_t cols = wksp_.size();
        for (std::size_t j = 0; j < cols - 1; ++j) {
            double d = 0.5 * (wksp_[j] + tmp);
            tmp = wksp_[j + 1];
            wksp_[j + 1] = d;
        }
        double next = 0.5 * (wksp_.back() + tmp);
        if (std::abs(next) <= std::abs(wksp_.back())) {
            wksp_.push_back(next);
            sum_ += 0.5 * next;
        } else {
            sum_ += next;
        }
    }
    ++n_;
    return sum_;
}

double integrate_oscillatory_tail(const std::function<double(double)>& g, double from,
                                  double omega, double phase_is_sine, double abs_tol) {
    if (!(omega > 0.0)) throw std::invalid_argument("oscillatory tail requires omega > 0");
    const bool sine = phase_is_sine != 0.0;
    auto f = [&](double x) {
        return g(x) * (sine ? std::sin(omega * x) : std::cos(omega * x));
    };
    // First zero of the trig factor at or beyond `from`.
    double k0;
    if (sine) {
        k0 = std::ceil(from * omega / kPi);
        if (k0 * kPi / omega <= from) k0 += 1.0;
    } else {
        k0 = std::ceil(from * omega / kPi - 0.5);
        if ((k0 + 0.5) * kPi / omega <= from) k0 += 1.0;
    }
    double first_zero = (sine ? k0 : (k0 + 0.5)) * kPi / omega;

    double head = (first_zero > from) ? gk15(f, from, first_zero) : 0.0;

    // Half-period cells alternate in sign because g >= 0; feed magnitudes to
    // the Euler transform and carry the orientation of the first cell.
    EulerAccumulator acc;
    double sign = 1.0;
    double prev_estimate = 0.0;
    int stable = 0;
    double lo = first_zero;
    const std::size_t max_cells = 4000;
    for (std::size_t k = 0; k < max_cells; ++k) {
        double hi = lo + kPi / omega;
        double cell = gk15(f, lo, hi);
        if (k == 0 && cell < 0.0) sign = -1.0;
        double est = acc.add(std::abs(cell));
        if (k >= 8) {
            stable = (std::abs(est - prev_estimate) < abs_tol) ? stable + 1 : 0;
            if (stable >= 3) return head + sign * est;
        }
        prev_estimate = est;
        lo = hi;
    }
    throw std::runtime_error("oscillatory tail integral did not settle");
}

double integrate_cos_tail(const std::function<double(double)>& g, double from, double omega,
                          double abs_tol) {
    return integrate_oscillatory_tail(g, from, omega, 0.0, abs_tol);
}

double integrate_sin_tail(const std::function<double(double)>& g, double from, double omega,
                          double abs_tol) {
    return integrate_oscillatory_tail(g, from, omega, 1.0, abs_tol);
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double x_tol,
              int max_iter) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw std::runtime_error("bisection bracket does not change sign");
    }
    for (int i = 0; i < max_iter && hi - lo > x_tol; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace stable_tails
