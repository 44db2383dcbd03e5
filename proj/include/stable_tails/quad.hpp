#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace stable_tails {

/// Adaptive Gauss-Kronrod on a finite interval.  Throws std::runtime_error
/// when the error estimate cannot be brought under `abs_tol`.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

/// tanh-sinh quadrature on (a,b); tolerates integrable endpoint
/// singularities.
double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-10);

/// Integral over (a, inf) of a non-oscillatory integrand.
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double abs_tol = 1e-10);

/// Sum a_0 - a_1 + a_2 - ... of an (eventually) alternating sequence by the
/// van Wijngaarden / Euler transformation.  Converges for slowly decaying and
/// even for polynomially growing alternating tails (Abel sums), which is what
/// the oscillatory integrals below reduce to.
class EulerAccumulator {
  public:
    /// Feed |a_k|; signs alternate starting with +.  Returns the current
    /// transformed estimate.
    double add(double magnitude);
    double estimate() const { return sum_; }
    std::size_t terms() const { return n_; }

  private:
    std::vector<double> wksp_;
    std::size_t n_ = 0;
    double sum_ = 0.0;
};

/// Integral over [from, inf) of g(x)*cos(omega*x + phase) for positive,
/// eventually monotone g: split at the integrand's zeros and Euler-accelerate
/// the alternating half-period contributions.
double integrate_oscillatory_tail(const std::function<double(double)>& g, double from,
                                  double omega, double phase_is_sine,
                                  double abs_tol = 1e-11);

/// convenience: integral over [from, inf) of g(x)*cos(omega x)
double integrate_cos_tail(const std::function<double(double)>& g, double from, double omega,
                          double abs_tol = 1e-11);
/// integral over [from, inf) of g(x)*sin(omega x)
double integrate_sin_tail(const std::function<double(double)>& g, double from, double omega,
                          double abs_tol = 1e-11);

/// Bisection root finder on [lo, hi]; f(lo) and f(hi) must differ in sign.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double x_tol = 1e-9, int max_iter = 200);

}  // namespace stable_tails
