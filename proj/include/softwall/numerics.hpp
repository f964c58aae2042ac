#pragma once

// Shared numerical machinery: Gauss-Legendre rules, adaptive panel
// integration sized by a local-frequency hint (for oscillatory
// integrands), polynomial extrapolation, cubic splines, and an
// adaptive Dormand-Prince ODE stepper.

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace softwall::num {

inline constexpr double pi = 3.14159265358979323846264338327950288;

// Thrown when an integral or extrapolation fails to meet its tolerance.
// Carries the best value obtained so far.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial, double err)
      : std::runtime_error(what), partial_value(partial), err_estimate(err) {}
  double partial_value;
  double err_estimate;
};

struct IntegralResult {
  double value = 0;
  double err = 0;
};

// Gauss-Legendre rule on [-1,1]; cached, thread-safe.
const std::vector<double>& gl_nodes(int n);
const std::vector<double>& gl_weights(int n);

template <class F>
double gl_integrate(F&& f, double a, double b, int n) {
  const auto& x = gl_nodes(n);
  const auto& w = gl_weights(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0;
  for (int i = 0; i < n; ++i) sum += w[i] * f(mid + half * x[i]);
  return half * sum;
}

struct PanelOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  // Local oscillation rate in rad per unit x; panels are kept below one
  // wavelength so the error comparison cannot alias.
  std::function<double(double)> local_freq;
  std::vector<double> breakpoints;
  int max_depth = 28;
  long max_evals = 200000000;
};

IntegralResult integrate_panels(const std::function<double(double)>& f,
                                double a, double b, const PanelOptions& opt);

// Same panel scheme for a complex-valued integrand (used on rotated
// contours where the integrand decays).
struct ComplexIntegral {
  std::complex<double> value;
  double err = 0;
};
ComplexIntegral integrate_panels_c(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const PanelOptions& opt);

// ∫_a^∞ f.  decay_bound(x) must bound |∫_x^∞ f|; integration marches in
// frequency-sized panels until the bound drops below abs_tol.  Throws
// ConvergenceError if x exceeds x_max first.
struct SemiInfOptions {
  double abs_tol = 1e-10;
  std::function<double(double)> local_freq;
  std::function<double(double)> decay_bound;
  double x_max = 1e6;
};
IntegralResult integrate_semi_infinite(const std::function<double(double)>& f,
                                       double a, const SemiInfOptions& opt);

// Polynomial (Neville) extrapolation of F(s) to s = 0 from samples at
// the given s > 0 nodes.  residual is the last diagonal correction.
struct Extrapolation {
  double limit = 0;
  double residual = 0;
};
Extrapolation extrapolate_to_zero(const std::vector<double>& s,
                                  const std::vector<double>& f);

class CubicSpline {
 public:
  CubicSpline() = default;
  // Natural cubic spline through strictly increasing x.
  CubicSpline(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;
  double deriv(double x) const;
  bool empty() const { return x_.empty(); }
  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

 private:
  std::vector<double> x_, y_, y2_;
  size_t find(double x) const;
};

struct OdeOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  double h_init = 0;
  long max_steps = 50000000;
};

// Adaptive Dormand-Prince 5(4) for a 2-component system; x1 may be on
// either side of x0.
using Deriv2 = std::function<std::array<double, 2>(double, const std::array<double, 2>&)>;
std::array<double, 2> ode_integrate(const Deriv2& f, double x0, double x1,
                                    std::array<double, 2> y0,
                                    const OdeOptions& opt = {});

}  // namespace softwall::num
