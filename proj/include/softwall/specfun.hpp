#pragma once

// Self-contained special-function kernel: Gamma/Beta, Airy Ai and Ai',
// modified Bessel K of fractional order, parabolic cylinder D_nu,
// Bessel J1 and Struve H1.  Series near the origin, asymptotic
// expansions in the tails, ODE integration across the band where
// neither converges; switchover points are noted at each routine.

#include <stdexcept>

namespace softwall::specfun {

// Every evaluation carries a conservative absolute error estimate so
// downstream quadrature can budget for it.
struct FnEval {
  double value = 0;
  double abs_error_estimate = 0;
};

struct AiryEval {
  FnEval ai;
  FnEval ai_prime;
};

struct PcfEval {
  FnEval d;
  FnEval d_prime;
};

// Gamma for x > 0 (no paper formula needs negative arguments).
FnEval gamma(double x);

// ln Gamma for x > 0; exposed for internal reuse and tests.
double log_gamma(double x);

FnEval beta(double a, double b);

// Ai and Ai' on [-40, 40].
AiryEval airy_ai(double x);

// Modified Bessel K_nu, nu in (0, 1/2], x > 0.
FnEval bessel_k(double nu, double x);

// Parabolic cylinder D_nu, nu in [-1/2, 200], x in [-10, 40]; the
// solution decaying as x -> +inf.
PcfEval parabolic_cylinder_d(double nu, double x);

FnEval bessel_j1(double x);
FnEval struve_h1(double x);

namespace detail {
// Unrestricted-domain Airy core (any x <= ~1e4 in magnitude); the
// public op gates to the documented [-40, 40] range, but the wall-mode
// solver needs Ai(z - E) far below that.
AiryEval airy_core(double x);
// Bessel Y1 via the Hankel asymptotic series; only valid for x >= 14.
// Internal: required by struve_h1's tail.
double bessel_y1_asymptotic(double x);
}  // namespace detail

}  // namespace softwall::specfun
