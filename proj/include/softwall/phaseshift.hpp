#pragma once

// delta(p) models consumed by the kernel quadrature: exact soft-wall
// phase shifts packaged on a spline with an asymptotic tail, the
// Dirichlet reference delta = z0 p, the linear-plus-constant family
// delta = A p + B, and user-supplied callables.

#include <complex>
#include <functional>
#include <memory>
#include <optional>

#include "softwall/numerics.hpp"

namespace softwall {

enum class PhaseKind { SoftWall, Dirichlet, LinearOffset, Custom };

// Large-p form delta(p) = coef * p^power + constant for p >= valid_from.
// Analytic in p, which the kernel tail quadrature exploits on a rotated
// contour.
struct PhaseTail {
  double coef = 0;
  double power = 1;
  double constant = 0;
  double valid_from = 0;

  double operator()(double p) const {
    return coef * std::pow(p, power) + constant;
  }
  double deriv(double p) const {
    return coef * power * std::pow(p, power - 1.0);
  }
  std::complex<double> analytic(std::complex<double> p) const {
    return coef * std::pow(p, std::complex<double>(power)) + constant;
  }
};

// Immutable after construction; shareable across threads.
class PhaseShiftFn {
 public:
  static PhaseShiftFn dirichlet(double z0);
  static PhaseShiftFn linear_offset(double a, double b);
  static PhaseShiftFn custom(std::function<double(double)> eval,
                             std::function<double(double)> deriv,
                             double small_p_slope, double large_p_exponent,
                             std::optional<PhaseTail> tail = {});
  // Assembled by wallmodes::make_phase_model: exact values on
  // [p_lo, spline end], linear below p_lo, tail above.
  static PhaseShiftFn soft_wall(num::CubicSpline spline, double p_lo,
                                double lo_slope, PhaseTail tail,
                                double small_p_slope, double large_p_exponent);

  double operator()(double p) const;
  double deriv(double p) const;

  PhaseKind kind() const { return kind_; }
  double small_p_slope() const { return small_p_slope_; }
  double large_p_exponent() const { return large_p_exponent_; }
  const std::optional<PhaseTail>& tail() const { return tail_; }

 private:
  PhaseShiftFn() = default;

  PhaseKind kind_ = PhaseKind::Custom;
  double small_p_slope_ = 0;
  double large_p_exponent_ = 1;
  std::optional<PhaseTail> tail_;
  double lin_a_ = 0, lin_b_ = 0;  // Dirichlet / LinearOffset
  std::shared_ptr<const num::CubicSpline> spline_;
  double p_lo_ = 0, lo_slope_ = 0;
  std::function<double(double)> custom_eval_, custom_deriv_;
};

}  // namespace softwall
