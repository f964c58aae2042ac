#include "softwall/phaseshift.hpp"

#include <cmath>
#include <stdexcept>

namespace softwall {

PhaseShiftFn PhaseShiftFn::dirichlet(double z0) {
  if (!(z0 >= 0)) throw std::invalid_argument("dirichlet: z0 must be >= 0");
  PhaseShiftFn f;
  f.kind_ = PhaseKind::Dirichlet;
  f.lin_a_ = z0;
  f.lin_b_ = 0;
  f.small_p_slope_ = z0;
  f.large_p_exponent_ = 1;
  f.tail_ = PhaseTail{z0, 1.0, 0.0, 0.0};
  return f;
}

PhaseShiftFn PhaseShiftFn::linear_offset(double a, double b) {
  PhaseShiftFn f;
  f.kind_ = PhaseKind::LinearOffset;
  f.lin_a_ = a;
  f.lin_b_ = b;
  f.small_p_slope_ = a;
  f.large_p_exponent_ = 1;
  f.tail_ = PhaseTail{a, 1.0, b, 0.0};
  return f;
}

PhaseShiftFn PhaseShiftFn::custom(std::function<double(double)> eval,
                                  std::function<double(double)> deriv,
                                  double small_p_slope,
                                  double large_p_exponent,
                                  std::optional<PhaseTail> tail) {
  if (!eval) throw std::invalid_argument("custom: eval required");
  PhaseShiftFn f;
  f.kind_ = PhaseKind::Custom;
  f.custom_eval_ = std::move(eval);
  f.custom_deriv_ = std::move(deriv);
  f.small_p_slope_ = small_p_slope;
  f.large_p_exponent_ = large_p_exponent;
  f.tail_ = std::move(tail);
  return f;
}

PhaseShiftFn PhaseShiftFn::soft_wall(num::CubicSpline spline, double p_lo,
                                     double lo_slope, PhaseTail tail,
                                     double small_p_slope,
                                     double large_p_exponent) {
  PhaseShiftFn f;
  f.kind_ = PhaseKind::SoftWall;
  f.spline_ = std::make_shared<const num::CubicSpline>(std::move(spline));
  f.p_lo_ = p_lo;
  f.lo_slope_ = lo_slope;
  f.tail_ = tail;
  f.small_p_slope_ = small_p_slope;
  f.large_p_exponent_ = large_p_exponent;
  return f;
}

double PhaseShiftFn::operator()(double p) const {
  switch (kind_) {
    case PhaseKind::Dirichlet:
    case PhaseKind::LinearOffset:
      return lin_a_ * p + lin_b_;
    case PhaseKind::SoftWall:
      if (p < p_lo_) return lo_slope_ * p;
      if (p > spline_->x_back()) return (*tail_)(p);
      return (*spline_)(p);
    case PhaseKind::Custom:
      return custom_eval_(p);
  }
  return 0;
}

double PhaseShiftFn::deriv(double p) const {
  switch (kind_) {
    case PhaseKind::Dirichlet:
    case PhaseKind::LinearOffset:
      return lin_a_;
    case PhaseKind::SoftWall:
      if (p < p_lo_) return lo_slope_;
      if (p > spline_->x_back()) return tail_->deriv(p);
      return spline_->deriv(p);
    case PhaseKind::Custom: {
      if (custom_deriv_) return custom_deriv_(p);
      double h = 1e-5 * (1 + std::abs(p));
      double lo = std::max(p - h, 1e-300);
      return (custom_eval_(p + h) - custom_eval_(lo)) / (p + h - lo);
    }
  }
  return 0;
}

}  // namespace softwall
