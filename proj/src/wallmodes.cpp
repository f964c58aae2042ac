#include "softwall/wallmodes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "softwall/specfun.hpp"

namespace softwall::wallmodes {

namespace {
constexpr double kPi = softwall::num::pi;

// Forbidden-region WKB exponent Lambda(z) = int_a^z sqrt(t^alpha - E) dt,
// via t = a + u^2 which absorbs the square-root turning point.
double wkb_exponent(double alpha, double E, double a, double z) {
  if (z <= a) return 0;
  double umax = std::sqrt(z - a);
  auto f = [&](double u) {
    double t = a + u * u;
    double q = std::pow(t, alpha) - E;
    return q > 0 ? 2.0 * u * std::sqrt(q) : 0.0;
  };
  softwall::num::PanelOptions opt;
  opt.abs_tol = 1e-9;
  return softwall::num::integrate_panels(f, 0.0, umax, opt).value;
}

ModeValue p_alpha_ode(const WallModel& model, double z, double E) {
  const double alpha = model.alpha;
  const double a = E > 0 ? std::pow(E, 1.0 / alpha) : 0.0;
  double z_far = std::max(3.0 * a, 5.0);
  // Cap the inward amplification at e^300 so the run stays in range;
  // the seed is still far enough past the turning point that the
  // growing-solution contamination is dead on arrival.
  if (wkb_exponent(alpha, E, a, z_far) > 300.0) {
    double lo = a + 1e-4 * (a + 1), hi = z_far;
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      (wkb_exponent(alpha, E, a, mid) > 300.0 ? hi : lo) = mid;
    }
    z_far = lo;
  }
  auto q_of = [&](double t) { return std::pow(t, alpha) - E; };
  auto logderiv = [&](double t) {
    double q = q_of(t);
    double qp = alpha * std::pow(t, alpha - 1.0);
    return -std::sqrt(q) - 0.25 * qp / q;
  };
  if (z >= z_far) {
    // Query beyond the seed: pure WKB tail, matched to the unit seed.
    double qz = q_of(z), qf = q_of(z_far);
    double amp = std::pow(qf / qz, 0.25) *
                 std::exp(-wkb_exponent(alpha, E, a, z) +
                          wkb_exponent(alpha, E, a, z_far));
    return {amp, amp * logderiv(z)};
  }
  auto rhs = [&](double t, const std::array<double, 2>& y) {
    return std::array<double, 2>{y[1], (std::pow(t, alpha) - E) * y[0]};
  };
  auto y = softwall::num::ode_integrate(rhs, z_far, z, {1.0, logderiv(z_far)},
                                        {1e-11, 1e-280});
  return {y[0], y[1]};
}

}  // namespace

double WallModel::zhat() const {
  return std::pow(std::pow(z0, alpha) / lambda0, 1.0 / (alpha + 2.0));
}

void WallModel::validate() const {
  if (!(alpha >= 1.0))
    throw std::invalid_argument("WallModel: alpha must be >= 1");
  if (!(lambda0 > 0) || !(z0 > 0))
    throw std::invalid_argument("WallModel: lambda0, z0 must be > 0");
}

ModeValue p_alpha(const WallModel& model, double z, double E,
                  std::optional<ModeMethod> force) {
  model.validate();
  if (!(z >= 0)) throw std::domain_error("p_alpha: requires z >= 0");
  if (!(E >= 0)) throw std::domain_error("p_alpha: requires E >= 0");
  ModeMethod method = force.value_or(
      model.alpha == 1.0 ? ModeMethod::ClosedFormAiry
                         : (model.alpha == 2.0 ? ModeMethod::ClosedFormCylinder
                                               : ModeMethod::OdeGeneral));
  switch (method) {
    case ModeMethod::ClosedFormAiry: {
      if (model.alpha != 1.0)
        throw std::invalid_argument("p_alpha: Airy route needs alpha == 1");
      // The argument z - E runs far below the public airy_ai range for
      // large E; the core evaluator has no lower cutoff.
      auto a = specfun::detail::airy_core(z - E);
      return {a.ai.value, a.ai_prime.value};
    }
    case ModeMethod::ClosedFormCylinder: {
      if (model.alpha != 2.0)
        throw std::invalid_argument(
            "p_alpha: cylinder route needs alpha == 2");
      const double s2 = std::sqrt(2.0);
      auto d = specfun::parabolic_cylinder_d(0.5 * (E - 1.0), s2 * z);
      return {d.d.value, s2 * d.d_prime.value};
    }
    case ModeMethod::OdeGeneral:
      return p_alpha_ode(model, z, E);
  }
  throw std::logic_error("p_alpha: unreachable");
}

namespace {

// Principal value of the matching angle, defined mod pi; the sign
// freedom of C(p) is resolved by the continuity unwrap.  A vanishing
// P' lands on the +-pi/2 branch without special casing.
double principal_theta(const WallModel& model, double p, ModeValue* out) {
  const double zh = model.zhat();
  const double ph = zh * p;
  ModeValue mv = p_alpha(model, 0.0, ph * ph);
  if (out) *out = mv;
  return std::atan2(-ph * mv.value, mv.derivative);
}

double deriv_overestimate(const WallModel& model, double c_slope, double kappa,
                          double p) {
  return 1.0 + c_slope +
         1.4 * kappa * (1.0 + 2.0 / model.alpha) *
             std::pow(p, 2.0 / model.alpha);
}

struct MarchResult {
  double delta;
  ModeValue mode;
};

// Continuity march of the unwrapped branch from the delta(0+) = 0
// anchor up to p_target.  Steps are sized so the true increment stays
// below pi/2, making the mod-pi branch choice unambiguous.
MarchResult march_delta(const WallModel& model, double p_target,
                        double record_from,
                        std::vector<std::pair<double, double>>* nodes,
                        double max_step_delta) {
  const double c_slope = delta_small_p(model, 1.0);
  const double kappa = (1.0 / model.alpha) *
                       specfun::beta(1.5, 1.0 / model.alpha).value *
                       std::pow(model.zhat(), 1.0 + 2.0 / model.alpha);
  double p = std::min(1e-3, 0.4 * p_target);
  double delta = c_slope * p;
  ModeValue mv{};
  auto maybe_record = [&](double pp, double dd) {
    if (nodes && pp >= record_from * (1 - 1e-12)) nodes->push_back({pp, dd});
  };
  maybe_record(p, delta);
  const double step_cap = std::max(max_step_delta, 0.1);
  while (p < p_target) {
    double h = std::min(step_cap / deriv_overestimate(model, c_slope, kappa, p),
                        0.5 * p_target);
    h = std::min(h, p_target - p);
    for (int tries = 0;; ++tries) {
      double pn = p + h;
      double theta = principal_theta(model, pn, &mv);
      double k = std::round((delta - theta) / kPi);
      double cand = theta + k * kPi;
      if (std::abs(cand - delta) < 0.48 * kPi || h < 1e-9 * (1 + p)) {
        p = pn;
        delta = cand;
        break;
      }
      if (tries > 60)
        throw softwall::num::ConvergenceError(
            "phase march: cannot keep |d delta| < pi/2", delta, kPi);
      h *= 0.5;
    }
    maybe_record(p, delta);
  }
  if (p != p_target) {
    double theta = principal_theta(model, p_target, &mv);
    double k = std::round((delta - theta) / kPi);
    delta = theta + k * kPi;
  }
  return {delta, mv};
}

}  // namespace

ModeSolution phase_shift(const WallModel& model, double p) {
  model.validate();
  if (!(p > 0)) throw std::domain_error("phase_shift: requires p > 0");
  auto r = march_delta(model, p, 1e300, nullptr, 1.2);
  const double zh = model.zhat();
  const double ph = zh * p;
  ModeValue mv = r.mode;
  double c2 = (2.0 / kPi) /
              (mv.value * mv.value +
               mv.derivative * mv.derivative / (ph * ph)) /
              zh;
  ModeMethod method = model.alpha == 1.0
                          ? ModeMethod::ClosedFormAiry
                          : (model.alpha == 2.0 ? ModeMethod::ClosedFormCylinder
                                                : ModeMethod::OdeGeneral);
  return {p, r.delta, c2, method};
}

double delta_small_p(const WallModel& model, double p) {
  model.validate();
  const double a = model.alpha;
  double coeff = std::pow(a + 2.0, 2.0 / (a + 2.0)) *
                 specfun::gamma((a + 3.0) / (a + 2.0)).value /
                 specfun::gamma((a + 1.0) / (a + 2.0)).value;
  return p * model.zhat() * coeff;
}

double delta_large_p(const WallModel& model, double p) {
  model.validate();
  if (!(p > 0)) throw std::domain_error("delta_large_p: requires p > 0");
  const double a = model.alpha;
  return (1.0 / a) * std::pow(model.zhat() * p, 1.0 + 2.0 / a) *
             specfun::beta(1.5, 1.0 / a).value +
         kPi / 4.0;
}

double wkb_mode(const WallModel& model, double p, double z, double guard_frac) {
  model.validate();
  if (!(p > 0)) throw std::domain_error("wkb_mode: requires p > 0");
  const double ph = model.zhat() * p;
  const double E = ph * ph;
  const double a = std::pow(E, 1.0 / model.alpha);
  if (!(z >= 0) || z > a * (1.0 - guard_frac))
    throw std::domain_error("wkb_mode: z inside the turning-point guard band");
  // Phase integral with the sqrt endpoint absorbed by t = a - u^2.
  auto f = [&](double u) {
    double t = a - u * u;
    double q = E - std::pow(t, model.alpha);
    return q > 0 ? 2.0 * u * std::sqrt(q) : 0.0;
  };
  softwall::num::PanelOptions opt;
  opt.abs_tol = 1e-12;
  double phase =
      softwall::num::integrate_panels(f, 0.0, std::sqrt(a - z), opt).value;
  double amp = std::pow(E - std::pow(z, model.alpha), -0.25);
  return amp * std::cos(phase - kPi / 4.0);
}

PhaseShiftFn make_phase_model(const WallModel& model,
                              const PhaseGridSpec& spec) {
  model.validate();
  double p_max = spec.p_max > 0 ? spec.p_max : (model.alpha == 2.0 ? 12.0 : 10.0);
  double p_min = spec.p_min;
  if (!(p_min > 0) || !(p_min < p_max))
    throw std::invalid_argument("make_phase_model: need 0 < p_min < p_max");

  std::vector<std::pair<double, double>> nodes;
  march_delta(model, p_min, 1e300, nullptr, spec.max_step_delta);
  // Re-run recording from p_min so the grid starts exactly there.
  nodes.clear();
  {
    std::vector<std::pair<double, double>> all;
    march_delta(model, p_max, p_min, &all, spec.max_step_delta);
    if (all.empty() || all.front().first > p_min) {
      auto anchor = march_delta(model, p_min, 1e300, nullptr, spec.max_step_delta);
      all.insert(all.begin(), {p_min, anchor.delta});
    }
    nodes = std::move(all);
  }
  if (nodes.back().first < p_max) {
    auto endr = march_delta(model, p_max, 1e300, nullptr, spec.max_step_delta);
    nodes.push_back({p_max, endr.delta});
  }

  auto build = [&]() {
    std::vector<double> xs, ys;
    xs.reserve(nodes.size());
    ys.reserve(nodes.size());
    for (auto& n : nodes) {
      if (!xs.empty() && n.first <= xs.back()) continue;
      xs.push_back(n.first);
      ys.push_back(n.second);
    }
    return softwall::num::CubicSpline(std::move(xs), std::move(ys));
  };

  softwall::num::CubicSpline spline = build();
  for (int pass = 0; pass < 8; ++pass) {
    std::vector<std::pair<double, double>> inserts;
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
      double pm = 0.5 * (nodes[i].first + nodes[i + 1].first);
      double pred = 0.5 * (nodes[i].second + nodes[i + 1].second);
      double theta = principal_theta(model, pm, nullptr);
      double exact = theta + std::round((pred - theta) / kPi) * kPi;
      if (std::abs(spline(pm) - exact) > spec.spline_tol)
        inserts.push_back({pm, exact});
    }
    if (inserts.empty()) break;
    nodes.insert(nodes.end(), inserts.begin(), inserts.end());
    std::sort(nodes.begin(), nodes.end());
    spline = build();
  }

  const double mu = 1.0 + 2.0 / model.alpha;
  const double kappa = (1.0 / model.alpha) *
                       specfun::beta(1.5, 1.0 / model.alpha).value *
                       std::pow(model.zhat(), mu);
  double delta_end = nodes.back().second;
  double offset = delta_end - (kappa * std::pow(p_max, mu) + kPi / 4.0);
  if (std::abs(offset) > spec.max_blend_offset)
    throw std::runtime_error(
        "make_phase_model: exact/asymptote mismatch at p_max exceeds "
        "tolerance; increase p_max");
  PhaseTail tail{kappa, mu, kPi / 4.0 + offset, p_max};
  double lo_slope = nodes.front().second / nodes.front().first;
  return PhaseShiftFn::soft_wall(std::move(spline), p_min, lo_slope, tail,
                                 delta_small_p(model, 1.0), mu);
}

}  // namespace softwall::wallmodes
