#include "softwall/semiclassical.hpp"

#include <cmath>
#include <stdexcept>

#include "softwall/numerics.hpp"

namespace softwall::semiclassical {

namespace {
constexpr double kPi = softwall::num::pi;

double f_of(double rho, double T, double om) {
  return rho * std::sin(om) + om - T;
}

double fprime_of(double rho, double om) { return rho * std::cos(om) + 1.0; }

// Bracketed Newton polish; the taxonomy guarantees a sign change.
double polish_root(double rho, double T, double lo, double hi) {
  double flo = f_of(rho, T, lo);
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double fx = f_of(rho, T, x);
    if (std::abs(fx) < 1e-14 * (rho + T + 1)) break;
    double dfx = fprime_of(rho, x);
    double step = dfx != 0 ? fx / dfx : 0.0;
    double xn = x - step;
    if (!(xn > lo && xn < hi) || dfx == 0) {
      // fall back to bisection
      if ((fx > 0) == (flo > 0)) {
        lo = x;
        flo = fx;
      } else {
        hi = x;
      }
      xn = 0.5 * (lo + hi);
    }
    if (xn == x) break;
    x = xn;
  }
  return x;
}

}  // namespace

void QuadWall::validate() const {
  if (!(omega > 0)) throw std::invalid_argument("QuadWall: omega must be > 0");
}

PathSolution direct_path(double y, double x, double t) {
  if (!(t > 0)) throw std::domain_error("direct_path: requires t > 0");
  PathSolution p;
  p.kind = PathKind::Direct;
  p.t1 = 0;
  p.action = (x - y) * (x - y) / (4.0 * t);
  p.amp_sq = 1.0 / (2.0 * t);
  p.maslov = 0;
  return p;
}

std::optional<PathSolution> half_period_path(const QuadWall& wall, double y,
                                             double x, double t) {
  wall.validate();
  if (!(y < 0) || !(x < 0))
    throw std::domain_error("half_period_path: requires y < 0 and x < 0");
  const double om = wall.omega;
  if (!(om * t > kPi)) return std::nullopt;
  const double tau = t - kPi / om;
  PathSolution p;
  p.kind = PathKind::HalfPeriodReturn;
  p.t1 = y / (x + y) * tau;
  p.t2 = p.t1 + kPi / om;
  p.action = (x + y) * (x + y) / (4.0 * tau);
  // A^2 is negative on this branch; the magnitude is stored and
  // maslov = 1 carries the -i.
  p.amp_sq = 1.0 / (2.0 * tau);
  p.maslov = 1;
  p.caustic_on_exit = om * t - kPi < 1e-9 * kPi;
  return p;
}

HoKernelParams ho_kernel_params(const QuadWall& wall, double x, double y,
                                double t) {
  wall.validate();
  if (!(t > 0)) throw std::domain_error("ho_kernel_params: requires t > 0");
  const double wt = wall.omega * t;
  double frac = wt / kPi;
  if (std::abs(frac - std::round(frac)) * kPi < 1e-9)
    throw std::domain_error(
        "ho_kernel_params: omega t at a caustic (multiple of pi)");
  double sn = std::sin(wt), cn = std::cos(wt);
  HoKernelParams out;
  out.action = wall.omega / (4.0 * sn) * ((x * x + y * y) * cn - 2.0 * x * y);
  out.amp_sq = std::abs(wall.omega / (2.0 * sn));
  out.maslov = int(std::floor(frac));
  return out;
}

std::vector<double> crossing_times(const QuadWall& wall, double y, double x,
                                   double t) {
  wall.validate();
  if (!(x > 0) || !(y < 0) || !(t > 0))
    throw std::domain_error("crossing_times: requires y < 0 < x and t > 0");
  const double rho = -y / x;
  const double T = wall.omega * t;
  // Roots of f(om) = rho sin(om) + om - T on (0, pi); f(0) = -T < 0.
  std::vector<double> oms;
  if (T < kPi) {
    // f(pi) = pi - T > 0: a single root on the increasing stretch.
    oms.push_back(polish_root(rho, T, 0.0, kPi));
  } else if (rho > 1.0) {
    double om_c = std::acos(-1.0 / rho);  // interior maximum of f
    double fmax = f_of(rho, T, om_c);
    if (fmax > 0) {
      oms.push_back(polish_root(rho, T, 0.0, om_c));
      double fpi = f_of(rho, T, kPi);  // = pi - T <= 0
      if (fpi < 0) oms.push_back(polish_root(rho, T, om_c, kPi));
    }
    // fmax < 0: T > T*, no solutions. fmax == 0: tangency, measure zero.
  }
  std::vector<double> t1s;
  for (double om : oms) {
    double t1 = (T - om) / wall.omega;
    if (t1 > 0) t1s.push_back(t1);
  }
  return t1s;
}

double t_star(double rho) {
  if (!(rho >= 1.0)) throw std::domain_error("t_star: requires rho >= 1");
  return std::sqrt(rho * rho - 1.0) + std::acos(-1.0 / rho);
}

Taxonomy classify(double rho, double T, double tangent_tol) {
  if (!(rho > 0) || !(T > 0))
    throw std::domain_error("classify: requires rho, T > 0");
  Taxonomy out;
  out.rho = rho;
  out.T = T;
  if (rho >= 1.0) {
    out.t_star = t_star(rho);
    if (std::abs(T - *out.t_star) < tangent_tol) {
      out.count = RootCount::Tangent;
      return out;
    }
  }
  if (T < kPi)
    out.count = RootCount::One;
  else if (rho <= 1.0)
    out.count = RootCount::Zero;
  else
    out.count = (T < *out.t_star) ? RootCount::Two : RootCount::Zero;
  return out;
}

double mixed_action(const QuadWall& wall, double y, double t1, double x,
                    double t) {
  wall.validate();
  if (!(t1 > 0) || !(t > t1))
    throw std::domain_error("mixed_action: requires 0 < t1 < t");
  const double om = wall.omega;
  double residual = om * x * t1 + y * std::sin(om * (t - t1));
  if (std::abs(residual) > 1e-8 * (std::abs(om * x * t1) + std::abs(y)))
    throw std::invalid_argument(
        "mixed_action: t1 does not satisfy the crossing equation");
  return y * y / (4.0 * t1) +
         y * y / (8.0 * om * t1 * t1) * std::sin(2.0 * om * (t - t1));
}

MixedAmp mixed_amp_sq(const QuadWall& wall, double y, double t1, double x,
                      double t) {
  wall.validate();
  if (!(t1 > 0) || !(t > t1))
    throw std::domain_error("mixed_amp_sq: requires 0 < t1 < t");
  const double om = wall.omega;
  double residual = om * x * t1 + y * std::sin(om * (t - t1));
  if (std::abs(residual) > 1e-8 * (std::abs(om * x * t1) + std::abs(y)))
    throw std::invalid_argument(
        "mixed_amp_sq: t1 does not satisfy the crossing equation");
  MixedAmp out;
  double den = x - y * std::cos(om * (t - t1));
  // den = x (1 + rho cos(Omega~)); its zero is the caustic condition.
  out.caustic = std::abs(den) < 1e-9 * (std::abs(x) + std::abs(y));
  out.amp_sq = out.caustic ? std::copysign(INFINITY, y / (2.0 * t1) * den)
                           : y / (2.0 * t1) / den;
  return out;
}

std::vector<Taxonomy> taxonomy_scan(double rho_min, double rho_max,
                                    int rho_steps, double t_min, double t_max,
                                    int t_steps, Exec exec) {
  if (!(rho_min > 0) || !(rho_min < rho_max) || rho_steps < 2 ||
      !(t_min > 0) || !(t_min < t_max) || t_steps < 2)
    throw std::invalid_argument("taxonomy_scan: bad parameter rectangle");
  std::vector<Taxonomy> out(size_t(rho_steps) * t_steps);
  for_each_index(
      long(out.size()), exec,
      [&](long idx) {
        int i = int(idx) / t_steps;  // rho index
        int j = int(idx) % t_steps;  // T index
        double rho = rho_min + (rho_max - rho_min) * i / double(rho_steps - 1);
        double T = t_min + (t_max - t_min) * j / double(t_steps - 1);
        out[idx] = classify(rho, T);
      },
      256);
  return out;
}

}  // namespace softwall::semiclassical
