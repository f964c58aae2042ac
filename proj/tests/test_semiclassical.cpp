#include "softwall/semiclassical.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "softwall/numerics.hpp"

using namespace softwall;
namespace sc = softwall::semiclassical;

namespace {
constexpr double kPi = num::pi;
const sc::QuadWall kWall{1.0};

// Lagrangian quadrature along the piecewise trajectory of a crossing
// path: free leg (y, 0) -> (0, t1), oscillator leg to time t.  The
// oracle never touches the closed-form action.
double lagrangian_action(double omega, double y, double t1, double t) {
  double v0 = -y / t1;
  auto leg1 = [&](double) { return v0 * v0 / 4.0; };
  num::PanelOptions po;
  po.abs_tol = 1e-13;
  double s1 = num::integrate_panels(leg1, 0.0, t1, po).value;
  auto leg2 = [&](double tau) {
    double q = v0 / omega * std::sin(omega * (tau - t1));
    double qd = v0 * std::cos(omega * (tau - t1));
    return 0.25 * qd * qd - 0.25 * omega * omega * q * q;
  };
  double s2 = num::integrate_panels(leg2, t1, t, po).value;
  return s1 + s2;
}

int brute_force_roots(double rho, double T, int n = 100000) {
  int count = 0;
  double prev = rho * std::sin(kPi / n) + kPi / n - T;
  for (int i = 2; i < n; ++i) {
    double om = kPi * i / n;
    double cur = rho * std::sin(om) + om - T;
    if ((prev < 0) != (cur < 0)) ++count;
    prev = cur;
  }
  return count;
}
}  // namespace

TEST_CASE("direct path") {
  auto p = sc::direct_path(-1.0, -1.0, 2.0);
  CHECK(p.action == 0.0);
  CHECK(p.amp_sq == doctest::Approx(0.25));
  CHECK(p.maslov == 0);
  CHECK(p.kind == sc::PathKind::Direct);
  auto q = sc::direct_path(-2.0, 0.0, 1.0);
  CHECK(q.action == doctest::Approx(1.0));
  CHECK(q.amp_sq == doctest::Approx(0.5));
  // Homogeneity S(ly, lx, t) = l^2 S(y, x, t).
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-3.0, -0.1);
  for (int i = 0; i < 20; ++i) {
    double y = u(rng), x = u(rng), t = 0.3 - u(rng);
    double l = 1.0 - u(rng);
    CHECK(sc::direct_path(l * y, l * x, t).action ==
          doctest::Approx(l * l * sc::direct_path(y, x, t).action));
  }
  CHECK_THROWS_AS(sc::direct_path(0, 1, 0.0), std::domain_error);
}

TEST_CASE("half-period return path") {
  auto p = sc::half_period_path(kWall, -1.0, -1.0, 2 * kPi);
  REQUIRE(p.has_value());
  CHECK(p->t1 == doctest::Approx(kPi / 2));
  CHECK(*p->t2 == doctest::Approx(p->t1 + kPi));
  CHECK(p->action == doctest::Approx(1.0 / kPi));
  CHECK(p->amp_sq == doctest::Approx(1.0 / (2 * kPi)));
  CHECK(p->maslov == 1);
  CHECK_FALSE(p->caustic_on_exit);
  CHECK(p->t1 >= 0);
  CHECK(*p->t2 <= 2 * kPi);
  // Absent below half a period.
  CHECK_FALSE(sc::half_period_path(kWall, -1.0, -2.0, 3.0).has_value());
  // Near omega t = pi the action blows up; flagged, not an error.
  auto close = sc::half_period_path(kWall, -1.0, -1.0, kPi + 1e-12);
  REQUIRE(close.has_value());
  CHECK(close->caustic_on_exit);
  CHECK(close->action > 1e10);
  CHECK_THROWS_AS(sc::half_period_path(kWall, -1.0, 1.0, 4.0),
                  std::domain_error);
}

TEST_CASE("oscillator kernel parameters") {
  // Free-particle limit at omega t = 1e-4.
  auto hk = sc::ho_kernel_params(kWall, 0.8, -0.4, 1e-4);
  auto dp = sc::direct_path(-0.4, 0.8, 1e-4);
  CHECK(std::abs(hk.action - dp.action) <= 1e-6 * std::abs(dp.action));
  CHECK(std::abs(hk.amp_sq - dp.amp_sq) <= 1e-6 * dp.amp_sq);
  CHECK(hk.maslov == 0);
  // x = y = 0 gives zero action.
  CHECK(sc::ho_kernel_params(kWall, 0.0, 0.0, 1.0).action == 0.0);
  // omega = 1, t = pi/2, x = 1, y = 0: S = 0, A^2 = 1/2.
  auto m = sc::ho_kernel_params(kWall, 1.0, 0.0, kPi / 2);
  CHECK(m.action == doctest::Approx(0.0));
  CHECK(m.amp_sq == doctest::Approx(0.5));
  // Maslov counts multiples of pi passed.
  CHECK(sc::ho_kernel_params(kWall, 0.3, 0.1, 1.5 * kPi).maslov == 1);
  CHECK(sc::ho_kernel_params(kWall, 0.3, 0.1, 2.5 * kPi).maslov == 2);
  CHECK_THROWS_AS(sc::ho_kernel_params(kWall, 1.0, 0.0, kPi),
                  std::domain_error);
  CHECK_THROWS_AS(sc::ho_kernel_params(kWall, 1.0, 0.0, 2 * kPi),
                  std::domain_error);
}

TEST_CASE("crossing times per the taxonomy") {
  // rho = 0.5, T = 2: one solution.
  CHECK(sc::crossing_times(kWall, -0.5, 1.0, 2.0).size() == 1);
  // rho = 0.5, T = 4: none.
  CHECK(sc::crossing_times(kWall, -0.5, 1.0, 4.0).empty());
  // rho = 2, T = 3.5 (pi <= 3.5 < T*(2) ~ 3.8264): two.
  auto two = sc::crossing_times(kWall, -1.0, 0.5, 3.5);
  CHECK(two.size() == 2);
  // Residuals.
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> uy(-3.0, -0.1);
  std::uniform_real_distribution<double> ux(0.1, 3.0);
  std::uniform_real_distribution<double> ut(0.2, 7.5);
  for (int i = 0; i < 300; ++i) {
    double y = uy(rng), x = ux(rng), t = ut(rng);
    for (double t1 : sc::crossing_times(kWall, y, x, t)) {
      CHECK(t1 > 0);
      CHECK(t1 < t);
      double res = x * t1 + y * std::sin(t - t1);
      CHECK(std::abs(res) < 1e-10 * (std::abs(x * t1) + std::abs(y)));
    }
  }
}

TEST_CASE("t_star closed form and monotonicity") {
  CHECK(sc::t_star(1.0) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(std::abs(sc::t_star(2.0) - (std::sqrt(3.0) + 2 * kPi / 3)) < 1e-12);
  CHECK(sc::t_star(10.0) ==
        doctest::Approx(std::sqrt(99.0) + std::acos(-0.1)).epsilon(1e-14));
  double prev = sc::t_star(1.0);
  for (double rho = 1.05; rho < 8.0; rho += 0.05) {
    double cur = sc::t_star(rho);
    CHECK(cur > prev);
    prev = cur;
  }
  CHECK_THROWS_AS(sc::t_star(0.9), std::domain_error);
}

TEST_CASE("classify regions and boundaries") {
  CHECK(sc::classify(0.5, 2.0).count == sc::RootCount::One);
  CHECK(sc::classify(2.0, 4.5).count == sc::RootCount::Zero);
  CHECK(sc::classify(2.0, 3.5).count == sc::RootCount::Two);
  CHECK(sc::classify(0.5, 4.0).count == sc::RootCount::Zero);
  CHECK(sc::classify(1.0, kPi).count == sc::RootCount::Tangent);
  CHECK(sc::classify(2.0, sc::t_star(2.0)).count == sc::RootCount::Tangent);
  CHECK_FALSE(sc::classify(0.5, 2.0).t_star.has_value());
  CHECK(sc::classify(2.0, 1.0).t_star.has_value());
  CHECK_THROWS_AS(sc::classify(-1.0, 1.0), std::domain_error);
}

TEST_CASE("classify agrees with brute-force root counting") {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> urho(0.02, 5.0);
  std::uniform_real_distribution<double> uT(0.02, 8.0);
  int mismatches = 0;
  for (int i = 0; i < 3000; ++i) {
    double rho = urho(rng), T = uT(rng);
    // Perturb off the tangent bands.
    if (std::abs(T - kPi) < 1e-5) T += 1e-4;
    if (rho >= 1.0 && std::abs(T - sc::t_star(rho)) < 1e-5) T += 1e-4;
    auto tx = sc::classify(rho, T);
    int expect = tx.count == sc::RootCount::Zero  ? 0
                 : tx.count == sc::RootCount::One ? 1
                                                  : 2;
    if (brute_force_roots(rho, T, 20000) != expect) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("mixed action matches the Lagrangian quadrature") {
  std::mt19937 rng(321);
  std::uniform_real_distribution<double> uy(-3.0, -0.2);
  std::uniform_real_distribution<double> ux(0.2, 3.0);
  std::uniform_real_distribution<double> ut(0.3, 7.0);
  int found = 0;
  while (found < 20) {
    double y = uy(rng), x = ux(rng), t = ut(rng);
    auto roots = sc::crossing_times(kWall, y, x, t);
    for (double t1 : roots) {
      double s_closed = sc::mixed_action(kWall, y, t1, x, t);
      double s_quad = lagrangian_action(kWall.omega, y, t1, t);
      CHECK(std::abs(s_closed - s_quad) <= 1e-6 * std::abs(s_quad));
      ++found;
    }
  }
  // sin(2 omega (t - t1)) = 0 at omega(t - t1) = pi/2: S = y^2/(4 t1).
  {
    double om_t = kPi / 2;          // t - t1
    double y = -1.0, t1 = 0.8;
    double x = -y * std::sin(om_t) / t1;  // satisfies the crossing eq
    double t = t1 + om_t;
    CHECK(sc::mixed_action(kWall, y, t1, x, t) ==
          doctest::Approx(y * y / (4 * t1)).epsilon(1e-12));
    auto amp = sc::mixed_amp_sq(kWall, y, t1, x, t);
    CHECK_FALSE(amp.caustic);
    CHECK(amp.amp_sq == doctest::Approx(y / (2 * t1) / x).epsilon(1e-12));
  }
  CHECK_THROWS_AS(sc::mixed_action(kWall, -1.0, 0.4, 1.0, 2.0),
                  std::invalid_argument);
}

TEST_CASE("interior half-period action vanishes") {
  for (double v0 : {0.5, 1.3, 2.7}) {
    auto lag = [&](double tau) {
      double q = v0 * std::sin(tau);
      double qd = v0 * std::cos(tau);
      return 0.25 * qd * qd - 0.25 * q * q;
    };
    num::PanelOptions po;
    po.abs_tol = 1e-13;
    CHECK(std::abs(num::integrate_panels(lag, 0.0, kPi, po).value) < 1e-10);
  }
}

TEST_CASE("caustic condition on the amplitude denominator") {
  // At rho = 2 the caustic sits at Omega~ = arccos(-1/2) = 2pi/3, which
  // is the tangent configuration T = T*(2).
  double om_t = std::acos(-0.5);
  double y = -2.0, x = 1.0;
  double t1 = -y * std::sin(om_t) / x;  // crossing equation with omega = 1
  double t = t1 + om_t;
  auto amp = sc::mixed_amp_sq(kWall, y, t1, x, t);
  CHECK(amp.caustic);
  // The caustic arrival is exactly the tangent configuration T = T*(2).
  CHECK(t == doctest::Approx(sc::t_star(2.0)).epsilon(1e-12));
  // Every escaping trajectory passes one caustic: along a fixed
  // trajectory the denominator changes sign exactly once.
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> uy(-3.0, -0.3);
  std::uniform_real_distribution<double> ut1(0.2, 2.0);
  for (int i = 0; i < 30; ++i) {
    double yy = uy(rng), tt1 = ut1(rng);
    double v0 = -yy / tt1;
    int sign_changes = 0;
    double prev = 0;
    for (int k = 1; k < 2000; ++k) {
      double omt = kPi * k / 2000.0;
      double xq = v0 * std::sin(omt);
      double den = xq - yy * std::cos(omt);
      if (k > 1 && (den < 0) != (prev < 0)) ++sign_changes;
      prev = den;
    }
    CHECK(sign_changes == 1);
  }
}
