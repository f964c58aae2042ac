#pragma once

// Classical trajectories for the quadratic wall v(x) = omega^2 x^2 / 4
// (x > 0) in one dimension: direct and half-period paths, oscillator
// kernel parameters, crossing-time roots, the (rho, T) solution-count
// taxonomy with its fold curve T*, and caustic bookkeeping.  Mass is
// 1/2 throughout, L = qdot^2/4 - v(q).

#include <optional>
#include <vector>

#include "softwall/parallel.hpp"

namespace softwall::semiclassical {

struct QuadWall {
  double omega = 1.0;
  void validate() const;
};

enum class PathKind { Direct, HalfPeriodReturn, CrossingIntoWall };

struct PathSolution {
  PathKind kind = PathKind::Direct;
  double t1 = 0;                 // entry/crossing time
  std::optional<double> t2;      // exit time, when the path re-emerges
  double action = 0;
  double amp_sq = 0;             // magnitude; the sign sits in maslov
  int maslov = 0;
  bool caustic_on_exit = false;
};

// Force-free motion y -> x in time t.
PathSolution direct_path(double y, double x, double t);

// Path that enters the wall and re-emerges after half a period;
// present iff omega t > pi.  The interior action vanishes, so the
// total is the two free legs.  Near omega t = pi the action blows up;
// that point is flagged, not an error.
std::optional<PathSolution> half_period_path(const QuadWall& wall, double y,
                                             double x, double t);

struct HoKernelParams {
  double action = 0;
  double amp_sq = 0;  // |omega / (2 sin omega t)|
  int maslov = 0;     // caustics passed: floor(omega t / pi)
};

// Mehler parameters for both endpoints inside the oscillator.
HoKernelParams ho_kernel_params(const QuadWall& wall, double x, double y,
                                double t);

// Crossing times t1 of a path y < 0 -> x > 0 in time t: roots of
// omega x t1 + y sin(omega (t - t1)) = 0 with omega (t - t1) in (0, pi).
std::vector<double> crossing_times(const QuadWall& wall, double y, double x,
                                   double t);

// Fold curve T*(rho) = sqrt(rho^2 - 1) + arccos(-1/rho), rho >= 1.
double t_star(double rho);

enum class RootCount { Zero, One, Two, Tangent };

struct Taxonomy {
  double rho = 0;  // -y/x
  double T = 0;    // omega t
  RootCount count = RootCount::Zero;
  std::optional<double> t_star;  // present iff rho >= 1
};

Taxonomy classify(double rho, double T, double tangent_tol = 1e-9);

// Action along the mixed path for a crossing time t1 (must satisfy the
// crossing equation; checked).
double mixed_action(const QuadWall& wall, double y, double t1, double x,
                    double t);

struct MixedAmp {
  double amp_sq = 0;  // signed
  bool caustic = false;
};

// A^2 = (y / 2 t1) / (x - y cos(omega (t - t1))); the caustic flag marks
// a vanishing denominator (rho cos(Omega~) + 1 = 0).
MixedAmp mixed_amp_sq(const QuadWall& wall, double y, double t1, double x,
                      double t);

// Region map of classify over a (rho, T) rectangle, row-major in T-then-
// rho order; parallel scan with deterministic assembly.
std::vector<Taxonomy> taxonomy_scan(double rho_min, double rho_max,
                                    int rho_steps, double t_min, double t_max,
                                    int t_steps, Exec exec = Exec::Parallel);

}  // namespace softwall::semiclassical
