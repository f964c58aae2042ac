#pragma once

// Renormalized cylinder kernel in the potential-free region z < 0:
// the damped Cartesian representation, the polar (rho-ordered)
// representation on the diagonal with s->0 extrapolation, hard-wall
// closed forms, the constant-offset divergence probe, and the
// counterterm expansion.

#include <vector>

#include "softwall/parallel.hpp"
#include "softwall/phaseshift.hpp"

namespace softwall::cylkernel {

struct QuadratureConfig {
  double rho_max = 0;  // interior/analytic-tail split; 0 picks a default
  std::vector<double> s_ladder{0.4, 0.2, 0.1, 0.05};
  int extrapolation_order = 3;
  double abs_tol = 1e-8;
  double rel_tol = 1e-5;
  void validate() const;
};

struct KernelQuery {
  double z = -1;
  double z_prime = -1;
  double s = 0;  // Euclidean separation sqrt(t^2 + |r_perp|^2)
  QuadratureConfig quad;
};

struct KernelValue {
  double value = 0;
  double err = 0;
};

// Diagonal hard-wall value 1/(8 pi^2 (z - z0)^2).
double tbar_hardwall_diag(double z, double z0);

// Image solution 1/(2 pi^2 (s^2 + (z + z' - 2 z0)^2)).
double tbar_hardwall_offdiag(const KernelQuery& q, double z0);

// Damped Cartesian integral, s > 0 strictly (the diagonal s = 0 limit
// belongs to the polar op).  Convergence failure carries the partial
// value in the exception.
KernelValue tbar_ren_cartesian(const PhaseShiftFn& delta,
                               const KernelQuery& q);

// Diagonal value at s = 0: the s > 0 polar form evaluated on the
// s-ladder and extrapolated polynomially to s = 0.
KernelValue tbar_ren_polar_diag(const PhaseShiftFn& delta, double z,
                                const QuadratureConfig& cfg);

// Closed form of int_0^1 du sqrt(1-u^2) cos(b u - phase_offset).
double polar_u_integral(double b, double phase_offset);

enum class PathologyClass { Convergent, DivergentAs1OverS };

struct PathologyRow {
  double s, value, s_times_value;
};

struct PathologyReport {
  PathologyClass classification = PathologyClass::Convergent;
  double s_value_limit = 0;  // extrapolated limit of s * value
  double residual = 0;
  double threshold = 0;
  std::vector<PathologyRow> ladder;
};

// delta(p) = p + B on the diagonal z = z' = z_sum/2: demonstrates the
// 1/s divergence for B != 0 against convergence at B = 0.
PathologyReport pathology_probe(double B, double z_sum,
                                std::vector<double> s_ladder);

struct ProfileResult {
  std::vector<double> z_grid;
  std::vector<double> tbar;
  std::vector<double> err;  // -1 marks a point whose ladder failed
  std::vector<double> hardwall_ref;
  double c_ref = 0;
};

ProfileResult compute_profile(const PhaseShiftFn& delta,
                              const std::vector<double>& z_grid,
                              const QuadratureConfig& cfg,
                              Exec exec = Exec::Parallel);

struct WallPositionEstimate {
  double c_from_slope = 0;
  double c_from_fit = 0;
};

// Effective wall position: the small-p slope against a least-squares
// fit of 1/(8 pi^2 (z-c)^2) to the far tail of the profile.
WallPositionEstimate effective_wall_position(const PhaseShiftFn& delta,
                                             const ProfileResult& profile);

struct CountertermTerms {
  double t4_term = 0;
  double t2_term = 0;
  double log_term = 0;
};

// Small-t cutoff expansion of the energy density where v != 0; each
// term carries its 1/pi^2.  The log coefficient is not to be trusted
// for potentials with kinks (alpha = 1 at z = 0).
CountertermTerms counterterm_density(double v, double v_laplacian, double t);

namespace detail {
// Exact-transform (rotated-contour) evaluation of the damped integral
// for delta = A p + B; the probe needs ladder values near 1e-14.
double cartesian_linear_damped(double A, double B, double Z, double s);

// One rung of the polar s-ladder: the rho-ordered polar form at fixed
// s > 0 on the diagonal.  Equals the damped Cartesian integral there;
// the equality is a representation-consistency check, not an identity
// the implementation uses.
KernelValue polar_fixed_s(const PhaseShiftFn& delta, double z, double s,
                          const QuadratureConfig& cfg);
}  // namespace detail

}  // namespace softwall::cylkernel
