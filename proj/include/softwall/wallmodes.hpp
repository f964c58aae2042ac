#pragma once

// One-dimensional mode problem for the soft wall: the decaying solution
// P_alpha(z, E) of (-d^2/dz^2 + z^alpha - E) P = 0, the exact phase
// shift delta(p) with branch unwrapping anchored at delta(0+) = 0, the
// mode normalization, and the small-p / WKB asymptotic regimes.

#include <optional>

#include "softwall/phaseshift.hpp"

namespace softwall::wallmodes {

// v(z) = lambda0 (z/z0)^alpha for z > 0, zero otherwise.  Lengths are
// reported in wall units: with the defaults zhat = 1 and E = p^2.
struct WallModel {
  double alpha = 1.0;
  double lambda0 = 1.0;
  double z0 = 1.0;

  double zhat() const;
  void validate() const;
};

enum class ModeMethod { ClosedFormAiry, ClosedFormCylinder, OdeGeneral };

struct ModeValue {
  double value;
  double derivative;
};

// Decaying solution and its z-derivative in wall units.  The overall
// scale is fixed deterministically per (model, E): closed forms carry
// their conventional normalization, the ODE route is pinned to unit
// value at its seed point, so ratios across z are consistent.
ModeValue p_alpha(const WallModel& model, double z, double E,
                  std::optional<ModeMethod> force = {});

struct ModeSolution {
  double p = 0;
  double delta = 0;      // unwrapped continuous branch, delta(0+) -> 0
  double c_norm_sq = 0;  // matching normalization C(p)^2
  ModeMethod method = ModeMethod::OdeGeneral;
};

ModeSolution phase_shift(const WallModel& model, double p);

// Linear term of the small-p expansion (the O(p^3) coefficient is not
// reproduced here).
double delta_small_p(const WallModel& model, double p);

// Two-term large-p asymptote.
double delta_large_p(const WallModel& model, double p);

// Amplitude-phase approximation below the turning point a = p^{2/alpha};
// a guard band (fraction of a) keeps clear of the amplitude divergence.
double wkb_mode(const WallModel& model, double p, double z,
                double guard_frac = 0.1);

struct PhaseGridSpec {
  double p_min = 1e-3;
  double p_max = 0;  // 0 = default per alpha: 12 for alpha == 2, else 10
  double max_step_delta = 1.2;   // rad between unwrap nodes
  double spline_tol = 1e-9;      // interpolation refinement target
  double max_blend_offset = 0.1; // rad; larger mismatch means p_max too small
};

// Exact delta on an adaptive grid, asymptote beyond p_max with a
// continuity offset.  Throws if the offset exceeds max_blend_offset.
PhaseShiftFn make_phase_model(const WallModel& model,
                              const PhaseGridSpec& spec = {});

}  // namespace softwall::wallmodes
