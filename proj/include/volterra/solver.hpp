#pragma once

// Time stepping for y^tau_t = y0 + int_0^t k(tau,r) f(y^r_r) dx_r over
// the grid trapezoid {t <= tau}: a second-order one-step scheme built
// from the stored (z1, z2) stack, a first-order diagnostic variant, a
// Picard iteration sharing the same fixed point, and an empirical
// convergence-rate helper.

#include <functional>
#include <vector>

#include "volterra/controlled.hpp"
#include "volterra/level.hpp"
#include "volterra/lift.hpp"

namespace volterra {

enum class Scheme {
  RoughEuler,   // z1 (x) f(y) + z2 (x) f'(y)f(y) per step
  Level1Euler,  // z1 term only (diagnostic)
};

// The stepper only reads adjacent-cell driver values z_{u+1,u}^{tau_k},
// supplied as accessors so both the O(N^3) simplex levels and the
// O(N^2) CellLevels storage plug in.
using CellFn = std::function<Value(int iu, int ik)>;

CellFn cell_accessor(const VolterraLevel& z);    // z.value(iu, iu+1, ik)
CellFn cell_accessor1(const CellLevels& c);
CellFn cell_accessor2(const CellLevels& c);

struct SolveConfig {
  SimplexGrid grid;
  int d = 1;
  CellFn z1cell;
  CellFn z2cell;                  // may be empty for Level1Euler
  VectorField f;                  // R^m -> R^{m x d}, flat [a*d + i]
  Value y0;
  Scheme scheme = Scheme::RoughEuler;
  double rho = 1.0;               // claimed alpha - gamma; RoughEuler needs > 1/3
  double blowup_factor = 1e6;     // abort when |y| > factor*(1 + |y0|)
};

struct Solution {
  int N = 0;
  int m = 0;
  SimplexGrid grid;
  std::vector<Value> y;  // trapezoid, [simplex2_offset(t, tau)]
  bool blew_up = false;
  int blowup_step = -1;

  const Value& at(int t, int tau) const { return y[simplex2_offset(t, tau)]; }
  const Value& diagonal(int t) const { return at(t, t); }
};

// March from t = 0 with y^tau_0 = y0 on every column.  Step u -> u+1
// updates every column tau >= u+1 at once:
//   y^tau_{u+1} = y^tau_u + z1_{u+1,u}^tau . f(y^u_u)
//                        + z2_{u+1,u}^tau . [f'(y^u_u) f(y^u_u)]
// with f evaluated only on the diagonal trace.
Solution solve(const SolveConfig& cfg);

// Same march started at grid index t0 from a given trapezoid column
// (column[j] = y^{tau_j}_{t0} for j >= t0); rows below t0 are left at
// the column values' defaults.  solve() is solve_from at t0 = 0.
Solution solve_from(const SolveConfig& cfg, int t0, const std::vector<Value>& column);

struct PicardResult {
  Solution sol;
  std::vector<double> distances;  // sup-distance between successive iterates
  std::vector<double> factors;    // distances[k] / distances[k-1]
  int iters = 0;
  bool converged = false;
  bool diverged = false;  // factor >= 1 for 3 consecutive iterations
};

// Global Picard iteration: each sweep rebuilds the whole trapezoid
// from the previous iterate's diagonal trace with the same per-cell
// update as solve(), so the two share their fixed point exactly.
PicardResult picard_iterate(const SolveConfig& cfg, int k_iters, double tol = 1e-10);

struct ConvergenceRow {
  int level = 0;
  double error = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double observed_order = 0.0;  // least-squares slope of -log2(err) vs level
  bool exact = false;           // every error below 1e-15
};

// Fits the observed order from per-level errors supplied by the caller
// (typically |diagonal trace - oracle| at the final time).
ConvergenceTable convergence_study(const std::function<double(int)>& error_at_level,
                                   int l_lo, int l_hi);

}  // namespace volterra
