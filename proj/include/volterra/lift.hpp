#pragma once

// Level-1 lifts of Hoelder drivers against a Volterra kernel, iterated
// integrals of smooth drivers by nested product quadrature, and the
// factorial-decay ratio check for the latter.

#include <cstddef>
#include <vector>

#include "volterra/kernel.hpp"
#include "volterra/level.hpp"
#include "volterra/path.hpp"
#include "volterra/sewing.hpp"

namespace volterra {

struct LiftStats {
  std::size_t cells = 0;
  std::size_t nonconverged = 0;  // sub-grid sewing that hit max_level
};

// z^{1,tau}_{ts} for every grid tuple.  Adjacent increments come from
// sub-grid sewing of the left-point germ k(tau,u) x_{vu} when x is
// Smooth, or from the single left-point term when it is Sampled;
// non-adjacent values are filled by additivity (prefix sums), which
// makes level 1 exactly additive by construction.  tau-columns are
// independent and run in parallel; the serial twin is kept for tests.
VolterraLevel lift_level1(const VolterraKernel& k, const DrivingPath& x,
                          const SimplexGrid& g, const SewParams& p = {8, 1e-10},
                          LiftStats* stats = nullptr);
VolterraLevel lift_level1_serial(const VolterraKernel& k, const DrivingPath& x,
                                 const SimplexGrid& g, const SewParams& p = {8, 1e-10},
                                 LiftStats* stats = nullptr);

// Iterated integrals z^{n,tau}_{ts}, n = 1..n_max (n_max <= 4), of a
// continuously differentiable driver, by nested product-integration
// quadrature on a 2^fine_depth uniform mesh of [s,t].
std::vector<Value> smooth_signature(const VolterraKernel& k, const DrivingPath& x,
                                    int n_max, double s, double t, double tau,
                                    int fine_depth = 12);

// Adjacent-cell values of the first two levels of a Smooth driver, by
// per-cell nested product quadrature on 2^sub_depth sub-cells.  This
// is the storage the time stepper consumes: O(N^2) cells instead of
// the O(N^3) full simplex, so it scales to deep grids.
struct CellLevels {
  SimplexGrid grid;
  int d = 1;
  std::vector<Value> z1, z2;  // [cell_offset(iu, ik)], iu < ik

  static std::size_t cell_offset(int iu, int ik)
  {
    return std::size_t(ik) * (ik - 1) / 2 + iu;
  }
  const Value& cell1(int iu, int ik) const { return z1[cell_offset(iu, ik)]; }
  const Value& cell2(int iu, int ik) const { return z2[cell_offset(iu, ik)]; }
};

CellLevels cell_levels(const VolterraKernel& k, const DrivingPath& x,
                       const SimplexGrid& g, int sub_depth = 2);

// Per-level ratios |z^n| / [ (M G(1-g))^n / G(n(1-g)) *
// (tau-s)^{-g} (t-s)^{(n-1)(1-g)+1} ]; M is the C^1 norm of x.
std::vector<double> gamma_bound_check(const std::vector<Value>& values, double M,
                                      double gamma, double s, double t, double tau);

}  // namespace volterra
