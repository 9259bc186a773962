#pragma once

// The convolution product: first-level convolutions (continuous and
// grid-resolution discrete), second-level convolutions against
// two-upper-variable functions, Chen-identity residuals, and the
// extension of a level stack to the next level.

#include <functional>
#include <vector>

#include "volterra/level.hpp"
#include "volterra/sewing.hpp"

namespace volterra {

// z as a function of a lower pair and the upper variable: z_{r'r}^tau.
using PairFn = std::function<Value(double r, double rp, double tau)>;
// y as a function of its upper argument (base points fixed by caller).
using UpperFn = std::function<Value(double r)>;
// two-upper-argument function y^{r1,r2}, r1 <= r2.
using UpperFn2 = std::function<Value(double r1, double r2)>;

// Riemann-sum refinement along nested *grid* partitions of the index
// range [iu, it]: the level-n partition boundaries are the grid points
// nearest to the dyadic splits, so stored levels are never evaluated
// off-grid.  Stops at full grid resolution or when the successive
// delta drops under tol.
SewingResult sew_grid(const std::function<Value(int, int)>& germ, std::size_t width,
                      int iu, int it, const SewParams& p = {});

// z^tau_{tu} * y^._{us}: sewing of the germ y(r) (x) z(r, r', tau) over
// [u, t].  Output width yw*zw, flat [iy*zw + iz].
SewingResult conv1(const PairFn& z, std::size_t zw, const UpperFn& y, std::size_t yw,
                   double u, double t, double tau, const SewParams& p = {});

// Left-point discrete convolution at grid resolution: sum over cells
// l in [iu, it) of y(l) (x) z(l -> l+1).
Value conv1_discrete(const std::function<Value(int)>& zcell,
                     const std::function<Value(int)>& ynode,
                     int iu, int it, std::size_t zw, std::size_t yw);

// max-norm of z2_{ts} - z2_{tu} - conv - z2_{us} with conv supplied by
// the caller (so the Brownian module can plug in its fine-grid sum).
double chen_residual_with(const VolterraLevel& z2, int is, int iu, int it, int ik,
                          const Value& conv);

// Same, with conv evaluated as the grid-resolution discrete
// convolution of the stored level 1 against itself.
double chen_residual(const VolterraLevel& z1, const VolterraLevel& z2,
                     int is, int iu, int it, int ik);

// Second-level convolution z2_{ts}^tau * y^{.1,.2}_s.  The germ is
// z2_{vu} (x) y(u,u) plus delta_u z2_{vs} (x) y(u,u) -- both read from
// the stored level 2 -- plus the nested first-level correction against
// y - y(u,u).  Refuses when the stored pair violates the Chen identity
// beyond chen_tol (default 100x the sewing tolerance).
// Output width yw*d*d, flat [iy*d*d + i*d + j].
Value conv2(const VolterraLevel& z2, const VolterraLevel& z1, const UpperFn2& y,
            std::size_t yw, int is, int it, int ik, const SewParams& p = {},
            double chen_tol = -1.0);

// Extension of the given stack (levels 1..m-1) to level m (m = 2 or 3,
// the rho > 1/3 regime).  The per-tuple germ is the mixed sum
// sum_i z^{m-i}_{vu} (x) z^i_{us} with the stored values; when a
// continuous level-1 evaluator is supplied the sewing refines below
// the grid.  The precondition m*rho > 1 is waived for certified C^1
// drivers, whose extension is a plain Riemann integral.
VolterraLevel extend(const std::vector<const VolterraLevel*>& levels, int m, double rho,
                     const SewParams& p = {}, const PairFn& z1_continuous = {},
                     bool c1_driver = false);

// Deep single-tuple extension to level 2 from a continuous level-1
// evaluator (used for cross-validation against nested quadrature).
SewingResult extend2_at(const PairFn& z1c, int d, double s, double t, double tau,
                        const SewParams& p = {16, 1e-10});

}  // namespace volterra
