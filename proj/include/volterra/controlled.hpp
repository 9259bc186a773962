#pragma once

// Controlled two-parameter paths: the pair (y, y') with
//   y_{ts}^tau = z^tau_{ts} * y'^{tau,.}_s + R_{ts}^tau,
// the rough integral of a controlled path against a level-1/level-2
// stack, composition with a smooth map, and the remainder.

#include <functional>

#include "volterra/convolution.hpp"
#include "volterra/level.hpp"
#include "volterra/sewing.hpp"

namespace volterra {

// Grid-sampled controlled path.  y(t,p) is y^{p}_t for grid indices
// t <= p, width yw.  yp(t,p,q) is the Gubinelli derivative y'^{p,q}_t
// for t <= q <= p, width yw*d, flat [b*d + j]: the j slot contracts
// with the driver, so y_{ts} ~ sum_j y'[b*d+j] z1[j] cell by cell.
struct ControlledPath {
  int N = 0;
  int yw = 0;
  const VolterraLevel* base = nullptr;  // controlling level 1
  std::function<Value(int t, int p)> y;
  std::function<Value(int t, int p, int q)> yp;
};

// A smooth map f: R^in -> R^out with jacobian df flat [c*in + b].
struct VectorField {
  int in = 0;
  int out = 0;
  std::function<Value(const Value&)> f;
  std::function<Value(const Value&)> df;
};

// Central-difference jacobian of f at y, flat [c*in + b].
Value numeric_jacobian(const std::function<Value(const Value&)>& f, int out,
                       const Value& y, double h = 1e-5);

// Stock fields on R^m with values in R^{m x d} (flat [a*d + i]).
VectorField zero_field(int m, int d);
VectorField constant_field(const Value& c, int in);           // f == c
VectorField linear_field(const Value& mat, int in, int out);  // f(y) = mat*y
VectorField sin_field(int m, int d);  // f(y)[a*d+i] = sin(y[a])

// Constant path c with zero derivative, controlled by z1.
ControlledPath constant_controlled(const Value& c, const VolterraLevel& z1);

// The level itself as a controlled path: y^tau_t = z1_{t0}^tau with
// identity derivative; its remainder vanishes identically.
ControlledPath level_controlled(const VolterraLevel& z1);

// Rough Volterra integral of yc over [s,t] at upper time tau (grid
// indices).  Germ over a cell [u,v]:
//   sum_{r in [u,v)} y^{r}_u (x) z1_{r+1,r}^tau  +  z2_{vu}^tau * y'_u
// with the second-level term contracting the first z2 slot against the
// derivative slot of y'^{u,u}_u.  Output width yw*d, flat [iy*d + j].
// Refuses when (z1, z2) violate the Chen identity at the quarter
// splits beyond chen_tol (default 100x the sewing tolerance).
SewingResult rough_integral(const VolterraLevel& z1, const VolterraLevel& z2,
                            const ControlledPath& yc, int is, int it, int ik,
                            const SewParams& p = {}, double chen_tol = -1.0);

// The integral as a controlled path: y(t,p) = rough integral over
// [0,t] at tau = p; derivative w'^{p,q}_t = yc.y(t,p) embedded along
// the driver slot.  Eager in y (simplex2 sweep), lazy in yp.
ControlledPath integral_controlled(const VolterraLevel& z1, const VolterraLevel& z2,
                                   const ControlledPath& yc, const SewParams& p = {});

// Composition with f (f.in == yc.yw): y(t,p) = f(yc.y(t,p)),
// yp(t,p,q) = f'(yc.y(t,q)) . yc.yp(t,p,q).
ControlledPath compose(const VectorField& f, const ControlledPath& yc);

// R^tau_{ts} = y^tau_{ts} - sum_{l in [s,t)} y'^{tau,l}_s . z1 cell l.
Value remainder(const ControlledPath& yc, int is, int it, int ik);

}  // namespace volterra
