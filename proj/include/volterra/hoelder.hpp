#pragma once

// Estimators of the two-exponent Hoelder semi-norms: grid sups of the
// defining ratios, with the sup over the weight exponent eta replaced
// by a max over a fixed probe set.

#include <array>
#include <functional>
#include <vector>

#include "volterra/grid.hpp"
#include "volterra/level.hpp"
#include "volterra/sewing.hpp"

namespace volterra {

struct HoelderPair {
  double alpha = 0.5;  // driver exponent, in (0,1]
  double gamma = 0.0;  // kernel singularity order, in [0,1)
  double rho() const { return alpha - gamma; }
};

struct NormStat {
  double value = 0.0;
  std::array<double, 5> argmax = {0, 0, 0, 0, 0};  // tuple times, unused slots 0
  double argmax_eta = 0.0;
  std::size_t probes = 0;
  std::size_t skipped = 0;  // degenerate denominators, excluded not regularized
};

struct HoelderReport {
  NormStat norm1;   // sup |z_{ts}^tau| / ((tau-t)^{-g}(t-s)^a ^ (tau-s)^{a-g})
  NormStat norm2;   // sup |z_s^{tau tau'}| / ((tau-tau')^e (tau'-s)^{-e} ^ s^{a-g})
  NormStat norm12;  // sup over the four-point mixed ratio
  std::vector<double> etas;
};

// Semi-norms of a stored level.  The one-lower-variable object probed
// by norm2 is the restriction z_{s0}^{tau}; tuples with s = 0 are
// excluded from norm2 (the ratio weight |s|^{a-g} is not defined
// there) and counted as skipped.
HoelderReport estimate_norms(const VolterraLevel& z, const HoelderPair& p,
                             const std::vector<double>& etas);

// delta-norms of an abstract integrand: norm1 over (s,m,t,tau) and
// norm12 over (s,m,t,tau',tau); norm2 is unused and left zero.
// Requires beta > 1 and kappa in (0,1).
HoelderReport estimate_sewing_norms(const std::function<Value(double, double, double)>& xi,
                                    std::size_t width, double beta, double kappa,
                                    const SimplexGrid& g, const std::vector<double>& etas);

}  // namespace volterra
