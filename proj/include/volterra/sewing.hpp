#pragma once

// The sewing engine: dyadic Riemann-sum refinement of an abstract
// integrand Xi on the simplex, with the per-level deltas recorded so
// the theoretical 2^{-n(beta-1)} decay can be checked empirically.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "volterra/tensor.hpp"

namespace volterra {

struct Integrand {
  // (s, t, tau) -> value; defined for s <= t <= tau, with t == tau
  // allowed whenever the callable is finite there (left-point forms).
  std::function<Value(double, double, double)> eval;
  std::size_t value_size = 1;
  // Claimed exponents of the delta-norm estimate, metadata only.
  double beta = 0.0;
  double kappa = 0.0;
};

struct SewParams {
  int max_level = 14;
  double tol = 1e-8;  // relative to the level-1 magnitude
};

struct SewingResult {
  Value value;
  int levels_used = 0;
  std::vector<double> deltas;  // |I^{n} - I^{n-1}|, n = 1..levels_used
  bool converged = false;
};

// Riemann sums over the dyadic partitions of [s,t] with tau fixed,
// refined until the successive-level delta drops under tol (relative
// to the level-1 magnitude) or max_level is reached.
SewingResult sew(const Integrand& xi, double s, double t, double tau,
                 const SewParams& p = {});

struct DecayFit {
  double slope = std::nan("");  // least-squares slope of log2(delta) vs level
  bool exact = false;           // all deltas vanished (additive integrand)
  bool claim_ok = false;        // slope <= -(beta-1) + 0.15
};

DecayFit check_decay(const SewingResult& r, double beta);

// Admissible sewing exponents for a driver/kernel pair with
// rho = alpha - gamma > 0: the auxiliary exponent eta must satisfy
// 1 - alpha < eta < 1 - gamma, and we take it 80% of the way up, so
// beta = alpha + eta = 1 + 0.8 rho > 1 and kappa = gamma + eta =
// 1 - 0.2 rho < 1.
struct SewExponents {
  double beta = 0.0;
  double kappa = 0.0;
};
SewExponents sewing_decay_exponents(double alpha, double gamma);

// delta_u g_{ts}^tau = g_{ts} - g_{tu} - g_{us}; the failure of
// additivity of a two-lower-parameter function.
template <class G>
Value delta(G&& g, double s, double u, double t, double tau)
{
  if (!(s <= u && u <= t && t <= tau))
    throw std::invalid_argument("delta: need s <= u <= t <= tau");
  Value out = g(s, t, tau);
  sub_inplace(out, g(u, t, tau));
  sub_inplace(out, g(s, u, tau));
  return out;
}

}  // namespace volterra
