#pragma once

// Volterra kernels of order -gamma and the empirical verifier of the
// five difference inequalities they are required to satisfy, plus the
// interpolated mixed bound.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "volterra/grid.hpp"

namespace volterra {

enum class KernelKind { Unit, Fractional, TemperedFractional };

struct VolterraKernel {
  KernelKind kind = KernelKind::Unit;
  double gamma = 0.0;   // singularity order, in [0,1)
  double lambda = 0.0;  // tempering rate (TemperedFractional only)

  // k(tau, r) for 0 <= r < tau.  Touching the diagonal r == tau is a
  // hard domain error: every integrand in the toolkit is left-point
  // evaluated precisely so that this never happens.
  double eval(double tau, double r) const;
};

VolterraKernel unit_kernel();
VolterraKernel fractional_kernel(double gamma);
VolterraKernel tempered_fractional_kernel(double gamma, double lambda);

std::string kernel_kind_name(KernelKind k);

// One row of the verification report: the empirical constant
// max |lhs| / rhs over all probed tuples and exponents, where it was
// attained, and how many probes were skipped because the rhs vanished.
struct HIneqStat {
  std::string name;
  double constant = 0.0;
  std::size_t probes = 0;
  std::size_t skipped = 0;
  std::array<double, 4> argmax_tuple = {0, 0, 0, 0};  // (s, r, q, tau)
  double argmax_eta = 0.0;
  double argmax_beta = 0.0;
};

struct HReport {
  std::vector<HIneqStat> rows;  // boundedness, diff-upper, diff-lower,
                                // double-diff-beta, double-diff-eta, interpolated
  const HIneqStat& row(const std::string& name) const;
};

// Sweep all grid tuples (s,r,q,tau) with s<=r<=q<=tau and the probe
// exponent sets, reporting per-inequality empirical constants.  The
// parallel version reduces deterministically (per-column accumulators
// merged in index order); the serial twin is kept for testing and
// produces bit-identical output.
HReport verify_h(const VolterraKernel& k, const SimplexGrid& g,
                 const std::vector<double>& etas, const std::vector<double>& betas);
HReport verify_h_serial(const VolterraKernel& k, const SimplexGrid& g,
                        const std::vector<double>& etas, const std::vector<double>& betas);

// Default probe exponents {0, 1/4, 1/2, 3/4, 1}.
const std::vector<double>& default_probe_exponents();

}  // namespace volterra
