#pragma once

// Monte-Carlo Brownian Volterra lift: left-point Ito sums on a fine
// dyadic grid, aggregated to coarse levels so the discrete Chen
// identity holds exactly, plus statistical checks (isometry, mean,
// cross-correlation, moment-bound shape).

#include <cstdint>
#include <string>
#include <vector>

#include "volterra/kernel.hpp"
#include "volterra/level.hpp"

namespace volterra {

struct BrownianBatch {
  std::uint64_t seed = 42;
  int n_paths = 1;
  int d = 1;
  int fine_depth = 10;  // 2^fine_depth cells on [0, T]
  double T = 1.0;
};

struct PathLevels {
  VolterraLevel z1;
  VolterraLevel z2;
};

// Full (z1, z2) levels of one path on the coarse grid g, which must be
// the uniform dyadic grid on [0, T] at a depth <= fine_depth.  Refuses
// gamma >= 1/4 (second-level L^2 theory unavailable there).
PathLevels sample_lift(const BrownianBatch& b, int path, const VolterraKernel& k,
                       const SimplexGrid& g);

struct TupleSpec {
  int is = 0, it = 0, ik = 0;  // grid indices, is <= it <= ik
};

// Per-tuple samples across the whole batch: z1[tuple][path] (width d)
// and z2[tuple][path] (width d*d).
struct TupleSamples {
  std::vector<TupleSpec> tuples;
  int d = 1;
  std::vector<std::vector<Value>> z1;
  std::vector<std::vector<Value>> z2;
};

TupleSamples sample_tuple_values(const BrownianBatch& b, const VolterraKernel& k,
                                 const SimplexGrid& g, const std::vector<TupleSpec>& tuples);

// Max relative residual of the discrete Chen identity over every grid
// quadruple s <= u <= t <= tau and the first n_check paths, with the
// right-hand convolution evaluated as the fine-grid left-point sum
// against the fine-time first level.
double chen_exact_check(const BrownianBatch& b, const VolterraKernel& k,
                        const SimplexGrid& g, int n_check);

struct MCStat {
  std::string name;
  double mean = 0.0;
  double variance = 0.0;
  std::size_t n = 0;
  double target = 0.0;   // the value the estimator is compared against
  double z_score = 0.0;
};

// Ito isometry: per tuple and component, sample variance of z1 against
// int_s^t k(tau,r)^2 dr (closed form where available, quadrature for
// the tempered kernel).
std::vector<MCStat> isometry_check(const TupleSamples& s, const VolterraKernel& k,
                                   const SimplexGrid& g);

// Sample mean of each z1 component against 0.
std::vector<MCStat> mean_zero_check(const TupleSamples& s, const VolterraKernel& k,
                                    const SimplexGrid& g);

// Sample correlation of distinct z1 components against 0 (d >= 2).
std::vector<MCStat> cross_correlation_check(const TupleSamples& s);

struct LpBoundResult {
  double C = 0.0;                      // fitted on the training tuples
  std::vector<double> train_ratios;    // moment / weight, training set
  std::vector<double> heldout_ratios;  // moment / (C * weight), held out
  double max_heldout = 0.0;
  bool ok = false;  // all held-out ratios <= 1
};

// Sample E[|z2|^p] against C * [(tau-t)^{-g}(t-s)^{1-g} ^ (tau-s)^{1-2g}]^p
// with C fitted on the first n_train tuples and asserted on the rest.
LpBoundResult lp_bound_check(const TupleSamples& s, int p, double gamma,
                             const SimplexGrid& g, int n_train);

}  // namespace volterra
