#pragma once

// Driving paths x : [0,T] -> R^d.  A Smooth path carries closed-form
// value and derivative rules (evaluable between grid points, which is
// what allows sub-grid sewing refinement); a Sampled path only knows
// its grid values.

#include <functional>
#include <stdexcept>
#include <vector>

#include "volterra/grid.hpp"
#include "volterra/tensor.hpp"

namespace volterra {

enum class PathKind { Smooth, Sampled };

struct DrivingPath {
  int d = 1;
  PathKind kind = PathKind::Sampled;
  double alpha = 1.0;  // claimed Hoelder exponent of the driver
  std::function<Value(double)> rule;        // Smooth only: x(t)
  std::function<Value(double)> derivative;  // Smooth only: x'(t)
  std::vector<Value> samples;               // values at grid points

  Value at(double t) const
  {
    if (kind != PathKind::Smooth)
      throw std::logic_error("DrivingPath::at: sampled path has no off-grid values");
    return rule(t);
  }
  Value at_index(int i) const { return samples.at(i); }
};

// Smooth path from closed-form rules, sampled on g.
DrivingPath make_smooth_path(int d, std::function<Value(double)> rule,
                             std::function<Value(double)> derivative,
                             const SimplexGrid& g, double alpha = 1.0);

DrivingPath make_sampled_path(std::vector<Value> samples, double alpha);

// Stock scalar drivers used throughout the tests and the CLI.
DrivingPath linear_path(const SimplexGrid& g);        // x_t = t
DrivingPath sine_path(const SimplexGrid& g);          // x_t = sin t

// Grid max of |x| + |x'| (the computable surrogate of the C^1 norm).
double c1_norm(const DrivingPath& x, const SimplexGrid& g);

}  // namespace volterra
