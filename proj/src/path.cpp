#include "volterra/path.hpp"

#include <cmath>

namespace volterra {

DrivingPath make_smooth_path(int d, std::function<Value(double)> rule,
                             std::function<Value(double)> derivative,
                             const SimplexGrid& g, double alpha)
{
  if (d < 1) throw std::invalid_argument("make_smooth_path: dimension must be >= 1");
  DrivingPath x;
  x.d = d;
  x.kind = PathKind::Smooth;
  x.alpha = alpha;
  x.rule = std::move(rule);
  x.derivative = std::move(derivative);
  x.samples.reserve(g.N);
  for (int i = 0; i < g.N; ++i) x.samples.push_back(x.rule(g.points[i]));
  return x;
}

DrivingPath make_sampled_path(std::vector<Value> samples, double alpha)
{
  if (samples.empty()) throw std::invalid_argument("make_sampled_path: no samples");
  DrivingPath x;
  x.d = int(samples.front().size());
  x.kind = PathKind::Sampled;
  x.alpha = alpha;
  x.samples = std::move(samples);
  return x;
}

DrivingPath linear_path(const SimplexGrid& g)
{
  return make_smooth_path(
      1, [](double t) { return Value{t}; }, [](double) { return Value{1.0}; }, g, 1.0);
}

DrivingPath sine_path(const SimplexGrid& g)
{
  return make_smooth_path(
      1, [](double t) { return Value{std::sin(t)}; },
      [](double t) { return Value{std::cos(t)}; }, g, 1.0);
}

double c1_norm(const DrivingPath& x, const SimplexGrid& g)
{
  double m = 0.0;
  for (int i = 0; i < g.N; ++i) {
    double v = norm_inf(x.samples.at(i));
    if (x.kind == PathKind::Smooth) v += norm_inf(x.derivative(g.points[i]));
    m = std::max(m, v);
  }
  return m;
}

}  // namespace volterra
