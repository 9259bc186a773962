#include "volterra/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace volterra {

SimplexGrid make_uniform(double T, int L)
{
  if (!(T > 0.0)) throw std::invalid_argument("make_uniform: horizon T must be positive");
  if (L < 1 || L > 24) throw std::invalid_argument("make_uniform: depth L must be in [1,24]");
  SimplexGrid g;
  g.T = T;
  g.N = (1 << L) + 1;
  g.points.resize(g.N);
  const double h = T / double(g.N - 1);
  for (int i = 0; i < g.N; ++i) g.points[i] = double(i) * h;
  g.points.front() = 0.0;
  g.points.back() = T;
  g.dyadic_depth = L;
  return g;
}

SimplexGrid refine(const SimplexGrid& g)
{
  if (!g.dyadic_depth) throw std::invalid_argument("refine: grid is not dyadic");
  SimplexGrid out;
  out.T = g.T;
  out.N = 2 * g.N - 1;
  out.points.resize(out.N);
  for (int i = 0; i + 1 < g.N; ++i) {
    out.points[2 * i] = g.points[i];
    out.points[2 * i + 1] = (g.points[i] + g.points[i + 1]) / 2.0;
  }
  out.points.back() = g.points.back();
  out.dyadic_depth = *g.dyadic_depth + 1;
  return out;
}

std::size_t simplex2_size(int N)
{
  if (N < 1) throw std::invalid_argument("simplex2_size: need N >= 1");
  return std::size_t(N) * (N + 1) / 2;
}

std::size_t simplex3_size(int N)
{
  if (N < 1) throw std::invalid_argument("simplex3_size: need N >= 1");
  return std::size_t(N) * (N + 1) * (N + 2) / 6;
}

std::array<int, 2> simplex2_tuple(std::size_t flat, int N)
{
  if (flat >= simplex2_size(N)) throw std::out_of_range("simplex2_tuple: flat offset out of range");
  // j is the largest index with j(j+1)/2 <= flat.
  int j = int((std::sqrt(8.0 * double(flat) + 1.0) - 1.0) / 2.0);
  while (std::size_t(j + 1) * (j + 2) / 2 <= flat) ++j;
  while (std::size_t(j) * (j + 1) / 2 > flat) --j;
  int i = int(flat - std::size_t(j) * (j + 1) / 2);
  return {i, j};
}

std::array<int, 3> simplex3_tuple(std::size_t flat, int N)
{
  if (flat >= simplex3_size(N)) throw std::out_of_range("simplex3_tuple: flat offset out of range");
  int k = int(std::cbrt(6.0 * double(flat)));
  while (std::size_t(k + 1) * (k + 2) * (k + 3) / 6 <= flat) ++k;
  while (std::size_t(k) * (k + 1) * (k + 2) / 6 > flat) --k;
  std::size_t rem = flat - std::size_t(k) * (k + 1) * (k + 2) / 6;
  auto [i, j] = simplex2_tuple(rem, k + 1);
  return {i, j, k};
}

}  // namespace volterra
