#pragma once

// Grid-sampled level-n objects z^{n,tau_k}_{t_j t_i} stored densely on
// the packed simplex {i <= j <= k} with d^n components per tuple.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "volterra/grid.hpp"
#include "volterra/tensor.hpp"

namespace volterra {

enum class Provenance { Sewn, Quadrature, DoubleSum, Extended };

struct VolterraLevel {
  int level = 1;
  int dim = 1;
  SimplexGrid grid;
  Provenance provenance = Provenance::Sewn;
  std::size_t comp = 1;       // dim^level
  std::vector<double> data;   // simplex3_size(N) * comp

  double* at(int i, int j, int k)
  {
    return data.data() + simplex3_offset(i, j, k) * comp;
  }
  const double* at(int i, int j, int k) const
  {
    return data.data() + simplex3_offset(i, j, k) * comp;
  }
  Value value(int i, int j, int k) const
  {
    if (!(0 <= i && i <= j && j <= k && k < grid.N))
      throw std::out_of_range("VolterraLevel::value: tuple outside the simplex");
    const double* p = at(i, j, k);
    return Value(p, p + comp);
  }
  void set(int i, int j, int k, const Value& v)
  {
    if (!(0 <= i && i <= j && j <= k && k < grid.N))
      throw std::out_of_range("VolterraLevel::set: tuple outside the simplex");
    if (v.size() != comp) throw std::invalid_argument("VolterraLevel::set: wrong width");
    double* p = at(i, j, k);
    for (std::size_t c = 0; c < comp; ++c) p[c] = v[c];
  }
};

inline VolterraLevel make_level(int level, int dim, const SimplexGrid& g, Provenance prov)
{
  if (level < 1) throw std::invalid_argument("make_level: level must be >= 1");
  if (dim < 1) throw std::invalid_argument("make_level: dimension must be >= 1");
  // Dense simplex storage is desk-scale only; levels >= 2 are capped at
  // depth 8 (N = 257) and d <= 3.
  if (level >= 2) {
    if (g.N > 257)
      throw std::invalid_argument("make_level: level >= 2 tensors are capped at 2^8+1 grid points");
    if (dim > 3)
      throw std::invalid_argument("make_level: level >= 2 tensors are capped at d <= 3");
  }
  VolterraLevel z;
  z.level = level;
  z.dim = dim;
  z.grid = g;
  z.provenance = prov;
  z.comp = 1;
  for (int n = 0; n < level; ++n) z.comp *= std::size_t(dim);
  z.data.assign(simplex3_size(g.N) * z.comp, 0.0);
  return z;
}

}  // namespace volterra
