#pragma once

// Time grids on [0,T] and packed index maps for the simplices
// {i <= j} and {i <= j <= k} used by the Delta_2 / Delta_3 storage.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace volterra {

struct SimplexGrid {
  double T = 1.0;                    // horizon
  int N = 0;                         // number of points
  std::vector<double> points;        // strictly increasing, 0 .. T
  std::optional<int> dyadic_depth;   // set iff N == 2^L + 1 uniform

  double mesh() const { return T / double(N - 1); }
};

// Uniform dyadic grid of 2^L + 1 points on [0,T].  1 <= L <= 24.
SimplexGrid make_uniform(double T, int L);

// Halve the mesh of a dyadic grid; existing points are preserved
// bitwise (new midpoints are (a+b)/2).
SimplexGrid refine(const SimplexGrid& g);

// Number of ordered pairs i <= j < N resp. triples i <= j <= k < N.
std::size_t simplex2_size(int N);
std::size_t simplex3_size(int N);

// Flat offsets into packed simplex storage.  Layout is lexicographic in
// (k, j, i): all tuples with a given top index k are contiguous.
inline std::size_t simplex2_offset(int i, int j)
{
  return std::size_t(j) * (j + 1) / 2 + i;
}

inline std::size_t simplex3_offset(int i, int j, int k)
{
  return std::size_t(k) * (k + 1) * (k + 2) / 6 + std::size_t(j) * (j + 1) / 2 + i;
}

// Inverses; round-trip with the offsets is the identity.
std::array<int, 2> simplex2_tuple(std::size_t flat, int N);
std::array<int, 3> simplex3_tuple(std::size_t flat, int N);

}  // namespace volterra
