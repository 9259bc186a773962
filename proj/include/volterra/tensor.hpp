#pragma once

// Small dense-value helpers shared by every module.  Values of the
// toolkit (levels z^{n}, germ evaluations, solver states) live in
// flat std::vector<double> of size d^n; index convention for level-2
// objects is flat(i,j) = i*d + j with i the inner integration index
// and j the outer one.

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace volterra {

using Value = std::vector<double>;

inline Value zeros(std::size_t n) { return Value(n, 0.0); }

inline void add_inplace(Value& a, const Value& b)
{
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

inline void sub_inplace(Value& a, const Value& b)
{
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
}

inline void axpy_inplace(Value& a, double c, const Value& b)
{
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
}

inline void scale_inplace(Value& a, double c)
{
  for (double& x : a) x *= c;
}

inline Value add(Value a, const Value& b) { add_inplace(a, b); return a; }
inline Value sub(Value a, const Value& b) { sub_inplace(a, b); return a; }
inline Value scaled(Value a, double c) { scale_inplace(a, c); return a; }

// Tensor product; out[ia*b.size() + ib] = a[ia]*b[ib].  For the level-2
// convention z^{ij} (i inner, j outer) the *inner* factor goes first.
inline Value outer(const Value& a, const Value& b)
{
  Value out(a.size() * b.size());
  for (std::size_t ia = 0; ia < a.size(); ++ia)
    for (std::size_t ib = 0; ib < b.size(); ++ib)
      out[ia * b.size() + ib] = a[ia] * b[ib];
  return out;
}

inline double norm_inf(const Value& a)
{
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

inline double dist_inf(const Value& a, const Value& b)
{
  assert(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Pairwise (fixed-tree) summation over a precomputed table of samples.
// Used for Monte-Carlo reductions so the result does not depend on
// thread scheduling.
inline double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi)
{
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

inline double pairwise_sum(const std::vector<double>& v)
{
  return v.empty() ? 0.0 : pairwise_sum(v, 0, v.size());
}

}  // namespace volterra
