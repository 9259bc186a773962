#include "volterra/hoelder.hpp"

#include <cmath>
#include <stdexcept>

namespace volterra {

namespace {

void probe(NormStat& st, double lhs, double denom,
           std::initializer_list<double> tuple, double eta)
{
  if (!(denom > 0.0)) {
    ++st.skipped;
    return;
  }
  ++st.probes;
  if (!std::isfinite(denom)) return;  // infinite weight: ratio is 0
  const double r = lhs / denom;
  if (r > st.value) {
    st.value = r;
    st.argmax = {0, 0, 0, 0, 0};
    int c = 0;
    for (double v : tuple) st.argmax[c++] = v;
    st.argmax_eta = eta;
  }
}

// (tau-t)^{-g}(t-s)^a ^ (tau-s)^{a-g}; the first branch is +inf on the
// diagonal tau == t for g > 0, so the min falls back to the second.
double min_weight(double s, double t, double tau, double a, double g)
{
  const double b1 = std::pow(tau - t, -g) * std::pow(t - s, a);
  const double b2 = std::pow(tau - s, a - g);
  return std::min(b1, b2);
}

// Indices to sweep: all of them on small grids, a uniform stride
// (always including the last point) on large ones, so the Delta_5
// sweeps stay desk-scale.
std::vector<int> sweep_indices(int N, int budget)
{
  std::vector<int> idx;
  const int stride = std::max(1, (N - 1 + budget - 1) / budget);
  for (int i = 0; i < N; i += stride) idx.push_back(i);
  if (idx.back() != N - 1) idx.push_back(N - 1);
  return idx;
}

}  // namespace

HoelderReport estimate_norms(const VolterraLevel& z, const HoelderPair& p,
                             const std::vector<double>& etas)
{
  if (z.grid.N < 2) throw std::invalid_argument("estimate_norms: empty grid");
  if (etas.empty()) throw std::invalid_argument("estimate_norms: empty probe set");
  const auto& pt = z.grid.points;
  const int N = z.grid.N;
  const double a = p.alpha, g = p.gamma;

  HoelderReport rep;
  rep.etas = etas;

  // norm1 over (s,t,tau), strict in the lower pair.
  for (int k = 0; k < N; ++k)
    for (int j = 0; j <= k; ++j)
      for (int i = 0; i < j; ++i) {
        const double lhs = norm_inf(z.value(i, j, k));
        probe(rep.norm1, lhs, min_weight(pt[i], pt[j], pt[k], a, g),
              {pt[i], pt[j], pt[k]}, 0.0);
      }

  // norm2 over (s,tau',tau) on the restriction z_{s0}; s = 0 excluded.
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < k; ++j)
      for (int i = 1; i <= j; ++i) {
        const double lhs = dist_inf(z.value(0, i, j), z.value(0, i, k));
        const double b2 = std::pow(pt[i], a - g);
        for (double eta : etas) {
          const double b1 = std::pow(pt[k] - pt[j], eta) * std::pow(pt[j] - pt[i], -eta);
          probe(rep.norm2, lhs, std::min(b1, b2), {pt[i], pt[j], pt[k]}, eta);
        }
      }
  rep.norm2.skipped += std::size_t(N);  // the excluded s = 0 column, one note per tau

  // norm12 over (s,t,tau',tau).
  for (int k = 0; k < N; ++k)
    for (int l = 0; l < k; ++l)
      for (int j = 1; j <= l; ++j)
        for (int i = 0; i < j; ++i) {
          const double lhs = dist_inf(z.value(i, j, l), z.value(i, j, k));
          const double base = min_weight(pt[i], pt[j], pt[l], a, g);
          for (double eta : etas) {
            const double w = std::pow(pt[k] - pt[l], eta) * std::pow(pt[l] - pt[j], -eta) * base;
            probe(rep.norm12, lhs, w, {pt[i], pt[j], pt[l], pt[k]}, eta);
          }
        }
  return rep;
}

HoelderReport estimate_sewing_norms(const std::function<Value(double, double, double)>& xi,
                                    std::size_t width, double beta, double kappa,
                                    const SimplexGrid& g, const std::vector<double>& etas)
{
  if (!(beta > 1.0)) throw std::invalid_argument("estimate_sewing_norms: need beta > 1");
  if (!(kappa > 0.0 && kappa < 1.0))
    throw std::invalid_argument("estimate_sewing_norms: need kappa in (0,1)");
  if (etas.empty()) throw std::invalid_argument("estimate_sewing_norms: empty probe set");

  const auto idx = sweep_indices(g.N, 24);
  const auto& pt = g.points;
  HoelderReport rep;
  rep.etas = etas;

  auto dxi = [&](double s, double m, double t, double tau) {
    Value v = xi(s, t, tau);
    sub_inplace(v, xi(m, t, tau));
    sub_inplace(v, xi(s, m, tau));
    (void)width;
    return v;
  };

  // ||delta Xi||_{(beta,kappa),1} over (s,m,t,tau).
  for (int k : idx)
    for (int j : idx) {
      if (j > k) continue;
      for (int m : idx) {
        if (m > j) continue;
        for (int i : idx) {
          if (i >= m) continue;
          if (j == m) continue;  // degenerate split, delta = 0 and weight 0
          const double lhs = norm_inf(dxi(pt[i], pt[m], pt[j], pt[k]));
          probe(rep.norm1, lhs, min_weight(pt[i], pt[j], pt[k], beta, kappa),
                {pt[i], pt[m], pt[j], pt[k]}, 0.0);
        }
      }
    }

  // ||delta Xi||_{(beta,kappa),1,2} over (s,m,t,tau',tau).
  for (int k : idx)
    for (int l : idx) {
      if (l >= k) continue;
      for (int j : idx) {
        if (j > l || j == 0) continue;
        for (int m : idx) {
          if (m >= j) continue;
          for (int i : idx) {
            if (i >= m) continue;
            Value v = dxi(pt[i], pt[m], pt[j], pt[k]);
            sub_inplace(v, dxi(pt[i], pt[m], pt[j], pt[l]));
            const double lhs = norm_inf(v);
            const double base = min_weight(pt[i], pt[j], pt[l], beta, kappa);
            for (double eta : etas) {
              const double w =
                  std::pow(pt[k] - pt[l], eta) * std::pow(pt[l] - pt[j], -eta) * base;
              probe(rep.norm12, lhs, w, {pt[i], pt[m], pt[j], pt[l]}, eta);
            }
          }
        }
      }
    }
  return rep;
}

}  // namespace volterra
