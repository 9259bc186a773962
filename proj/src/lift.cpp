#include "volterra/lift.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "volterra/quadrature.hpp"

namespace volterra {

namespace {

// One tau-column: adjacent increments, then prefix sums into storage.
void lift_column(const VolterraKernel& k, const DrivingPath& x, const SimplexGrid& g,
                 const SewParams& p, int kc, VolterraLevel& out,
                 std::atomic<std::size_t>* nonconv)
{
  const int d = x.d;
  const double tau = g.points[kc];
  // Prefix P[j] = z^{1,tau}_{t_j, 0}.
  std::vector<Value> prefix(kc + 1, zeros(d));
  for (int j = 0; j < kc; ++j) {
    Value a(d);
    if (x.kind == PathKind::Smooth) {
      Integrand xi;
      xi.value_size = d;
      xi.eval = [&](double u, double v, double tt) {
        Value dx = sub(x.at(v), x.at(u));
        scale_inplace(dx, k.eval(tt, u));
        return dx;
      };
      SewingResult r = sew(xi, g.points[j], g.points[j + 1], tau, p);
      if (!r.converged && nonconv) ++*nonconv;
      a = std::move(r.value);
    } else {
      a = sub(x.at_index(j + 1), x.at_index(j));
      scale_inplace(a, k.eval(tau, g.points[j]));
    }
    prefix[j + 1] = add(prefix[j], a);
  }
  for (int j = 0; j <= kc; ++j)
    for (int i = 0; i <= j; ++i) {
      double* dst = out.at(i, j, kc);
      for (int c = 0; c < d; ++c) dst[c] = prefix[j][c] - prefix[i][c];
    }
}

VolterraLevel lift_impl(const VolterraKernel& k, const DrivingPath& x, const SimplexGrid& g,
                        const SewParams& p, LiftStats* stats, bool parallel)
{
  if (!(x.alpha - k.gamma > 0.0))
    throw std::invalid_argument("lift_level1: need claimed rho = alpha - gamma > 0");
  VolterraLevel out = make_level(1, x.d, g, Provenance::Sewn);
  std::atomic<std::size_t> nonconv{0};
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int kc = 0; kc < g.N; ++kc) lift_column(k, x, g, p, kc, out, &nonconv);
  } else {
    for (int kc = 0; kc < g.N; ++kc) lift_column(k, x, g, p, kc, out, &nonconv);
  }
  if (stats) {
    stats->cells = simplex2_size(g.N) - g.N;  // strictly increasing adjacent spans
    stats->nonconverged = nonconv.load();
  }
  return out;
}

}  // namespace

VolterraLevel lift_level1(const VolterraKernel& k, const DrivingPath& x,
                          const SimplexGrid& g, const SewParams& p, LiftStats* stats)
{
  return lift_impl(k, x, g, p, stats, true);
}

VolterraLevel lift_level1_serial(const VolterraKernel& k, const DrivingPath& x,
                                 const SimplexGrid& g, const SewParams& p, LiftStats* stats)
{
  return lift_impl(k, x, g, p, stats, false);
}

std::vector<Value> smooth_signature(const VolterraKernel& k, const DrivingPath& x,
                                    int n_max, double s, double t, double tau,
                                    int fine_depth)
{
  if (x.kind != PathKind::Smooth || !x.derivative)
    throw std::invalid_argument("smooth_signature: needs a Smooth driver with a derivative rule");
  if (n_max < 1 || n_max > 4)
    throw std::invalid_argument("smooth_signature: n_max must be in 1..4 (cost)");
  if (!(s < t && t <= tau)) throw std::invalid_argument("smooth_signature: need s < t <= tau");

  const int d = x.d;
  const int F = 1 << fine_depth;
  const double h = (t - s) / double(F);
  ProductQuad pq(k, s, h, F);

  // xdot at the fine nodes.
  std::vector<double> xdot(std::size_t(F + 1) * d);
  for (int i = 0; i <= F; ++i) {
    Value v = x.derivative(pq.node(i));
    for (int c = 0; c < d; ++c) xdot[std::size_t(i) * d + c] = v[c];
  }

  // Q_m(u) = int_s^u k(u,r) [Q_{m-1}(r) (x) xdot(r)] dr with Q_0 = 1;
  // the level-n value is the same integral taken to tau over [s,t].
  std::vector<Value> out;
  std::vector<double> q_prev(std::size_t(F + 1), 1.0);  // width 1
  std::size_t w_prev = 1;
  for (int n = 1; n <= n_max; ++n) {
    const std::size_t w = w_prev * std::size_t(d);
    std::vector<double> g_nodes(std::size_t(F + 1) * w);
    for (int i = 0; i <= F; ++i)
      for (std::size_t a = 0; a < w_prev; ++a)
        for (int c = 0; c < d; ++c)
          g_nodes[std::size_t(i) * w + a * d + c] =
              q_prev[std::size_t(i) * w_prev + a] * xdot[std::size_t(i) * d + c];
    out.push_back(pq.integral_at(tau, g_nodes, w));
    if (n < n_max) {
      q_prev = pq.integrate_to_nodes(g_nodes, w);
      w_prev = w;
    }
  }
  return out;
}

CellLevels cell_levels(const VolterraKernel& k, const DrivingPath& x,
                       const SimplexGrid& g, int sub_depth)
{
  if (x.kind != PathKind::Smooth || !x.derivative)
    throw std::invalid_argument("cell_levels: needs a Smooth driver with a derivative rule");
  if (sub_depth < 0 || sub_depth > 8)
    throw std::invalid_argument("cell_levels: sub_depth must be in 0..8");
  const int d = x.d;
  const int S = 1 << sub_depth;
  CellLevels cl;
  cl.grid = g;
  cl.d = d;
  const std::size_t cells = std::size_t(g.N) * (g.N - 1) / 2;
  cl.z1.resize(cells);
  cl.z2.resize(cells);

#pragma omp parallel for schedule(dynamic)
  for (int iu = 0; iu < g.N - 1; ++iu) {
    const double u = g.points[iu];
    const double h = (g.points[iu + 1] - u) / double(S);
    ProductQuad pq(k, u, h, S);
    // xdot at the sub-nodes; the level-2 integrand reuses the level-1
    // node integrals, so each row costs O(S^2) once plus O(S) per tau.
    std::vector<double> xdot(std::size_t(S + 1) * d);
    for (int i = 0; i <= S; ++i) {
      Value v = x.derivative(pq.node(i));
      for (int c = 0; c < d; ++c) xdot[std::size_t(i) * d + c] = v[c];
    }
    const std::vector<double> q1 = pq.integrate_to_nodes_serial(xdot, d);
    std::vector<double> g2(std::size_t(S + 1) * d * d);
    for (int i = 0; i <= S; ++i)
      for (int a = 0; a < d; ++a)
        for (int c = 0; c < d; ++c)
          g2[(std::size_t(i) * d + a) * d + c] =
              q1[std::size_t(i) * d + a] * xdot[std::size_t(i) * d + c];
    for (int ik = iu + 1; ik < g.N; ++ik) {
      const double tau = g.points[ik];
      cl.z1[CellLevels::cell_offset(iu, ik)] = pq.integral_at(tau, xdot, d);
      cl.z2[CellLevels::cell_offset(iu, ik)] = pq.integral_at(tau, g2, std::size_t(d) * d);
    }
  }
  return cl;
}

std::vector<double> gamma_bound_check(const std::vector<Value>& values, double M,
                                      double gamma, double s, double t, double tau)
{
  std::vector<double> ratios;
  const double g1 = std::tgamma(1.0 - gamma);
  for (std::size_t n1 = 0; n1 < values.size(); ++n1) {
    const double n = double(n1 + 1);
    const double bound = std::pow(M * g1, n) / std::tgamma(n * (1.0 - gamma)) *
                         std::pow(tau - s, -gamma) *
                         std::pow(t - s, (n - 1.0) * (1.0 - gamma) + 1.0);
    ratios.push_back(norm_inf(values[n1]) / bound);
  }
  return ratios;
}

}  // namespace volterra
