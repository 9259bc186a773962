#include "volterra/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace volterra {

CellFn cell_accessor(const VolterraLevel& z)
{
  return [&z](int iu, int ik) { return z.value(iu, iu + 1, ik); };
}

CellFn cell_accessor1(const CellLevels& c)
{
  return [&c](int iu, int ik) { return c.cell1(iu, ik); };
}

CellFn cell_accessor2(const CellLevels& c)
{
  return [&c](int iu, int ik) { return c.cell2(iu, ik); };
}

namespace {

void check_cfg(const SolveConfig& cfg)
{
  if (!cfg.z1cell) throw std::invalid_argument("solve: missing level-1 cells");
  if (cfg.grid.N < 2) throw std::invalid_argument("solve: empty grid");
  if (cfg.scheme == Scheme::RoughEuler) {
    if (!cfg.z2cell) throw std::invalid_argument("solve: RoughEuler needs level-2 cells");
    if (!(cfg.rho > 1.0 / 3.0))
      throw std::invalid_argument("solve: RoughEuler needs rho > 1/3");
  }
  const int m = int(cfg.y0.size());
  if (cfg.f.in != m || cfg.f.out != m * cfg.d)
    throw std::invalid_argument("solve: field must map R^m to R^{m x d}");
}

// z2 . [f'(y) f(y)]: g2^a = sum_{ijb} df[(a*d+j)*m+b] f[b*d+i] z2[i*d+j].
void add_second_order(Value& dst, const Value& z2v, const Value& fv, const Value& jac,
                      int m, int d)
{
  for (int a = 0; a < m; ++a) {
    double acc = 0.0;
    for (int j = 0; j < d; ++j)
      for (int b = 0; b < m; ++b) {
        const double djb = jac[(std::size_t(a) * d + j) * m + b];
        if (djb == 0.0) continue;
        for (int i = 0; i < d; ++i)
          acc += djb * fv[std::size_t(b) * d + i] * z2v[std::size_t(i) * d + j];
      }
    dst[a] += acc;
  }
}

// One cell update u -> u+1 on column tau, from the diagonal data
// (fv, jac) at u.
void cell_update(Value& dst, const SolveConfig& cfg, int iu, int ik,
                 const Value& fv, const Value& jac, int m, int d)
{
  const Value z1v = cfg.z1cell(iu, ik);
  for (int a = 0; a < m; ++a) {
    double acc = 0.0;
    for (int i = 0; i < d; ++i) acc += fv[std::size_t(a) * d + i] * z1v[i];
    dst[a] += acc;
  }
  if (cfg.scheme == Scheme::RoughEuler)
    add_second_order(dst, cfg.z2cell(iu, ik), fv, jac, m, d);
}

}  // namespace

Solution solve_from(const SolveConfig& cfg, int t0, const std::vector<Value>& column)
{
  check_cfg(cfg);
  const int N = cfg.grid.N;
  const int d = cfg.d;
  const int m = int(cfg.y0.size());
  if (t0 < 0 || t0 >= N) throw std::invalid_argument("solve_from: start index out of range");
  if (int(column.size()) != N) throw std::invalid_argument("solve_from: column must have N entries");

  Solution sol;
  sol.N = N;
  sol.m = m;
  sol.grid = cfg.grid;
  sol.y.assign(simplex2_size(N), zeros(m));
  for (int k = t0; k < N; ++k) sol.y[simplex2_offset(t0, k)] = column[k];

  const double guard = cfg.blowup_factor * (1.0 + norm_inf(cfg.y0));
  for (int iu = t0; iu + 1 < N; ++iu) {
    const Value& diag = sol.at(iu, iu);
    if (!std::isfinite(norm_inf(diag)) || norm_inf(diag) > guard) {
      sol.blew_up = true;
      sol.blowup_step = iu;
      return sol;
    }
    const Value fv = cfg.f.f(diag);
    const Value jac = cfg.scheme == Scheme::RoughEuler ? cfg.f.df(diag) : Value{};
    for (int ik = iu + 1; ik < N; ++ik) {
      Value next = sol.at(iu, ik);
      cell_update(next, cfg, iu, ik, fv, jac, m, d);
      sol.y[simplex2_offset(iu + 1, ik)] = std::move(next);
    }
  }
  return sol;
}

Solution solve(const SolveConfig& cfg)
{
  check_cfg(cfg);
  const int N = cfg.grid.N;
  std::vector<Value> column(N, cfg.y0);
  return solve_from(cfg, 0, column);
}

PicardResult picard_iterate(const SolveConfig& cfg, int k_iters, double tol)
{
  check_cfg(cfg);
  const int N = cfg.grid.N;
  const int d = cfg.d;
  const int m = int(cfg.y0.size());
  const double guard = cfg.blowup_factor * (1.0 + norm_inf(cfg.y0));

  PicardResult res;
  res.sol.N = N;
  res.sol.m = m;
  res.sol.grid = cfg.grid;
  res.sol.y.assign(simplex2_size(N), cfg.y0);

  int rising = 0;
  for (int it = 0; it < k_iters; ++it) {
    // Diagonal data of the previous iterate, one entry per cell start.
    std::vector<Value> fv(N), jac(N);
    for (int r = 0; r + 1 < N; ++r) {
      const Value& diag = res.sol.at(r, r);
      if (!std::isfinite(norm_inf(diag)) || norm_inf(diag) > guard) {
        res.sol.blew_up = true;
        res.sol.blowup_step = r;
        return res;
      }
      fv[r] = cfg.f.f(diag);
      if (cfg.scheme == Scheme::RoughEuler) jac[r] = cfg.f.df(diag);
    }
    std::vector<Value> next(simplex2_size(N));
    double dist = 0.0;
    for (int ik = 0; ik < N; ++ik) {
      Value acc = cfg.y0;
      next[simplex2_offset(0, ik)] = acc;
      for (int t = 1; t <= ik; ++t) {
        cell_update(acc, cfg, t - 1, ik, fv[t - 1], jac[t - 1], m, d);
        next[simplex2_offset(t, ik)] = acc;
        dist = std::max(dist, dist_inf(acc, res.sol.at(t, ik)));
      }
    }
    res.sol.y = std::move(next);
    res.iters = it + 1;
    if (!res.distances.empty()) {
      const double prev = res.distances.back();
      const double f = prev > 0.0 ? dist / prev : 0.0;
      res.factors.push_back(f);
      rising = f >= 1.0 ? rising + 1 : 0;
      if (rising >= 3) {
        res.diverged = true;
        res.distances.push_back(dist);
        return res;
      }
    }
    res.distances.push_back(dist);
    if (dist < tol * (1.0 + norm_inf(cfg.y0))) {
      res.converged = true;
      return res;
    }
  }
  return res;
}

ConvergenceTable convergence_study(const std::function<double(int)>& error_at_level,
                                   int l_lo, int l_hi)
{
  if (l_hi < l_lo) throw std::invalid_argument("convergence_study: empty level range");
  ConvergenceTable tab;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int l = l_lo; l <= l_hi; ++l) {
    const double e = error_at_level(l);
    tab.rows.push_back({l, e});
    if (e > 1e-15) {
      const double x = l, y = std::log2(e);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
  }
  if (n == 0) {
    tab.exact = true;
    return tab;
  }
  if (n >= 2) tab.observed_order = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  return tab;
}

}  // namespace volterra
