#include "volterra/convolution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace volterra {

namespace {

// Boundaries of the level-n nested grid partition of [iu, it].
std::vector<int> grid_partition(int iu, int it, int n)
{
  const long cells = 1L << n;
  const long span = it - iu;
  std::vector<int> b;
  b.reserve(std::min<long>(cells, span) + 1);
  int prev = iu;
  b.push_back(iu);
  for (long c = 1; c <= cells; ++c) {
    int x = iu + int((span * c + cells / 2) / cells);
    if (c == cells) x = it;
    if (x > prev) {
      b.push_back(x);
      prev = x;
    }
  }
  return b;
}

}  // namespace

SewingResult sew_grid(const std::function<Value(int, int)>& germ, std::size_t width,
                      int iu, int it, const SewParams& p)
{
  if (iu > it) throw std::invalid_argument("sew_grid: need iu <= it");
  SewingResult res;
  if (iu == it) {
    res.value = zeros(width);
    res.converged = true;
    return res;
  }
  Value prev = germ(iu, it);
  double scale = 1.0;
  const int span = it - iu;
  for (int n = 1;; ++n) {
    const auto b = grid_partition(iu, it, n);
    Value sum = zeros(width);
    for (std::size_t c = 0; c + 1 < b.size(); ++c) add_inplace(sum, germ(b[c], b[c + 1]));
    const double d = dist_inf(sum, prev);
    res.deltas.push_back(d);
    res.levels_used = n;
    prev = std::move(sum);
    if (n == 1) scale = std::max(norm_inf(prev), 1e-300);
    if (d < p.tol * scale) {
      res.converged = true;
      break;
    }
    if ((1L << n) >= span || n >= p.max_level) break;  // full grid resolution
  }
  res.value = std::move(prev);
  return res;
}

SewingResult conv1(const PairFn& z, std::size_t zw, const UpperFn& y, std::size_t yw,
                   double u, double t, double tau, const SewParams& p)
{
  Integrand xi;
  xi.value_size = yw * zw;
  xi.eval = [&](double r, double rp, double tt) { return outer(y(r), z(r, rp, tt)); };
  return sew(xi, u, t, tau, p);
}

Value conv1_discrete(const std::function<Value(int)>& zcell,
                     const std::function<Value(int)>& ynode,
                     int iu, int it, std::size_t zw, std::size_t yw)
{
  Value out = zeros(yw * zw);
  for (int l = iu; l < it; ++l) {
    const Value yv = ynode(l);
    const Value zv = zcell(l);
    for (std::size_t iy = 0; iy < yw; ++iy)
      for (std::size_t iz = 0; iz < zw; ++iz) out[iy * zw + iz] += yv[iy] * zv[iz];
  }
  return out;
}

double chen_residual_with(const VolterraLevel& z2, int is, int iu, int it, int ik,
                          const Value& conv)
{
  Value r = z2.value(is, it, ik);
  sub_inplace(r, z2.value(iu, it, ik));
  sub_inplace(r, z2.value(is, iu, ik));
  sub_inplace(r, conv);
  return norm_inf(r);
}

double chen_residual(const VolterraLevel& z1, const VolterraLevel& z2,
                     int is, int iu, int it, int ik)
{
  const std::size_t d = std::size_t(z1.dim);
  Value conv = conv1_discrete(
      [&](int l) { return z1.value(l, l + 1, ik); },
      [&](int l) { return z1.value(is, iu, l); }, iu, it, d, d);
  return chen_residual_with(z2, is, iu, it, ik, conv);
}

Value conv2(const VolterraLevel& z2, const VolterraLevel& z1, const UpperFn2& y,
            std::size_t yw, int is, int it, int ik, const SewParams& p, double chen_tol)
{
  if (z2.level != 2 || z1.level != 1 || z2.dim != z1.dim)
    throw std::invalid_argument("conv2: needs a (level-1, level-2) pair of equal dimension");
  const int d = z1.dim;
  const std::size_t dd = std::size_t(d) * d;
  const auto& pt = z1.grid.points;

  // Chen precondition on the stored pair at the quarter splits.
  if (chen_tol < 0.0) chen_tol = 100.0 * p.tol;
  const double ref = std::max(1.0, norm_inf(z2.value(is, it, ik)));
  for (int q = 1; q <= 3; ++q) {
    const int iu = is + (it - is) * q / 4;
    if (iu <= is || iu >= it) continue;
    const double r = chen_residual(z1, z2, is, iu, it, ik);
    if (r > chen_tol * ref)
      throw std::runtime_error(
          "conv2: stored levels violate the Chen identity (residual " + std::to_string(r) +
          " at split index " + std::to_string(iu) + ", tolerance " +
          std::to_string(chen_tol * ref) + ")");
  }

  auto germ = [&](int iu, int iv) {
    const Value y_uu = y(pt[iu], pt[iu]);
    // z2_{vu} + delta_u z2_{vs}, both read from storage.
    Value base = z2.value(iu, iv, ik);
    {
      Value dz = z2.value(is, iv, ik);
      sub_inplace(dz, z2.value(iu, iv, ik));
      sub_inplace(dz, z2.value(is, iu, ik));
      add_inplace(base, dz);
    }
    Value out = outer(y_uu, base);
    // Nested first-level correction against y - y(u,u).
    for (int r = iu; r < iv; ++r) {
      Value inner = zeros(yw * d);
      for (int l = is; l < iu; ++l) {
        Value yv = y(pt[l], pt[r]);
        sub_inplace(yv, y_uu);
        const Value zin = z1.value(l, l + 1, r);
        for (std::size_t iy = 0; iy < yw; ++iy)
          for (int i = 0; i < d; ++i) inner[iy * d + i] += yv[iy] * zin[i];
      }
      const Value zc = z1.value(r, r + 1, ik);
      for (std::size_t c = 0; c < yw * d; ++c)
        for (int j = 0; j < d; ++j) out[c * d + j] += inner[c] * zc[j];
    }
    return out;
  };
  return sew_grid(germ, yw * dd, is, it, p).value;
}

VolterraLevel extend(const std::vector<const VolterraLevel*>& levels, int m, double rho,
                     const SewParams& p, const PairFn& z1_continuous, bool c1_driver)
{
  if (m != int(levels.size()) + 1)
    throw std::invalid_argument("extend: m must be one above the given stack");
  if (m < 2 || m > 3)
    throw std::invalid_argument("extend: only levels 2 and 3 are supported (rho > 1/3 regime)");
  if (!(m * rho > 1.0) && !c1_driver)
    throw std::invalid_argument("extend: need m*rho > 1 (or a certified C^1 driver)");
  const VolterraLevel& z1 = *levels[0];
  if (z1.level != 1) throw std::invalid_argument("extend: first stack entry must be level 1");
  const VolterraLevel* z2 = nullptr;
  if (m == 3) {
    z2 = levels[1];
    if (z2->level != 2 || z2->dim != z1.dim)
      throw std::invalid_argument("extend: second stack entry must be a matching level 2");
  }
  const int d = z1.dim;
  const auto& pt = z1.grid.points;
  VolterraLevel out = make_level(m, d, z1.grid, Provenance::Extended);

#pragma omp parallel for schedule(dynamic)
  for (int kc = 0; kc < z1.grid.N; ++kc) {
    const double tau = pt[kc];
    for (int j = 0; j <= kc; ++j)
      for (int i = 0; i < j; ++i) {
        Value v;
        if (m == 2 && z1_continuous) {
          Integrand xi;
          xi.value_size = std::size_t(d) * d;
          const double s = pt[i];
          xi.eval = [&](double u, double vv, double tt) {
            return outer(z1_continuous(s, u, u), z1_continuous(u, vv, tt));
          };
          v = sew(xi, pt[i], pt[j], tau, p).value;
        } else if (m == 2) {
          auto germ = [&](int iu, int iv) {
            return outer(z1.value(i, iu, iu), z1.value(iu, iv, kc));
          };
          v = sew_grid(germ, std::size_t(d) * d, i, j, p).value;
        } else {
          auto germ = [&](int iu, int iv) {
            Value a = outer(z1.value(i, iu, iu), z2->value(iu, iv, kc));
            add_inplace(a, outer(z2->value(i, iu, iu), z1.value(iu, iv, kc)));
            return a;
          };
          v = sew_grid(germ, std::size_t(d) * d * d, i, j, p).value;
        }
        out.set(i, j, kc, v);
      }
  }
  return out;
}

SewingResult extend2_at(const PairFn& z1c, int d, double s, double t, double tau,
                        const SewParams& p)
{
  Integrand xi;
  xi.value_size = std::size_t(d) * d;
  xi.eval = [&](double u, double v, double tt) {
    return outer(z1c(s, u, u), z1c(u, v, tt));
  };
  return sew(xi, s, t, tau, p);
}

}  // namespace volterra
