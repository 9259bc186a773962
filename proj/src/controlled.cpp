#include "volterra/controlled.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace volterra {

Value numeric_jacobian(const std::function<Value(const Value&)>& f, int out,
                       const Value& y, double h)
{
  const int in = int(y.size());
  Value jac(std::size_t(out) * in, 0.0);
  Value yp = y, ym = y;
  for (int b = 0; b < in; ++b) {
    yp[b] = y[b] + h;
    ym[b] = y[b] - h;
    const Value fp = f(yp), fm = f(ym);
    for (int c = 0; c < out; ++c) jac[std::size_t(c) * in + b] = (fp[c] - fm[c]) / (2.0 * h);
    yp[b] = y[b];
    ym[b] = y[b];
  }
  return jac;
}

VectorField zero_field(int m, int d)
{
  VectorField v;
  v.in = m;
  v.out = m * d;
  v.f = [w = std::size_t(m) * d](const Value&) { return zeros(w); };
  v.df = [m, w = std::size_t(m) * d](const Value&) { return zeros(w * std::size_t(m)); };
  return v;
}

VectorField constant_field(const Value& c, int in)
{
  VectorField v;
  v.in = in;
  v.out = int(c.size());
  v.f = [c](const Value&) { return c; };
  v.df = [in, w = c.size()](const Value&) { return zeros(w * std::size_t(in)); };
  return v;
}

VectorField linear_field(const Value& mat, int in, int out)
{
  if (int(mat.size()) != in * out)
    throw std::invalid_argument("linear_field: matrix size mismatch");
  VectorField v;
  v.in = in;
  v.out = out;
  v.f = [mat, in, out](const Value& y) {
    Value r(out, 0.0);
    for (int c = 0; c < out; ++c)
      for (int b = 0; b < in; ++b) r[c] += mat[std::size_t(c) * in + b] * y[b];
    return r;
  };
  v.df = [mat](const Value&) { return mat; };
  return v;
}

VectorField sin_field(int m, int d)
{
  VectorField v;
  v.in = m;
  v.out = m * d;
  v.f = [m, d](const Value& y) {
    Value r(std::size_t(m) * d);
    for (int a = 0; a < m; ++a)
      for (int i = 0; i < d; ++i) r[std::size_t(a) * d + i] = std::sin(y[a]);
    return r;
  };
  v.df = [m, d](const Value& y) {
    Value jac(std::size_t(m) * d * m, 0.0);
    for (int a = 0; a < m; ++a)
      for (int i = 0; i < d; ++i)
        jac[(std::size_t(a) * d + i) * m + a] = std::cos(y[a]);
    return jac;
  };
  return v;
}

ControlledPath constant_controlled(const Value& c, const VolterraLevel& z1)
{
  ControlledPath yc;
  yc.N = z1.grid.N;
  yc.yw = int(c.size());
  yc.base = &z1;
  yc.y = [c](int, int) { return c; };
  yc.yp = [w = c.size() * std::size_t(z1.dim)](int, int, int) { return zeros(w); };
  return yc;
}

ControlledPath level_controlled(const VolterraLevel& z1)
{
  ControlledPath yc;
  yc.N = z1.grid.N;
  yc.yw = z1.dim;
  yc.base = &z1;
  yc.y = [&z1](int t, int p) { return z1.value(0, t, p); };
  const int d = z1.dim;
  Value id(std::size_t(d) * d, 0.0);
  for (int i = 0; i < d; ++i) id[std::size_t(i) * d + i] = 1.0;
  yc.yp = [id](int, int, int) { return id; };
  return yc;
}

SewingResult rough_integral(const VolterraLevel& z1, const VolterraLevel& z2,
                            const ControlledPath& yc, int is, int it, int ik,
                            const SewParams& p, double chen_tol)
{
  if (z1.level != 1 || z2.level != 2 || z1.dim != z2.dim)
    throw std::invalid_argument("rough_integral: needs a matching (level-1, level-2) pair");
  const int d = z1.dim;
  const std::size_t yw = std::size_t(yc.yw);

  if (chen_tol < 0.0) chen_tol = 100.0 * p.tol;
  const double ref = std::max(1.0, norm_inf(z2.value(is, it, ik)));
  for (int q = 1; q <= 3; ++q) {
    const int iu = is + (it - is) * q / 4;
    if (iu <= is || iu >= it) continue;
    const double r = chen_residual(z1, z2, is, iu, it, ik);
    if (r > chen_tol * ref)
      throw std::runtime_error("rough_integral: driver levels violate the Chen identity "
                               "(residual " + std::to_string(r) + ")");
  }

  auto germ = [&](int iu, int iv) {
    Value out = zeros(yw * d);
    for (int r = iu; r < iv; ++r) {
      const Value yv = yc.y(iu, r);
      const Value zc = z1.value(r, r + 1, ik);
      for (std::size_t b = 0; b < yw; ++b)
        for (int j = 0; j < d; ++j) out[b * d + j] += yv[b] * zc[j];
    }
    const Value dv = yc.yp(iu, iu, iu);
    const Value z2v = z2.value(iu, iv, ik);
    for (std::size_t b = 0; b < yw; ++b)
      for (int j = 0; j < d; ++j) {
        double acc = 0.0;
        for (int i = 0; i < d; ++i) acc += dv[b * d + i] * z2v[std::size_t(i) * d + j];
        out[b * d + j] += acc;
      }
    return out;
  };
  return sew_grid(germ, yw * d, is, it, p);
}

ControlledPath integral_controlled(const VolterraLevel& z1, const VolterraLevel& z2,
                                   const ControlledPath& yc, const SewParams& p)
{
  const int N = z1.grid.N;
  const int d = z1.dim;
  const std::size_t w = std::size_t(yc.yw) * d;
  auto store = std::make_shared<std::vector<Value>>(simplex2_size(N));
  for (int k = 0; k < N; ++k)
    for (int t = 0; t <= k; ++t)
      (*store)[simplex2_offset(t, k)] = rough_integral(z1, z2, yc, 0, t, k, p).value;

  ControlledPath out;
  out.N = N;
  out.yw = int(w);
  out.base = &z1;
  out.y = [store](int t, int k) { return (*store)[simplex2_offset(t, k)]; };
  // w'^{p,q}_t = y^p_t embedded along the driver slot of the value.
  out.yp = [yc, d](int t, int pidx, int) {
    const Value yv = yc.y(t, pidx);
    Value r(yv.size() * std::size_t(d) * d, 0.0);
    for (std::size_t b = 0; b < yv.size(); ++b)
      for (int j = 0; j < d; ++j) r[(b * d + j) * std::size_t(d) + j] = yv[b];
    return r;
  };
  return out;
}

ControlledPath compose(const VectorField& f, const ControlledPath& yc)
{
  if (f.in != yc.yw) throw std::invalid_argument("compose: field domain mismatch");
  const int d = yc.base ? yc.base->dim : 1;
  ControlledPath out;
  out.N = yc.N;
  out.yw = f.out;
  out.base = yc.base;
  out.y = [f, yc](int t, int p) { return f.f(yc.y(t, p)); };
  out.yp = [f, yc, d](int t, int p, int q) {
    const Value jac = f.df(yc.y(t, q));  // [c*in + b]
    const Value dv = yc.yp(t, p, q);     // [b*d + j]
    Value r(std::size_t(f.out) * d, 0.0);
    for (int c = 0; c < f.out; ++c)
      for (int b = 0; b < f.in; ++b) {
        const double jcb = jac[std::size_t(c) * f.in + b];
        if (jcb == 0.0) continue;
        for (int j = 0; j < d; ++j) r[std::size_t(c) * d + j] += jcb * dv[std::size_t(b) * d + j];
      }
    return r;
  };
  return out;
}

Value remainder(const ControlledPath& yc, int is, int it, int ik)
{
  if (!yc.base) throw std::invalid_argument("remainder: no base level");
  const VolterraLevel& z1 = *yc.base;
  const int d = z1.dim;
  Value r = yc.y(it, ik);
  sub_inplace(r, yc.y(is, ik));
  for (int l = is; l < it; ++l) {
    const Value dv = yc.yp(is, ik, l);
    const Value zc = z1.value(l, l + 1, ik);
    for (int b = 0; b < yc.yw; ++b)
      for (int j = 0; j < d; ++j) r[b] -= dv[std::size_t(b) * d + j] * zc[j];
  }
  return r;
}

}  // namespace volterra
