#include "volterra/brownian.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "volterra/convolution.hpp"

namespace volterra {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct FinePath {
  int F = 0;
  double dt = 0.0;
  std::vector<double> dB;  // [m*d + c], Gaussian(0, dt)
};

FinePath simulate(const BrownianBatch& b, int path)
{
  FinePath fp;
  fp.F = 1 << b.fine_depth;
  fp.dt = b.T / double(fp.F);
  std::mt19937_64 rng(splitmix64(b.seed + 0x1000003ULL * std::uint64_t(path)));
  std::normal_distribution<double> gauss(0.0, std::sqrt(fp.dt));
  fp.dB.resize(std::size_t(fp.F) * b.d);
  for (double& x : fp.dB) x = gauss(rng);
  return fp;
}

// kk[g] = k(g*dt) for gaps g = 1..F (all three kernel kinds are
// stationary in tau - r).
std::vector<double> gap_table(const VolterraKernel& k, int F, double dt)
{
  std::vector<double> kk(std::size_t(F) + 1, 0.0);
  for (int g = 1; g <= F; ++g) kk[g] = k.eval(g * dt, 0.0);
  return kk;
}

// Coarse-to-fine stride; throws unless g is the uniform dyadic grid on
// [0, T] refined by the fine grid.
int coarse_stride(const SimplexGrid& g, int F, double T)
{
  const int nc = g.N - 1;
  if (nc < 1 || F % nc != 0)
    throw std::invalid_argument("brownian: fine grid must refine the coarse grid");
  const int stride = F / nc;
  for (int c = 0; c < g.N; ++c)
    if (std::abs(g.points[c] - T * double(c) / nc) > 1e-12 * std::max(1.0, T))
      throw std::invalid_argument("brownian: coarse grid must be uniform dyadic on [0, T]");
  return stride;
}

void check_gamma(const VolterraKernel& k)
{
  if (k.gamma >= 0.25)
    throw std::invalid_argument(
        "brownian: gamma must be < 1/4 (second-level L^2 construction unavailable)");
}

// S[m][c][i] = sum_{l < min(c*stride, m)} kk[m-l] dB^i_l: the fine-time
// first level cut at the coarse boundaries, plus the full row T_m.
struct STable {
  int F = 0, Nc = 0, stride = 0, d = 0;
  std::vector<double> s;  // [(m*Nc + c)*d + i]
  std::vector<double> t;  // [m*d + i]

  const double* cut(int m, int c) const { return s.data() + (std::size_t(m) * Nc + c) * d; }
  const double* full(int m) const { return t.data() + std::size_t(m) * d; }
};

STable build_stable(const FinePath& fp, const std::vector<double>& kk, int Nc, int stride, int d)
{
  STable st;
  st.F = fp.F;
  st.Nc = Nc;
  st.stride = stride;
  st.d = d;
  st.s.assign(std::size_t(fp.F) * Nc * d, 0.0);
  st.t.assign(std::size_t(fp.F) * d, 0.0);
  std::vector<double> run(d);
  for (int m = 0; m < fp.F; ++m) {
    std::fill(run.begin(), run.end(), 0.0);
    int c = 0;
    for (int l = 0; l < m; ++l) {
      while (c < Nc && c * stride == l) {
        for (int i = 0; i < d; ++i) st.s[(std::size_t(m) * Nc + c) * d + i] = run[i];
        ++c;
      }
      const double w = kk[m - l];
      for (int i = 0; i < d; ++i) run[i] += w * fp.dB[std::size_t(l) * d + i];
    }
    for (; c < Nc; ++c)
      for (int i = 0; i < d; ++i) st.s[(std::size_t(m) * Nc + c) * d + i] = run[i];
    for (int i = 0; i < d; ++i) st.t[std::size_t(m) * d + i] = run[i];
  }
  return st;
}

// z1 over fine window [ma, mb) at coarse upper index kc.
Value z1_window(const FinePath& fp, const std::vector<double>& kk, int d,
                int ma, int mb, int fk)
{
  Value out(d, 0.0);
  for (int m = ma; m < mb; ++m) {
    const double w = kk[fk - m];
    for (int i = 0; i < d; ++i) out[i] += w * fp.dB[std::size_t(m) * d + i];
  }
  return out;
}

// z2 contribution over fine window [ma, mb) with inner sums cut at the
// coarse boundary `cut` (cut*stride <= ma).
Value z2_window(const FinePath& fp, const STable& st, const std::vector<double>& kk,
                int d, int cut, int ma, int mb, int fk)
{
  Value out(std::size_t(d) * d, 0.0);
  for (int m = ma; m < mb; ++m) {
    const double w = kk[fk - m];
    const double* scut = st.cut(m, cut);
    const double* sful = st.full(m);
    for (int i = 0; i < d; ++i) {
      const double inner = sful[i] - scut[i];
      for (int j = 0; j < d; ++j)
        out[std::size_t(i) * d + j] += w * fp.dB[std::size_t(m) * d + j] * inner;
    }
  }
  return out;
}

PathLevels levels_from(const FinePath& fp, const STable& st, const std::vector<double>& kk,
                       const SimplexGrid& g, int d)
{
  PathLevels pl{make_level(1, d, g, Provenance::DoubleSum),
                make_level(2, d, g, Provenance::DoubleSum)};
  const int stride = st.stride;
  for (int kc = 0; kc < g.N; ++kc) {
    const int fk = kc * stride;
    // Level-1 prefixes along the column.
    std::vector<Value> p1(kc + 1, zeros(d));
    for (int j = 1; j <= kc; ++j)
      p1[j] = add(p1[j - 1], z1_window(fp, kk, d, (j - 1) * stride, j * stride, fk));
    for (int j = 0; j <= kc; ++j)
      for (int i = 0; i <= j; ++i) pl.z1.set(i, j, kc, sub(p1[j], p1[i]));
    // Level 2: accumulate over j for each lower cut i.
    for (int i = 0; i <= kc; ++i) {
      Value acc(std::size_t(d) * d, 0.0);
      pl.z2.set(i, i, kc, acc);
      for (int j = i + 1; j <= kc; ++j) {
        add_inplace(acc, z2_window(fp, st, kk, d, i, (j - 1) * stride, j * stride, fk));
        pl.z2.set(i, j, kc, acc);
      }
    }
  }
  return pl;
}

double isometry_target(const VolterraKernel& k, double s, double t, double tau)
{
  switch (k.kind) {
    case KernelKind::Unit:
      return t - s;
    case KernelKind::Fractional: {
      const double e = 1.0 - 2.0 * k.gamma;
      return (std::pow(tau - s, e) - std::pow(tau - t, e)) / e;
    }
    case KernelKind::TemperedFractional: {
      // midpoint rule; the integrand is singular only at r = tau = t.
      const int n = 1 << 16;
      const double h = (t - s) / n;
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        const double kv = k.eval(tau, s + (i + 0.5) * h);
        acc += kv * kv;
      }
      return acc * h;
    }
  }
  return 0.0;
}

struct MeanVar {
  double mean = 0.0, var = 0.0;
};

MeanVar mean_var(const std::vector<double>& x)
{
  MeanVar mv;
  const std::size_t n = x.size();
  if (n < 2) return mv;
  mv.mean = pairwise_sum(x) / double(n);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = (x[i] - mv.mean) * (x[i] - mv.mean);
  mv.var = pairwise_sum(sq) / double(n - 1);
  return mv;
}

std::string tuple_tag(const TupleSpec& t)
{
  return "(" + std::to_string(t.is) + "," + std::to_string(t.it) + "," +
         std::to_string(t.ik) + ")";
}

}  // namespace

PathLevels sample_lift(const BrownianBatch& b, int path, const VolterraKernel& k,
                       const SimplexGrid& g)
{
  check_gamma(k);
  const FinePath fp = simulate(b, path);
  const int stride = coarse_stride(g, fp.F, b.T);
  const auto kk = gap_table(k, fp.F, fp.dt);
  const STable st = build_stable(fp, kk, g.N, stride, b.d);
  return levels_from(fp, st, kk, g, b.d);
}

TupleSamples sample_tuple_values(const BrownianBatch& b, const VolterraKernel& k,
                                 const SimplexGrid& g, const std::vector<TupleSpec>& tuples)
{
  check_gamma(k);
  for (const auto& t : tuples)
    if (!(0 <= t.is && t.is <= t.it && t.it <= t.ik && t.ik < g.N))
      throw std::invalid_argument("sample_tuple_values: tuple outside the simplex");
  TupleSamples out;
  out.tuples = tuples;
  out.d = b.d;
  out.z1.assign(tuples.size(), {});
  out.z2.assign(tuples.size(), {});
  for (auto& v : out.z1) v.reserve(b.n_paths);
  for (auto& v : out.z2) v.reserve(b.n_paths);

  const int F = 1 << b.fine_depth;
  const double dt = b.T / double(F);
  const int stride = coarse_stride(g, F, b.T);
  const auto kk = gap_table(k, F, dt);
  for (int path = 0; path < b.n_paths; ++path) {
    const FinePath fp = simulate(b, path);
    const STable st = build_stable(fp, kk, g.N, stride, b.d);
    for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
      const auto& t = tuples[ti];
      const int fk = t.ik * stride;
      out.z1[ti].push_back(z1_window(fp, kk, b.d, t.is * stride, t.it * stride, fk));
      out.z2[ti].push_back(
          z2_window(fp, st, kk, b.d, t.is, t.is * stride, t.it * stride, fk));
    }
  }
  return out;
}

double chen_exact_check(const BrownianBatch& b, const VolterraKernel& k,
                        const SimplexGrid& g, int n_check)
{
  check_gamma(k);
  const int F = 1 << b.fine_depth;
  const double dt = b.T / double(F);
  const int stride = coarse_stride(g, F, b.T);
  const auto kk = gap_table(k, F, dt);
  const int d = b.d;
  const std::size_t dd = std::size_t(d) * d;

  double worst = 0.0;
  for (int path = 0; path < n_check; ++path) {
    const FinePath fp = simulate(b, path);
    const STable st = build_stable(fp, kk, g.N, stride, d);
    const PathLevels pl = levels_from(fp, st, kk, g, d);
    std::vector<Value> w(g.N);  // W[c] = sum_m kk dB (x) S[m][c] over the window
    for (int kc = 0; kc < g.N; ++kc)
      for (int it = 1; it <= kc; ++it)
        for (int iu = 1; iu < it; ++iu) {
          for (int c = 0; c <= iu; ++c) w[c] = zeros(dd);
          for (int m = iu * stride; m < it * stride; ++m) {
            const double kv = kk[kc * stride - m];
            for (int c = 0; c <= iu; ++c) {
              const double* scut = st.cut(m, c);
              for (int i = 0; i < d; ++i) {
                const double wi = kv * scut[i];
                for (int j = 0; j < d; ++j)
                  w[c][std::size_t(i) * d + j] += wi * fp.dB[std::size_t(m) * d + j];
              }
            }
          }
          for (int is = 0; is <= iu; ++is) {
            const Value conv = sub(w[iu], w[is]);
            const double res = chen_residual_with(pl.z2, is, iu, it, kc, conv);
            const double ref = std::max(1.0, norm_inf(pl.z2.value(is, it, kc)));
            worst = std::max(worst, res / ref);
          }
        }
  }
  return worst;
}

std::vector<MCStat> isometry_check(const TupleSamples& s, const VolterraKernel& k,
                                   const SimplexGrid& g)
{
  std::vector<MCStat> out;
  for (std::size_t ti = 0; ti < s.tuples.size(); ++ti) {
    const auto& t = s.tuples[ti];
    const double target =
        isometry_target(k, g.points[t.is], g.points[t.it], g.points[t.ik]);
    const std::size_t n = s.z1[ti].size();
    for (int c = 0; c < s.d; ++c) {
      std::vector<double> x(n);
      for (std::size_t p = 0; p < n; ++p) x[p] = s.z1[ti][p][c];
      const MeanVar mv = mean_var(x);
      MCStat st;
      st.name = "isometry" + tuple_tag(t) + "[" + std::to_string(c) + "]";
      st.mean = mv.mean;
      st.variance = mv.var;
      st.n = n;
      st.target = target;
      st.z_score = (mv.var - target) / (target * std::sqrt(2.0 / double(n - 1)));
      out.push_back(std::move(st));
    }
  }
  return out;
}

std::vector<MCStat> mean_zero_check(const TupleSamples& s, const VolterraKernel& k,
                                    const SimplexGrid& g)
{
  std::vector<MCStat> out;
  for (std::size_t ti = 0; ti < s.tuples.size(); ++ti) {
    const auto& t = s.tuples[ti];
    const double sigma2 =
        isometry_target(k, g.points[t.is], g.points[t.it], g.points[t.ik]);
    const std::size_t n = s.z1[ti].size();
    for (int c = 0; c < s.d; ++c) {
      std::vector<double> x(n);
      for (std::size_t p = 0; p < n; ++p) x[p] = s.z1[ti][p][c];
      const MeanVar mv = mean_var(x);
      MCStat st;
      st.name = "mean" + tuple_tag(t) + "[" + std::to_string(c) + "]";
      st.mean = mv.mean;
      st.variance = mv.var;
      st.n = n;
      st.target = 0.0;
      st.z_score = mv.mean * std::sqrt(double(n) / sigma2);
      out.push_back(std::move(st));
    }
  }
  return out;
}

std::vector<MCStat> cross_correlation_check(const TupleSamples& s)
{
  std::vector<MCStat> out;
  if (s.d < 2) return out;
  for (std::size_t ti = 0; ti < s.tuples.size(); ++ti) {
    const std::size_t n = s.z1[ti].size();
    for (int a = 0; a < s.d; ++a)
      for (int c = a + 1; c < s.d; ++c) {
        std::vector<double> x(n), y(n);
        for (std::size_t p = 0; p < n; ++p) {
          x[p] = s.z1[ti][p][a];
          y[p] = s.z1[ti][p][c];
        }
        const MeanVar mx = mean_var(x), my = mean_var(y);
        std::vector<double> xy(n);
        for (std::size_t p = 0; p < n; ++p) xy[p] = (x[p] - mx.mean) * (y[p] - my.mean);
        const double cov = pairwise_sum(xy) / double(n - 1);
        const double corr = cov / std::sqrt(mx.var * my.var);
        MCStat st;
        st.name = "corr" + tuple_tag(s.tuples[ti]) + "[" + std::to_string(a) + "," +
                  std::to_string(c) + "]";
        st.mean = corr;
        st.variance = mx.var * my.var;
        st.n = n;
        st.target = 0.0;
        st.z_score = corr * std::sqrt(double(n - 1));
        out.push_back(std::move(st));
      }
  }
  return out;
}

LpBoundResult lp_bound_check(const TupleSamples& s, int p, double gamma,
                             const SimplexGrid& g, int n_train)
{
  if (p < 2 || p % 2 != 0) throw std::invalid_argument("lp_bound_check: p must be even, >= 2");
  if (n_train <= 0 || n_train >= int(s.tuples.size()))
    throw std::invalid_argument("lp_bound_check: need a nonempty train/held-out split");
  if (s.z2.empty() || s.z2[0].size() < 1000)
    throw std::invalid_argument("lp_bound_check: need at least 10^3 paths");

  auto weight = [&](const TupleSpec& t) {
    const double ss = g.points[t.is], tt = g.points[t.it], tau = g.points[t.ik];
    const double b1 = std::pow(tau - tt, -gamma) * std::pow(tt - ss, 1.0 - gamma);
    const double b2 = std::pow(tau - ss, 1.0 - 2.0 * gamma);
    return std::pow(std::min(b1, b2), double(p));
  };
  auto moment = [&](std::size_t ti) {
    const std::size_t n = s.z2[ti].size();
    std::vector<double> x(n);
    for (std::size_t q = 0; q < n; ++q) x[q] = std::pow(norm_inf(s.z2[ti][q]), double(p));
    return pairwise_sum(x) / double(n);
  };

  LpBoundResult res;
  for (int ti = 0; ti < n_train; ++ti) {
    const double r = moment(ti) / weight(s.tuples[ti]);
    res.train_ratios.push_back(r);
    res.C = std::max(res.C, r);
  }
  res.ok = res.C > 0.0;
  for (std::size_t ti = n_train; ti < s.tuples.size(); ++ti) {
    const double r = moment(ti) / (res.C * weight(s.tuples[ti]));
    res.heldout_ratios.push_back(r);
    res.max_heldout = std::max(res.max_heldout, r);
    if (!(r <= 1.0)) res.ok = false;
  }
  return res;
}

}  // namespace volterra
