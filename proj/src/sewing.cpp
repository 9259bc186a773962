#include "volterra/sewing.hpp"

namespace volterra {

SewingResult sew(const Integrand& xi, double s, double t, double tau, const SewParams& p)
{
  if (!(s <= t && t <= tau)) throw std::invalid_argument("sew: need s <= t <= tau");
  if (!(p.tol > 0.0)) throw std::invalid_argument("sew: tolerance must be positive");

  SewingResult res;
  if (s == t) {
    res.value = zeros(xi.value_size);
    res.converged = true;
    return res;
  }

  Value prev = xi.eval(s, t, tau);  // the level-0 one-cell sum
  double scale = 1.0;
  for (int n = 1; n <= p.max_level; ++n) {
    const long cells = 1L << n;
    const double h = (t - s) / double(cells);
    Value sum = zeros(xi.value_size);
    for (long c = 0; c < cells; ++c) {
      const double u = s + double(c) * h;
      const double v = (c + 1 == cells) ? t : s + double(c + 1) * h;
      add_inplace(sum, xi.eval(u, v, tau));
    }
    const double d = dist_inf(sum, prev);
    res.deltas.push_back(d);
    res.levels_used = n;
    prev = std::move(sum);
    if (n == 1) scale = std::max(norm_inf(prev), 1e-300);
    if (d < p.tol * scale) {
      res.converged = true;
      break;
    }
  }
  res.value = std::move(prev);
  return res;
}

DecayFit check_decay(const SewingResult& r, double beta)
{
  DecayFit fit;
  std::vector<std::pair<double, double>> pts;  // (level, log2 delta)
  for (std::size_t i = 0; i < r.deltas.size(); ++i)
    if (r.deltas[i] > 0.0) pts.emplace_back(double(i + 1), std::log2(r.deltas[i]));

  if (pts.empty()) {
    fit.exact = true;
    fit.claim_ok = true;
    return fit;
  }
  if (pts.size() < 3)
    throw std::invalid_argument("check_decay: need at least 3 levels with nonzero deltas");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = double(pts.size());
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.claim_ok = fit.slope <= -(beta - 1.0) + 0.15;
  return fit;
}

SewExponents sewing_decay_exponents(double alpha, double gamma)
{
  const double rho = alpha - gamma;
  if (!(rho > 0.0))
    throw std::invalid_argument("sewing_decay_exponents: need alpha > gamma");
  return {1.0 + 0.8 * rho, 1.0 - 0.2 * rho};
}

}  // namespace volterra
