#include "volterra/kernel.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace volterra {

double VolterraKernel::eval(double tau, double r) const
{
  if (!(r >= 0.0) || !(r < tau))
    throw std::domain_error("VolterraKernel::eval: need 0 <= r < tau (diagonal is singular)");
  switch (kind) {
    case KernelKind::Unit:
      return 1.0;
    case KernelKind::Fractional:
      return std::pow(tau - r, -gamma);
    case KernelKind::TemperedFractional:
      return std::exp(-lambda * (tau - r)) * std::pow(tau - r, -gamma);
  }
  return 0.0;  // unreachable
}

VolterraKernel unit_kernel() { return {KernelKind::Unit, 0.0, 0.0}; }

VolterraKernel fractional_kernel(double gamma)
{
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw std::invalid_argument("fractional_kernel: gamma must be in [0,1)");
  return {KernelKind::Fractional, gamma, 0.0};
}

VolterraKernel tempered_fractional_kernel(double gamma, double lambda)
{
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw std::invalid_argument("tempered_fractional_kernel: gamma must be in [0,1)");
  if (!(lambda > 0.0))
    throw std::invalid_argument("tempered_fractional_kernel: lambda must be positive");
  return {KernelKind::TemperedFractional, gamma, lambda};
}

std::string kernel_kind_name(KernelKind k)
{
  switch (k) {
    case KernelKind::Unit: return "unit";
    case KernelKind::Fractional: return "fractional";
    case KernelKind::TemperedFractional: return "tempered_fractional";
  }
  return "?";
}

const HIneqStat& HReport::row(const std::string& name) const
{
  for (const auto& r : rows)
    if (r.name == name) return r;
  throw std::out_of_range("HReport::row: no such inequality: " + name);
}

namespace {

constexpr int kNumIneq = 6;

const char* kIneqNames[kNumIneq] = {
    "boundedness",       // |k(t,r)| <= C (t-r)^{-g}
    "diff_upper",        // |k(t,r)-k(q,r)| <= C (q-r)^{-g-e}(t-q)^e
    "diff_lower",        // |k(t,r)-k(t,s)| <= C (t-r)^{-g-e}(r-s)^e
    "double_diff_beta",  // |kk| <= C (q-r)^{-g-b}(r-s)^b
    "double_diff_eta",   // |kk| <= C (q-r)^{-g-e}(t-q)^e
    "interpolated",      // |kk| <= C (t-q)^e (q-r)^{-b-g-e}(r-s)^b
};

struct Accum {
  std::array<HIneqStat, kNumIneq> s;
  Accum()
  {
    for (int i = 0; i < kNumIneq; ++i) s[i].name = kIneqNames[i];
  }
  void probe(int which, double ratio, double ps, double pr, double pq, double pt,
             double eta, double beta)
  {
    auto& row = s[which];
    ++row.probes;
    if (ratio > row.constant) {
      row.constant = ratio;
      row.argmax_tuple = {ps, pr, pq, pt};
      row.argmax_eta = eta;
      row.argmax_beta = beta;
    }
  }
  void skip(int which) { ++s[which].skipped; }
  // Merge `o` after *this* in scan order: earlier argmax wins ties.
  void merge(const Accum& o)
  {
    for (int i = 0; i < kNumIneq; ++i) {
      s[i].probes += o.s[i].probes;
      s[i].skipped += o.s[i].skipped;
      if (o.s[i].constant > s[i].constant) {
        s[i].constant = o.s[i].constant;
        s[i].argmax_tuple = o.s[i].argmax_tuple;
        s[i].argmax_eta = o.s[i].argmax_eta;
        s[i].argmax_beta = o.s[i].argmax_beta;
      }
    }
  }
};

// All probes whose top (tau) grid index equals e, in lexicographic
// (s, r, q) order so the argmax tie-break is reproducible.
void scan_column(const VolterraKernel& k, const SimplexGrid& g,
                 const std::vector<double>& etas, const std::vector<double>& betas,
                 int e, Accum& acc)
{
  const auto& pt = g.points;
  const double tau = pt[e];
  const double gamma = k.gamma;

  // Boundedness over pairs r < tau.
  for (int ri = 0; ri < e; ++ri) {
    const double r = pt[ri];
    const double lhs = std::abs(k.eval(tau, r));
    const double rhs = std::pow(tau - r, -gamma);
    if (rhs > 0.0 && std::isfinite(rhs))
      acc.probe(0, lhs / rhs, r, r, tau, tau, 0.0, 0.0);
    else
      acc.skip(0);
  }

  // Upper-variable difference over triples r < q <= tau.
  for (int ri = 0; ri < e; ++ri) {
    const double r = pt[ri];
    const double ktr = k.eval(tau, r);
    for (int qi = ri + 1; qi <= e; ++qi) {
      const double q = pt[qi];
      const double lhs = std::abs(ktr - k.eval(q, r));
      for (double eta : etas) {
        const double rhs = std::pow(q - r, -gamma - eta) * std::pow(tau - q, eta);
        if (rhs > 0.0 && std::isfinite(rhs))
          acc.probe(1, lhs / rhs, r, r, q, tau, eta, 0.0);
        else
          acc.skip(1);
      }
    }
  }

  // Lower-variable difference over triples s <= r < tau.
  for (int si = 0; si < e; ++si) {
    const double s = pt[si];
    const double kts = k.eval(tau, s);
    for (int ri = si; ri < e; ++ri) {
      const double r = pt[ri];
      const double lhs = std::abs(k.eval(tau, r) - kts);
      for (double eta : etas) {
        const double rhs = std::pow(tau - r, -gamma - eta) * std::pow(r - s, eta);
        if (rhs > 0.0 && std::isfinite(rhs))
          acc.probe(2, lhs / rhs, s, r, r, tau, eta, 0.0);
        else
          acc.skip(2);
      }
    }
  }

  // Double differences over quadruples s <= r < q <= tau.
  for (int si = 0; si < e; ++si) {
    const double s = pt[si];
    for (int ri = si; ri < e; ++ri) {
      const double r = pt[ri];
      for (int qi = ri + 1; qi <= e; ++qi) {
        const double q = pt[qi];
        const double lhs = std::abs(k.eval(tau, r) - k.eval(q, r) -
                                    k.eval(tau, s) + k.eval(q, s));
        for (double beta : betas) {
          const double rhs = std::pow(q - r, -gamma - beta) * std::pow(r - s, beta);
          if (rhs > 0.0 && std::isfinite(rhs))
            acc.probe(3, lhs / rhs, s, r, q, tau, 0.0, beta);
          else
            acc.skip(3);
        }
        for (double eta : etas) {
          const double rhs = std::pow(q - r, -gamma - eta) * std::pow(tau - q, eta);
          if (rhs > 0.0 && std::isfinite(rhs))
            acc.probe(4, lhs / rhs, s, r, q, tau, eta, 0.0);
          else
            acc.skip(4);
        }
        for (double eta : etas) {
          for (double beta : betas) {
            const double rhs = std::pow(tau - q, eta) *
                               std::pow(q - r, -beta - gamma - eta) *
                               std::pow(r - s, beta);
            if (rhs > 0.0 && std::isfinite(rhs))
              acc.probe(5, lhs / rhs, s, r, q, tau, eta, beta);
            else
              acc.skip(5);
          }
        }
      }
    }
  }
}

HReport finish(std::vector<Accum>& cols)
{
  Accum total;
  for (const auto& c : cols) total.merge(c);  // fixed (column) order
  HReport rep;
  rep.rows.assign(total.s.begin(), total.s.end());
  return rep;
}

void check_inputs(const SimplexGrid& g, const std::vector<double>& etas,
                  const std::vector<double>& betas)
{
  if (g.N < 5) throw std::invalid_argument("verify_h: grid needs at least 5 points");
  if (etas.empty() || betas.empty())
    throw std::invalid_argument("verify_h: probe exponent sets must be non-empty");
}

}  // namespace

HReport verify_h(const VolterraKernel& k, const SimplexGrid& g,
                 const std::vector<double>& etas, const std::vector<double>& betas)
{
  check_inputs(g, etas, betas);
  std::vector<Accum> cols(g.N);
#pragma omp parallel for schedule(dynamic)
  for (int e = 0; e < g.N; ++e) scan_column(k, g, etas, betas, e, cols[e]);
  return finish(cols);
}

HReport verify_h_serial(const VolterraKernel& k, const SimplexGrid& g,
                        const std::vector<double>& etas, const std::vector<double>& betas)
{
  check_inputs(g, etas, betas);
  std::vector<Accum> cols(g.N);
  for (int e = 0; e < g.N; ++e) scan_column(k, g, etas, betas, e, cols[e]);
  return finish(cols);
}

const std::vector<double>& default_probe_exponents()
{
  static const std::vector<double> p = {0.0, 0.25, 0.5, 0.75, 1.0};
  return p;
}

}  // namespace volterra
