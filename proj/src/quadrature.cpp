#include "volterra/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace volterra {

ProductQuad::ProductQuad(const VolterraKernel& k, double s, double h, int F)
    : kern_(k), s_(s), h_(h), F_(F), gamma_(k.gamma)
{
  if (!(h > 0.0) || F < 1) throw std::invalid_argument("ProductQuad: bad mesh");
  pw1_.resize(F + 1);
  pw2_.resize(F + 1);
  damp_.resize(F + 1);
  for (int m = 0; m <= F; ++m) {
    const double x = double(m) * h;
    pw1_[m] = std::pow(x, 1.0 - gamma_);
    pw2_[m] = std::pow(x, 2.0 - gamma_);
    damp_[m] = (kern_.kind == KernelKind::TemperedFractional)
                   ? std::exp(-kern_.lambda * x)
                   : 1.0;
  }
}

void ProductQuad::accumulate_node(const std::vector<double>& f, std::size_t w, int j,
                                  double* out) const
{
  // int_s^{r_j} (r_j - r)^{-gamma} * [damp * f]_lin(r) dr via exact
  // first two moments of the singular factor on each interval.
  const double c1 = 1.0 / (1.0 - gamma_);
  const double c2 = 1.0 / (2.0 - gamma_);
  for (int i = 0; i < j; ++i) {
    const int m = j - i;
    const double M0 = (pw1_[m] - pw1_[m - 1]) * c1;
    const double M1 = double(m) * h_ * M0 - (pw2_[m] - pw2_[m - 1]) * c2;
    const double da = damp_[m], db = damp_[m - 1];
    const double* fa = f.data() + std::size_t(i) * w;
    const double* fb = f.data() + std::size_t(i + 1) * w;
    for (std::size_t c = 0; c < w; ++c) {
      const double a = da * fa[c];
      const double b = db * fb[c];
      out[c] += a * M0 + (b - a) * (M1 / h_);
    }
  }
}

std::vector<double> ProductQuad::integrate_to_nodes(const std::vector<double>& f,
                                                    std::size_t w) const
{
  if (f.size() != std::size_t(F_ + 1) * w)
    throw std::invalid_argument("integrate_to_nodes: node array has wrong size");
  std::vector<double> out(std::size_t(F_ + 1) * w, 0.0);
#pragma omp parallel for schedule(static)
  for (int j = 1; j <= F_; ++j)
    accumulate_node(f, w, j, out.data() + std::size_t(j) * w);
  return out;
}

std::vector<double> ProductQuad::integrate_to_nodes_serial(const std::vector<double>& f,
                                                           std::size_t w) const
{
  if (f.size() != std::size_t(F_ + 1) * w)
    throw std::invalid_argument("integrate_to_nodes: node array has wrong size");
  std::vector<double> out(std::size_t(F_ + 1) * w, 0.0);
  for (int j = 1; j <= F_; ++j)
    accumulate_node(f, w, j, out.data() + std::size_t(j) * w);
  return out;
}

Value ProductQuad::integral_at(double tau, const std::vector<double>& f, std::size_t w,
                               int a, int b) const
{
  if (f.size() < std::size_t(b + 1) * w)
    throw std::invalid_argument("integral_at: node array too short");
  if (!(tau >= node(b))) throw std::invalid_argument("integral_at: need tau >= right endpoint");
  Value out = zeros(w);
  const double c1 = 1.0 / (1.0 - gamma_);
  const double c2 = 1.0 / (2.0 - gamma_);
  const bool tempered = kern_.kind == KernelKind::TemperedFractional;
  for (int i = a; i < b; ++i) {
    const double dl = tau - node(i);
    const double dr = tau - node(i + 1);
    const double M0 = (std::pow(dl, 1.0 - gamma_) - std::pow(dr, 1.0 - gamma_)) * c1;
    const double M1 = dl * M0 - (std::pow(dl, 2.0 - gamma_) - std::pow(dr, 2.0 - gamma_)) * c2;
    const double da = tempered ? std::exp(-kern_.lambda * dl) : 1.0;
    const double db = tempered ? std::exp(-kern_.lambda * dr) : 1.0;
    const double* fa = f.data() + std::size_t(i) * w;
    const double* fb = f.data() + std::size_t(i + 1) * w;
    for (std::size_t c = 0; c < w; ++c) {
      const double va = da * fa[c];
      const double vb = db * fb[c];
      out[c] += va * M0 + (vb - va) * (M1 / h_);
    }
  }
  return out;
}

}  // namespace volterra
