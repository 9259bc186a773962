#pragma once

// Product integration on a uniform fine mesh: the singular factor
// (u - r)^{-gamma} is integrated exactly against piecewise-linear
// interpolants of everything smooth (including the tempering factor
// of a TemperedFractional kernel).  Naive quadrature would lose the
// (1-gamma) convergence rate at the simplex corners.

#include <cstddef>
#include <vector>

#include "volterra/kernel.hpp"
#include "volterra/tensor.hpp"

namespace volterra {

class ProductQuad {
 public:
  // Mesh r_i = s + i*h, i = 0..F (F intervals on [s, s + F*h]).
  ProductQuad(const VolterraKernel& k, double s, double h, int F);

  double s() const { return s_; }
  double h() const { return h_; }
  int intervals() const { return F_; }
  double node(int i) const { return s_ + h_ * double(i); }

  // Q(j) = int_s^{r_j} k(r_j, r) f(r) dr for every node j, where f is
  // the piecewise-linear interpolant of the given node values (width w
  // per node, flat layout f[i*w + c]).  Parallel over target nodes
  // with a serial twin that produces bit-identical output.
  std::vector<double> integrate_to_nodes(const std::vector<double>& f, std::size_t w) const;
  std::vector<double> integrate_to_nodes_serial(const std::vector<double>& f, std::size_t w) const;

  // int_{r_a}^{r_b} k(tau, r) f(r) dr for an arbitrary target tau >= r_b
  // (tau == r_b allowed: the singular factor stays integrable).
  Value integral_at(double tau, const std::vector<double>& f, std::size_t w,
                    int a, int b) const;
  Value integral_at(double tau, const std::vector<double>& f, std::size_t w) const
  {
    return integral_at(tau, f, w, 0, F_);
  }

 private:
  void accumulate_node(const std::vector<double>& f, std::size_t w, int j, double* out) const;

  VolterraKernel kern_;
  double s_ = 0.0, h_ = 0.0;
  int F_ = 0;
  double gamma_ = 0.0;
  // (m h)^{1-gamma}, (m h)^{2-gamma} and exp(-lambda m h) tables, m = 0..F.
  std::vector<double> pw1_, pw2_, damp_;
};

}  // namespace volterra
