// Timing comparison of the OpenMP kernels against their serial twins,
// with a bitwise agreement check on each pair.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "volterra/hoelder.hpp"
#include "volterra/kernel.hpp"
#include "volterra/lift.hpp"
#include "volterra/quadrature.hpp"

using namespace volterra;
using clk = std::chrono::steady_clock;

namespace {

double secs(clk::time_point a) { return std::chrono::duration<double>(clk::now() - a).count(); }

int g_mismatches = 0;

void row(const char* name, double tp, double ts, bool identical)
{
  std::printf("%-28s parallel %8.3fs   serial %8.3fs   speedup %5.2fx   %s\n", name, tp,
              ts, ts / tp, identical ? "bit-identical" : "MISMATCH");
  if (!identical) ++g_mismatches;
}

}  // namespace

int main()
{
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled: both columns run the same code path\n\n");
#endif

  {
    const SimplexGrid g = make_uniform(1.0, 5);
    const VolterraKernel k = tempered_fractional_kernel(0.25, 1.5);
    const auto etas = default_probe_exponents();
    const auto t0 = clk::now();
    const HReport a = verify_h(k, g, etas, etas);
    const double tp = secs(t0);
    const auto t1 = clk::now();
    const HReport b = verify_h_serial(k, g, etas, etas);
    const double ts = secs(t1);
    bool same = a.rows.size() == b.rows.size();
    for (std::size_t i = 0; same && i < a.rows.size(); ++i)
      same = a.rows[i].constant == b.rows[i].constant;
    row("inequality verifier", tp, ts, same);
  }

  {
    const SimplexGrid g = make_uniform(1.0, 7);
    const VolterraKernel k = fractional_kernel(0.25);
    const DrivingPath x = sine_path(g);
    const auto t0 = clk::now();
    const VolterraLevel a = lift_level1(k, x, g, {8, 1e-10});
    const double tp = secs(t0);
    const auto t1 = clk::now();
    const VolterraLevel b = lift_level1_serial(k, x, g, {8, 1e-10});
    const double ts = secs(t1);
    row("level-1 lift", tp, ts, a.data == b.data);
  }

  {
    const int F = 1 << 12;
    ProductQuad pq(fractional_kernel(0.3), 0.0, 1.0 / F, F);
    std::vector<double> f(std::size_t(F) + 1);
    for (int i = 0; i <= F; ++i) f[i] = std::sin(3.0 * pq.node(i));
    const auto t0 = clk::now();
    const auto a = pq.integrate_to_nodes(f, 1);
    const double tp = secs(t0);
    const auto t1 = clk::now();
    const auto b = pq.integrate_to_nodes_serial(f, 1);
    const double ts = secs(t1);
    row("product quadrature", tp, ts, a == b);
  }

  return g_mismatches;
}
