#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "volterra/solver.hpp"
#include "oracles.hpp"

using namespace volterra;

namespace {

SolveConfig classical_config(int depth, const VectorField& f, const Value& y0)
{
  // Unit kernel + linear driver: the stepper reduces to a classical
  // one-step ODE scheme.
  SolveConfig cfg;
  cfg.grid = make_uniform(1.0, depth);
  cfg.d = 1;
  const double h = cfg.grid.mesh();
  cfg.z1cell = [h](int, int) { return Value{h}; };
  cfg.z2cell = [h](int, int) { return Value{0.5 * h * h}; };
  cfg.f = f;
  cfg.y0 = y0;
  cfg.rho = 1.0;
  return cfg;
}

}  // namespace

TEST_CASE("zero field freezes the state exactly")
{
  const SolveConfig cfg = classical_config(4, zero_field(2, 1), {1.5, -0.25});
  const Solution sol = solve(cfg);
  CHECK(!sol.blew_up);
  for (int tau = 0; tau < sol.N; ++tau)
    for (int t = 0; t <= tau; ++t) {
      CHECK(sol.at(t, tau)[0] == 1.5);
      CHECK(sol.at(t, tau)[1] == -0.25);
    }
}

TEST_CASE("the initial column is constant")
{
  const SolveConfig cfg = classical_config(3, sin_field(1, 1), {1.0});
  const Solution sol = solve(cfg);
  for (int tau = 0; tau < sol.N; ++tau) CHECK(sol.at(0, tau)[0] == 1.0);
}

TEST_CASE("classical reduction matches a high-resolution ODE solve")
{
  const SolveConfig cfg = classical_config(10, sin_field(1, 1), {1.0});
  const Solution sol = solve(cfg);
  const double want = oracles::rk4([](double y) { return std::sin(y); }, 1.0, 1.0, 1 << 16);
  CHECK(sol.diagonal(sol.N - 1)[0] == doctest::Approx(want).epsilon(1e-4));
}

TEST_CASE("restarting from a stored column reproduces the march bitwise")
{
  const SolveConfig cfg = classical_config(4, sin_field(1, 1), {0.7});
  const Solution full = solve(cfg);
  const int t0 = full.N / 2;
  std::vector<Value> column(full.N);
  for (int tau = t0; tau < full.N; ++tau) column[tau] = full.at(t0, tau);
  const Solution tail = solve_from(cfg, t0, column);
  for (int tau = t0; tau < full.N; ++tau)
    for (int t = t0; t <= tau; ++t)
      CHECK(tail.at(t, tau)[0] == full.at(t, tau)[0]);
}

TEST_CASE("first-order diagnostic scheme scales linearly with the driver")
{
  SolveConfig cfg = classical_config(4, constant_field({2.0}, 1), {0.0});
  cfg.scheme = Scheme::Level1Euler;
  cfg.z2cell = {};
  const Solution a = solve(cfg);
  const double h = cfg.grid.mesh();
  cfg.z1cell = [h](int, int) { return Value{3.0 * h}; };
  const Solution b = solve(cfg);
  const int n = a.N - 1;
  CHECK(a.diagonal(n)[0] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(b.diagonal(n)[0] == doctest::Approx(3.0 * a.diagonal(n)[0]).epsilon(1e-13));
}

TEST_CASE("low-regularity refusal for the second-order scheme")
{
  SolveConfig cfg = classical_config(3, sin_field(1, 1), {1.0});
  cfg.rho = 0.3;
  CHECK_THROWS_AS(solve(cfg), std::invalid_argument);
  cfg.scheme = Scheme::Level1Euler;
  cfg.z2cell = {};
  CHECK(!solve(cfg).blew_up);  // the diagnostic scheme has no such floor
}

TEST_CASE("picard iteration shares the stepper's fixed point")
{
  const SolveConfig cfg = classical_config(5, sin_field(1, 1), {1.0});
  const Solution direct = solve(cfg);
  const PicardResult pr = picard_iterate(cfg, 40, 1e-12);
  CHECK(pr.converged);
  CHECK(!pr.diverged);
  double worst = 0.0;
  for (int tau = 0; tau < direct.N; ++tau)
    for (int t = 0; t <= tau; ++t)
      worst = std::max(worst, std::abs(pr.sol.at(t, tau)[0] - direct.at(t, tau)[0]));
  CHECK(worst <= 1e-10);
}

TEST_CASE("picard converges immediately for a frozen field")
{
  const SolveConfig cfg = classical_config(4, zero_field(1, 1), {2.0});
  const PicardResult pr = picard_iterate(cfg, 10, 1e-14);
  CHECK(pr.converged);
  CHECK(pr.iters <= 2);
}

TEST_CASE("picard contraction factors shrink with the horizon")
{
  auto final_factor = [](double T) {
    SolveConfig cfg;
    cfg.grid = make_uniform(T, 5);
    cfg.d = 1;
    const double h = cfg.grid.mesh();
    cfg.z1cell = [h](int, int) { return Value{h}; };
    cfg.z2cell = [h](int, int) { return Value{0.5 * h * h}; };
    cfg.f = sin_field(1, 1);
    cfg.y0 = {1.0};
    const PicardResult pr = picard_iterate(cfg, 60, 1e-12);
    REQUIRE(pr.converged);
    REQUIRE(pr.factors.size() >= 2);
    return pr.factors[1];
  };
  CHECK(final_factor(0.25) < final_factor(1.0));
}

TEST_CASE("empirical order of the classical reduction")
{
  const double want =
      oracles::rk4([](double y) { return std::sin(y); }, 1.0, 1.0, 1 << 16);
  auto err = [&](int L) {
    const SolveConfig cfg = classical_config(L, sin_field(1, 1), {1.0});
    const Solution sol = solve(cfg);
    return std::abs(sol.diagonal(sol.N - 1)[0] - want);
  };
  const ConvergenceTable tab = convergence_study(err, 5, 9);
  CHECK(tab.rows.size() == 5);
  CHECK(tab.observed_order >= 1.5);

  auto zero_err = [](int) { return 0.0; };
  CHECK(convergence_study(zero_err, 3, 5).exact);
}

TEST_CASE("blow-up guard aborts the march")
{
  SolveConfig cfg = classical_config(4, constant_field({50.0}, 1), {0.0});
  cfg.blowup_factor = 3.0;
  const Solution sol = solve(cfg);
  CHECK(sol.blew_up);
  CHECK(sol.blowup_step > 0);
  CHECK(sol.blowup_step < sol.N);
}
