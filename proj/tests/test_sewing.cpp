#include <doctest.h>

#include <cmath>

#include "volterra/kernel.hpp"
#include "volterra/sewing.hpp"

using namespace volterra;

namespace {

Integrand additive_integrand()
{
  // Xi(s,t,tau) = (t - s) * tau is additive in (s,t): sewing must
  // reproduce it exactly with zero deltas at every level.
  Integrand xi;
  xi.value_size = 1;
  xi.eval = [](double s, double t, double tau) { return Value{(t - s) * tau}; };
  return xi;
}

Integrand leftpoint_integrand(double gamma)
{
  // Left-point germ k(tau, s) x_{ts} for the sine driver.
  Integrand xi;
  xi.value_size = 1;
  xi.eval = [gamma](double s, double t, double tau) {
    return Value{std::pow(tau - s, -gamma) * (std::sin(t) - std::sin(s))};
  };
  return xi;
}

}  // namespace

TEST_CASE("additive integrands sew exactly")
{
  const SewingResult r = sew(additive_integrand(), 0.25, 0.75, 1.0);
  CHECK(r.converged);
  CHECK(r.value[0] == doctest::Approx(0.5).epsilon(1e-15));
  const DecayFit fit = check_decay(r, 1.5);
  CHECK(fit.exact);
  CHECK(fit.claim_ok);
}

TEST_CASE("degenerate interval")
{
  const SewingResult r = sew(leftpoint_integrand(0.25), 0.5, 0.5, 1.0);
  CHECK(r.converged);
  CHECK(r.value[0] == 0.0);
  CHECK(r.deltas.empty());
}

TEST_CASE("sewing is linear in the integrand")
{
  // Force full refinement so both runs traverse identical partitions.
  const SewParams deep{10, 1e-300};
  const Integrand a = leftpoint_integrand(0.25);
  Integrand b;
  b.value_size = 1;
  b.eval = [](double s, double t, double tau) {
    return Value{(tau - t) * (t * t - s * s)};
  };
  Integrand combo;
  combo.value_size = 1;
  combo.eval = [&](double s, double t, double tau) {
    Value v = a.eval(s, t, tau);
    const Value w = b.eval(s, t, tau);
    v[0] = 2.0 * v[0] - 3.0 * w[0];
    return v;
  };
  const double va = sew(a, 0.1, 0.6, 0.9, deep).value[0];
  const double vb = sew(b, 0.1, 0.6, 0.9, deep).value[0];
  const double vc = sew(combo, 0.1, 0.6, 0.9, deep).value[0];
  CHECK(vc == doctest::Approx(2.0 * va - 3.0 * vb).epsilon(1e-13));
}

TEST_CASE("left-point germ deltas decay at the predicted rate")
{
  const double gamma = 0.25;
  const SewExponents ex = sewing_decay_exponents(1.0, gamma);
  CHECK(ex.beta == doctest::Approx(1.6));
  CHECK(ex.kappa == doctest::Approx(0.85));

  const SewParams deep{12, 1e-300};
  for (double tau : {1.0, 0.7}) {
    const SewingResult r = sew(leftpoint_integrand(gamma), 0.1, 0.7, tau, deep);
    const DecayFit fit = check_decay(r, ex.beta);
    CHECK(!fit.exact);
    CHECK(fit.claim_ok);
    CHECK(fit.slope <= -(ex.beta - 1.0) + 0.15);
  }
}

TEST_CASE("exponent admissibility")
{
  CHECK_THROWS_AS(sewing_decay_exponents(0.25, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(sewing_decay_exponents(0.3, 0.5), std::invalid_argument);
}

TEST_CASE("delta operator measures failure of additivity")
{
  auto g = [](double s, double t, double tau) {
    return Value{(t - s) * (t - s) * tau};
  };
  const Value v = delta(g, 0.0, 0.25, 1.0, 1.0);
  // (t-s)^2 is not additive: delta = 2 u t - 2 u s - ... = 2(u-s)(t-u).
  CHECK(v[0] == doctest::Approx(2.0 * 0.25 * 0.75));
  auto lin = [](double s, double t, double) { return Value{t - s}; };
  CHECK(delta(lin, 0.0, 0.5, 1.0, 1.0)[0] == 0.0);
  CHECK_THROWS_AS(delta(lin, 0.5, 0.2, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("sewing argument validation")
{
  CHECK_THROWS_AS(sew(additive_integrand(), 0.5, 0.2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sew(additive_integrand(), 0.0, 0.5, 0.4), std::invalid_argument);
  SewParams bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(sew(additive_integrand(), 0.0, 0.5, 1.0, bad), std::invalid_argument);
}
