#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "volterra/convolution.hpp"
#include "volterra/lift.hpp"
#include "oracles.hpp"

using namespace volterra;

namespace {

struct Stack {
  SimplexGrid g;
  VolterraLevel z1, z2;
};

Stack sine_stack(int depth = 3, double gamma = 0.25)
{
  Stack s;
  s.g = make_uniform(1.0, depth);
  s.z1 = lift_level1(fractional_kernel(gamma), sine_path(s.g), s.g, {10, 1e-12});
  s.z2 = extend({&s.z1}, 2, 1.0 - gamma, {12, 1e-12});
  return s;
}

}  // namespace

TEST_CASE("grid sewing reproduces additive germs exactly")
{
  const SimplexGrid g = make_uniform(1.0, 4);
  auto germ = [&](int a, int b) { return Value{g.points[b] - g.points[a]}; };
  const SewingResult r = sew_grid(germ, 1, 3, 13, {8, 1e-14});
  CHECK(r.converged);
  CHECK(r.value[0] == doctest::Approx(g.points[13] - g.points[3]).epsilon(1e-15));
  CHECK(sew_grid(germ, 1, 5, 5).value[0] == 0.0);
  CHECK_THROWS_AS(sew_grid(germ, 1, 7, 3), std::invalid_argument);
}

TEST_CASE("discrete convolution is bilinear")
{
  oracles::Rng rng(7);
  const int n = 6;
  std::vector<Value> zc(n), ya(n), yb(n);
  for (int i = 0; i < n; ++i) {
    zc[i] = {rng.uniform(), rng.uniform()};
    ya[i] = {rng.uniform()};
    yb[i] = {rng.uniform()};
  }
  auto z = [&](int l) { return zc[l]; };
  const Value va = conv1_discrete(z, [&](int l) { return ya[l]; }, 0, n, 2, 1);
  const Value vb = conv1_discrete(z, [&](int l) { return yb[l]; }, 0, n, 2, 1);
  const Value vc = conv1_discrete(z, [&](int l) {
    return Value{2.0 * ya[l][0] - 0.5 * yb[l][0]};
  }, 0, n, 2, 1);
  for (int c = 0; c < 2; ++c)
    CHECK(vc[c] == doctest::Approx(2.0 * va[c] - 0.5 * vb[c]).epsilon(1e-14));
}

TEST_CASE("extension at grid resolution satisfies the Chen identity exactly")
{
  const Stack s = sine_stack();
  const double z2scale = 1.0;
  for (int ik = 2; ik < s.g.N; ik += 3)
    for (int it = 2; it <= ik; it += 2)
      for (int is = 0; is < it - 1; is += 2) {
        const int iu = (is + it) / 2;
        CHECK(chen_residual(s.z1, s.z2, is, iu, it, ik) <= 1e-14 * z2scale);
      }
}

TEST_CASE("second-level convolution against a constant is exact")
{
  const Stack s = sine_stack();
  const Value c{2.5};
  auto y = [&](double, double) { return c; };
  const int is = 1, it = 6, ik = 8;
  const Value v = conv2(s.z2, s.z1, y, 1, is, it, ik, {8, 1e-12});
  const Value want = s.z2.value(is, it, ik);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == doctest::Approx(2.5 * want[0]).epsilon(1e-13));
}

TEST_CASE("second-level convolution refuses corrupted levels")
{
  Stack s = sine_stack();
  for (double& v : s.z2.data) v += 0.05;  // break additivity relations
  auto y = [](double, double) { return Value{1.0}; };
  CHECK_THROWS_AS(conv2(s.z2, s.z1, y, 1, 0, 6, 8, {8, 1e-12}), std::runtime_error);
}

TEST_CASE("extension scales quadratically with the driver")
{
  Stack s = sine_stack();
  const double c = 1.75;
  VolterraLevel scaled = s.z1;
  for (double& v : scaled.data) v *= c;
  const VolterraLevel w2 = extend({&scaled}, 2, 0.75, {12, 1e-12});
  REQUIRE(w2.data.size() == s.z2.data.size());
  for (std::size_t i = 0; i < w2.data.size(); ++i)
    CHECK(w2.data[i] == doctest::Approx(c * c * s.z2.data[i]).epsilon(1e-12));
}

TEST_CASE("extension preconditions")
{
  const Stack s = sine_stack();
  CHECK_THROWS_AS(extend({&s.z1}, 2, 0.4), std::invalid_argument);        // 2*rho <= 1
  CHECK_THROWS_AS(extend({&s.z1}, 3, 1.0), std::invalid_argument);        // stack mismatch
  CHECK_THROWS_AS(extend({&s.z1, &s.z2}, 4, 1.0), std::invalid_argument); // level cap
  // The low-regularity refusal is waived for certified C^1 drivers.
  const VolterraLevel ok = extend({&s.z1}, 2, 0.4, {10, 1e-10}, {}, true);
  CHECK(ok.level == 2);
}

TEST_CASE("deep single-tuple extension matches nested quadrature")
{
  const double gamma = 0.5;
  auto z1c = [&](double s, double t, double tau) {
    return Value{oracles::z1_linear_fractional(gamma, s, t, tau)};
  };
  const SewingResult r = extend2_at(z1c, 1, 0.0, 1.0, 1.0);
  CHECK(r.value[0] == doctest::Approx(M_PI).epsilon(1e-5));

  const SimplexGrid g = make_uniform(1.0, 2);
  const auto zs = smooth_signature(fractional_kernel(gamma), linear_path(g), 2,
                                   0.0, 0.75, 1.0, 12);
  const SewingResult q = extend2_at(z1c, 1, 0.0, 0.75, 1.0);
  CHECK(q.value[0] == doctest::Approx(zs[1][0]).epsilon(1e-5));
}

TEST_CASE("continuous and grid-resolution extensions agree in the limit")
{
  const double gamma = 0.3;
  auto z1c = [&](double s, double t, double tau) {
    return Value{oracles::z1_linear_fractional(gamma, s, t, tau)};
  };
  const SimplexGrid g = make_uniform(1.0, 5);
  VolterraLevel z1 = make_level(1, 1, g, Provenance::Quadrature);
  for (int k = 0; k < g.N; ++k)
    for (int j = 0; j <= k; ++j)
      for (int i = 0; i <= j; ++i)
        z1.set(i, j, k, i == j ? Value{0.0}
                               : z1c(g.points[i], g.points[j], g.points[k]));
  const VolterraLevel z2 = extend({&z1}, 2, 0.7, {12, 1e-12});
  // The grid-resolution sum is a left-point scheme: first-order in the
  // mesh, so only coarse agreement is expected at depth 5.
  for (auto [it, ik] : {std::pair{24, 32}, {32, 32}}) {
    const SewingResult deep =
        extend2_at(z1c, 1, 0.0, g.points[it], g.points[ik], {16, 1e-12});
    CHECK(z2.value(0, it, ik)[0] == doctest::Approx(deep.value[0]).epsilon(5e-2));
  }
}
