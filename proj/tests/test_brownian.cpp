#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "volterra/brownian.hpp"

using namespace volterra;

TEST_CASE("unit kernel first level is column independent")
{
  BrownianBatch b;
  b.n_paths = 1;
  b.fine_depth = 6;
  const SimplexGrid g = make_uniform(1.0, 4);
  const PathLevels pl = sample_lift(b, 0, unit_kernel(), g);
  // With k == 1 the lift is the plain increment: no tau dependence.
  for (int j = 1; j < g.N; ++j)
    for (int i = 0; i < j; ++i) {
      const Value ref = pl.z1.value(i, j, j);
      for (int k = j; k < g.N; ++k) CHECK(pl.z1.value(i, j, k)[0] == ref[0]);
    }
}

TEST_CASE("sampling is deterministic in the seed and path index")
{
  BrownianBatch b;
  b.seed = 1234;
  b.n_paths = 3;
  b.fine_depth = 6;
  b.d = 2;
  const SimplexGrid g = make_uniform(1.0, 3);
  const VolterraKernel k = fractional_kernel(0.2);
  const PathLevels a = sample_lift(b, 2, k, g);
  const PathLevels c = sample_lift(b, 2, k, g);
  CHECK(a.z1.data == c.z1.data);
  CHECK(a.z2.data == c.z2.data);
  const PathLevels other = sample_lift(b, 1, k, g);
  CHECK(a.z1.data != other.z1.data);
}

TEST_CASE("the discrete Chen identity holds to machine precision")
{
  BrownianBatch b;
  b.n_paths = 2;
  b.fine_depth = 6;
  b.d = 2;
  const SimplexGrid g = make_uniform(1.0, 4);
  CHECK(chen_exact_check(b, fractional_kernel(0.2), g, 2) <= 1e-12);
  CHECK(chen_exact_check(b, unit_kernel(), g, 2) <= 1e-12);
}

TEST_CASE("parameter validation")
{
  BrownianBatch b;
  b.fine_depth = 5;
  const SimplexGrid g = make_uniform(1.0, 3);
  CHECK_THROWS_AS(sample_lift(b, 0, fractional_kernel(0.25), g),
                  std::invalid_argument);  // second level needs gamma < 1/4
  CHECK_THROWS_AS(sample_lift(b, 0, fractional_kernel(0.2), make_uniform(1.0, 6)),
                  std::invalid_argument);  // coarse grid finer than the fine one
  CHECK_THROWS_AS(sample_lift(b, 0, fractional_kernel(0.2), make_uniform(2.0, 3)),
                  std::invalid_argument);  // horizon mismatch
}

TEST_CASE("moment statistics sit inside the confidence band")
{
  BrownianBatch b;
  b.seed = 7;
  b.n_paths = 4000;
  b.d = 2;
  b.fine_depth = 7;
  const SimplexGrid g = make_uniform(1.0, 4);
  const VolterraKernel k = fractional_kernel(0.2);
  const std::vector<TupleSpec> tuples{{0, 8, 12}, {2, 6, 16}, {4, 12, 14}};
  const TupleSamples s = sample_tuple_values(b, k, g, tuples);
  REQUIRE(s.z1.size() == tuples.size());
  REQUIRE(s.z1[0].size() == std::size_t(b.n_paths));

  for (const MCStat& st : isometry_check(s, k, g)) {
    CHECK(st.target > 0.0);
    CHECK(std::abs(st.z_score) <= 4.0);
  }
  for (const MCStat& st : mean_zero_check(s, k, g)) CHECK(std::abs(st.z_score) <= 4.0);
  for (const MCStat& st : cross_correlation_check(s)) CHECK(std::abs(st.z_score) <= 4.0);
}

TEST_CASE("second-moment shape bound transfers to held-out tuples")
{
  BrownianBatch b;
  b.seed = 11;
  b.n_paths = 2000;
  b.d = 2;
  b.fine_depth = 7;
  const double gamma = 0.2;
  const SimplexGrid g = make_uniform(1.0, 4);
  const std::vector<TupleSpec> tuples{{0, 4, 8},  {2, 8, 12}, {4, 10, 16},
                                      {1, 5, 9},  {0, 8, 16}, {6, 10, 14},
                                      {2, 6, 10}, {3, 9, 15}};
  const TupleSamples s = sample_tuple_values(b, fractional_kernel(gamma), g, tuples);
  const LpBoundResult r = lp_bound_check(s, 2, gamma, g, 5);
  CHECK(r.C > 0.0);
  CHECK(r.train_ratios.size() == 5);
  CHECK(r.heldout_ratios.size() == 3);
  CHECK(r.ok);
  CHECK(r.max_heldout <= 1.0);
}
