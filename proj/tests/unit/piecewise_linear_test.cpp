#include <gtest/gtest.h>

#include <crowdalloc/errors.hpp>
#include <crowdalloc/piecewise_linear.hpp>
#include <crowdalloc/rng.hpp>

#include <algorithm>
#include <cmath>

using namespace crowdalloc;

namespace {

PiecewiseLinear random_pwl(Rng& rng, int knots) {
  std::vector<double> xs{0.0}, ys{portable_unit(rng)};
  for (int i = 1; i < knots - 1; ++i) xs.push_back(portable_unit(rng) * 0.5);
  std::sort(xs.begin() + 1, xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  xs.push_back(0.5);
  ys.resize(xs.size());
  for (std::size_t i = 1; i < ys.size(); ++i) ys[i] = portable_unit(rng);
  return PiecewiseLinear(xs, ys);
}

}  // namespace

TEST(PiecewiseLinear, EvaluatesAndInterpolates) {
  PiecewiseLinear f({0.0, 0.2, 0.5}, {1.0, 0.6, 0.6});
  EXPECT_DOUBLE_EQ(f(0.0), 1.0);
  EXPECT_DOUBLE_EQ(f(0.1), 0.8);
  EXPECT_DOUBLE_EQ(f(0.35), 0.6);
  EXPECT_DOUBLE_EQ(f(0.5), 0.6);
  EXPECT_DOUBLE_EQ(PiecewiseLinear::constant(0.75, 1.0)(0.3), 0.75);
}

TEST(PiecewiseLinear, RejectsBadKnots) {
  EXPECT_THROW(PiecewiseLinear({0.0, 0.3, 0.2}, {0, 0, 0}), ParameterError);
  EXPECT_THROW(PiecewiseLinear({0.0, 0.3}, {0}), ParameterError);
  EXPECT_THROW(PiecewiseLinear({0.1, 0.3}, {0, 0}), ParameterError);
}

TEST(PiecewiseLinear, CombineMaxMinusIdentityPointwise) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    PiecewiseLinear f = random_pwl(rng, 2 + trial % 7), g = random_pwl(rng, 2 + trial % 5);
    PiecewiseLinear c = combine(0.3, f, -1.7, g), m = pointwise_max(f, g), d = minus_identity(f);
    for (int i = 0; i <= 100; ++i) {
      double x = 0.005 * i;
      EXPECT_NEAR(c(x), 0.3 * f(x) - 1.7 * g(x), 1e-12);
      EXPECT_NEAR(m(x), std::max(f(x), g(x)), 1e-12);
      EXPECT_NEAR(d(x), f(x) - x, 1e-12);
    }
  }
}

TEST(PiecewiseLinear, SimplifyDropsCollinearKnots) {
  PiecewiseLinear f({0.0, 0.1, 0.2, 0.3, 0.5}, {1.0, 0.9, 0.8, 0.7, 0.7});
  f.simplify(1e-14);
  EXPECT_EQ(f.knots(), 3u);
  EXPECT_NEAR(f(0.15), 0.85, 1e-15);
  EXPECT_NEAR(f(0.4), 0.7, 1e-15);
}
