#include <gtest/gtest.h>

#include <crowdalloc/errors.hpp>
#include <crowdalloc/index_table.hpp>
#include <crowdalloc/lagrange_dp.hpp>

#include <cmath>

using namespace crowdalloc;

namespace {

SingleTaskParams params(double a, double b, int budget, int cap) {
  SingleTaskParams p;
  p.alpha0 = a;
  p.beta0 = b;
  p.budget = budget;
  p.worker_cap = cap;
  return p;
}

}  // namespace

TEST(IndexTable, AgreesWithBisectionEverywhere) {
  for (auto p : {params(1, 1, 5, 5), params(2, 1, 6, 4), params(1.58333, 1.58333, 6, 6), params(1, 3, 4, 2)}) {
    const IndexTable table = IndexTable::build(p);
    EXPECT_EQ(table.non_monotone_states(), 0u);
    const int cap = p.total_cap();
    for (int u = 0; u <= p.budget; ++u)
      for (int pos = 0; pos <= cap; ++pos)
        for (int neg = 0; pos + neg <= cap; ++neg)
          for (int w = 0; pos + neg + w <= cap; ++w) {
            SingleTaskDpState s{pos, neg, w, u};
            EXPECT_NEAR(table.lambda_star(s), index_lambda_star(s, p), 2e-6)
                << pos << ' ' << neg << ' ' << w << ' ' << u;
          }
  }
}

TEST(IndexTable, StartValueFunctionMatchesScalarSolves) {
  auto p = params(1, 1, 12, 12);
  const IndexTable table = IndexTable::build(p);
  for (int i = 0; i <= 50; ++i) {
    double l = 0.01 * i;
    EXPECT_NEAR(table.start_value_function()(l), solve_single_task(p, l).start_value(), 1e-10) << l;
  }
}

TEST(IndexTable, FreshTaskIndexAtDefaults) {
  auto p = params(1, 1, 12, 12);
  const IndexTable table = IndexTable::build(p);
  for (int u = 1; u <= 12; ++u) EXPECT_NEAR(table.lambda_star({0, 0, 0, u}), 0.25, 1e-9) << u;
}

TEST(IndexTable, MonotoneAtDeskScaleDefaults) {
  for (int k : {10, 100}) {
    const int budget = static_cast<int>(std::ceil(1.2 * k));
    auto p = params(1, 1, budget, std::min(budget, 15));
    EXPECT_EQ(IndexTable::build(p).non_monotone_states(), 0u) << k;
  }
}

TEST(IndexTable, DomainAndConventions) {
  auto p = params(1, 1, 4, 3);
  const IndexTable table = IndexTable::build(p);
  EXPECT_EQ(table.lambda_star({0, 0, 0, 0}), 0.0);
  EXPECT_EQ(table.lambda_star({1, 1, 1, 2}), 0.0);
  EXPECT_THROW(table.lambda_star({3, 1, 0, 1}), ParameterError);
  EXPECT_THROW(table.lambda_star({0, 0, 0, 5}), ParameterError);
}
