#include <gtest/gtest.h>

#include <crowdalloc/belief.hpp>
#include <crowdalloc/errors.hpp>
#include <crowdalloc/lagrange_dp.hpp>

#include <vector>

using namespace crowdalloc;

namespace {

SingleTaskParams params(double a, double b, int budget, int cap, double d = 0.5) {
  SingleTaskParams p;
  p.alpha0 = a;
  p.beta0 = b;
  p.threshold = d;
  p.budget = budget;
  p.worker_cap = cap;
  return p;
}

template <class F>
void for_each_state(const SingleTaskParams& p, F f) {
  const int cap = std::max(1, p.total_cap());
  for (int u = 0; u <= p.budget; ++u)
    for (int pos = 0; pos <= cap; ++pos)
      for (int neg = 0; pos + neg <= cap; ++neg)
        for (int w = 0; pos + neg + w <= cap; ++w) f(SingleTaskDpState{pos, neg, w, u});
}

}  // namespace

TEST(SolveSingleTask, Examples) {
  EXPECT_NEAR(solve_single_task(params(1, 1, 0, 1), 0.0).start_value(), 0.5, 1e-12);
  for (double r : {0.1, 2.0}) {
    auto p = params(1, 1, 1, 1);
    p.arrival_rate = r;
    p.completion_rate = 0.7;
    EXPECT_NEAR(solve_single_task(p, 0.0).start_value(), 0.75, 1e-12);
  }
  for (auto p : {params(1, 1, 5, 5), params(2, 1, 6, 3), params(1.6, 3.1, 8, 8)}) {
    auto t = solve_single_task(p, 1.0);
    EXPECT_NEAR(t.start_value(), task_reward({p.alpha0, p.beta0, 0.5}), 1e-12);
    for_each_state(p, [&](SingleTaskDpState s) { EXPECT_FALSE(t.hire(s)); });
  }
}

// Reference values from tests/oracles/joint_dp.py (single_task_value).
TEST(SolveSingleTask, MatchesIndependentRecursion) {
  EXPECT_NEAR(solve_single_task(params(1, 1, 3, 3), 0.1).start_value(), 0.6500000000000001, 1e-12);
  EXPECT_NEAR(solve_single_task(params(1, 1, 4, 4), 0.05).start_value(), 0.7000000000000001, 1e-12);
  EXPECT_NEAR(solve_single_task(params(2, 1, 4, 2), 0.02).start_value(), 0.7857266666666667, 1e-12);
  EXPECT_NEAR(solve_single_task(params(1.5, 2.5, 5, 5), 0.0).start_value(), 0.8099731986885013, 1e-12);
}

TEST(SolveSingleTask, ValueProperties) {
  for (auto p : {params(1, 1, 6, 6), params(2, 1, 7, 4), params(1.58, 1.58, 9, 9)}) {
    const std::vector<double> lambdas{0.0, 0.01, 0.03, 0.07, 0.15, 0.3, 0.5};
    std::vector<SingleTaskDpTable> tables;
    for (double l : lambdas) tables.push_back(solve_single_task(p, l));
    for_each_state(p, [&](SingleTaskDpState s) {
      const TaskBelief b{p.alpha0 + s.pos, p.beta0 + s.neg, p.threshold};
      EXPECT_GE(tables[0].value(s), task_reward(b) - 1e-12);
      for (std::size_t i = 0; i < tables.size(); ++i) {
        EXPECT_LE(tables[i].value(s), 1.0 + 1e-12);
        if (i > 0) EXPECT_LE(tables[i].value(s), tables[i - 1].value(s) + 1e-12);
      }
    });
  }
}

TEST(SolveSingleTask, TruncatedLayersMatchFullSolve) {
  auto p = params(1, 1, 10, 6);
  auto full = solve_single_task(p, 0.04);
  auto part = solve_single_task_layers(p, 0.04, 4);
  EXPECT_EQ(part.max_budget_left(), 4);
  for_each_state(p, [&](SingleTaskDpState s) {
    if (s.budget_left <= 4) {
      EXPECT_EQ(part.value(s), full.value(s));
    }
  });
}

TEST(OptimalAction, Examples) {
  auto p = params(1, 1, 5, 5);
  auto free_info = solve_single_task(p, 0.0);
  auto costly = solve_single_task(p, 1.0);
  EXPECT_TRUE(optimal_action(free_info, {0, 0, 0, 5}));
  for_each_state(p, [&](SingleTaskDpState s) {
    const bool hirable = s.budget_left >= 1 && s.pos + s.neg + s.in_flight < 5;
    if (s.budget_left == 0) EXPECT_FALSE(optimal_action(free_info, s));
    if (!hirable) EXPECT_FALSE(optimal_action(free_info, s));
    EXPECT_FALSE(optimal_action(costly, s));
  });
  EXPECT_THROW(optimal_action(free_info, {4, 2, 0, 1}), ParameterError);
  EXPECT_THROW(optimal_action(free_info, {0, 0, 0, 6}), ParameterError);
  EXPECT_THROW(optimal_action(free_info, {-1, 0, 0, 1}), ParameterError);
}

TEST(OptimalAction, FreeInformationHiresAtEveryHirableState) {
  for (auto p : {params(1, 1, 6, 6), params(2, 1, 5, 3), params(1, 3, 4, 4)}) {
    auto t = solve_single_task(p, 0.0);
    for_each_state(p, [&](SingleTaskDpState s) {
      if (s.budget_left >= 1 && s.pos + s.neg + s.in_flight < p.total_cap()) EXPECT_TRUE(t.hire(s));
    });
  }
}

TEST(IndexLambdaStar, Examples) {
  EXPECT_EQ(index_lambda_star({0, 0, 0, 0}, params(1, 1, 3, 3)), 0.0);
  EXPECT_NEAR(index_lambda_star({0, 0, 0, 1}, params(1, 1, 1, 1)), 0.25, 1e-6);
  EXPECT_LT(index_lambda_star({0, 0, 0, 1}, params(50, 1, 1, 1)), 1e-3);
  // at the cap nothing can be hired
  EXPECT_EQ(index_lambda_star({1, 1, 1, 2}, params(1, 1, 5, 3)), 0.0);
}

TEST(IndexLambdaStar, SwitchesAtTheIndex) {
  auto p = params(1, 1, 6, 6);
  for (SingleTaskDpState s : {SingleTaskDpState{0, 0, 0, 6}, {1, 0, 0, 4}, {1, 1, 1, 3}, {2, 0, 2, 2}}) {
    const double l = index_lambda_star(s, p);
    EXPECT_GE(l, 0.0);
    EXPECT_LE(l, 0.5);
    if (l > 1e-4) EXPECT_TRUE(solve_single_task(p, l - 1e-4).hire(s));
    if (l < 0.5 - 1e-4) EXPECT_FALSE(solve_single_task(p, l + 1e-4).hire(s));
  }
}

TEST(IndexLambdaStar, GeneralThresholdUsesUnitInterval) {
  EXPECT_EQ(lambda_upper_limit(0.5), 0.5);
  EXPECT_EQ(lambda_upper_limit(0.3), 1.0);
  auto p = params(1, 1, 1, 1, 0.3);
  // hire gain: E[reward after one label] - reward(prior) under d = 0.3
  const double gain = 0.5 * (task_reward({2, 1, 0.3}) + task_reward({1, 2, 0.3})) - task_reward({1, 1, 0.3});
  EXPECT_NEAR(index_lambda_star({0, 0, 0, 1}, p), gain, 1e-6);
}

TEST(SingleTaskParams, Validation) {
  EXPECT_THROW(validate(params(0, 1, 3, 3)), ParameterError);
  EXPECT_THROW(validate(params(1, 1, 3, 0)), ParameterError);
  EXPECT_THROW(validate(params(1, 1, -1, 1)), ParameterError);
  EXPECT_THROW(solve_single_task(params(1, 1, 3, 3), -0.1), ParameterError);
}
