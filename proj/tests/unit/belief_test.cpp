#include <gtest/gtest.h>

#include <boost/math/special_functions/beta.hpp>

#include <crowdalloc/belief.hpp>
#include <crowdalloc/errors.hpp>
#include <crowdalloc/rng.hpp>

#include <cmath>
#include <vector>

using namespace crowdalloc;

TEST(RegIncBeta, HandValues) {
  EXPECT_NEAR(reg_inc_beta(0.5, 1, 1), 0.5, 1e-12);
  EXPECT_NEAR(reg_inc_beta(0.5, 2, 1), 0.25, 1e-12);
  EXPECT_NEAR(reg_inc_beta(0.3, 2, 2), 0.216, 1e-12);
  EXPECT_EQ(reg_inc_beta(0.0, 3, 4), 0.0);
  EXPECT_EQ(reg_inc_beta(1.0, 3, 4), 1.0);
}

TEST(RegIncBeta, MatchesBoost) {
  Rng rng(42);
  for (int i = 0; i < 2000; ++i) {
    double x = portable_unit(rng);
    double a = 0.05 + 120.0 * portable_unit(rng);
    double b = 0.05 + 120.0 * portable_unit(rng);
    EXPECT_NEAR(reg_inc_beta(x, a, b), boost::math::ibeta(a, b, x), 1e-10) << x << ' ' << a << ' ' << b;
  }
  // integer offsets from fitted priors, the shapes the DP actually evaluates
  for (int p = 0; p < 40; ++p)
    for (int n = 0; n < 40; ++n)
      EXPECT_NEAR(reg_inc_beta(0.5, 1.58333 + p, 1.58333 + n),
                  boost::math::ibeta(1.58333 + p, 1.58333 + n, 0.5), 1e-10);
}

TEST(RegIncBeta, Reflection) {
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    double x = portable_unit(rng);
    double a = 0.1 + 60.0 * portable_unit(rng);
    double b = 0.1 + 60.0 * portable_unit(rng);
    EXPECT_NEAR(reg_inc_beta(x, a, b) + reg_inc_beta(1.0 - x, b, a), 1.0, 1e-9);
  }
}

TEST(RegIncBeta, DomainErrors) {
  EXPECT_THROW(reg_inc_beta(-0.1, 1, 1), ParameterError);
  EXPECT_THROW(reg_inc_beta(1.1, 1, 1), ParameterError);
  EXPECT_THROW(reg_inc_beta(0.5, 0, 1), ParameterError);
  EXPECT_THROW(reg_inc_beta(0.5, 1, -2), ParameterError);
  EXPECT_THROW(reg_inc_beta(std::nan(""), 1, 1), ParameterError);
}

TEST(TaskBelief, Validation) {
  EXPECT_THROW(TaskBelief(0.0, 1.0, 0.5), ParameterError);
  EXPECT_THROW(TaskBelief(1.0, -1.0, 0.5), ParameterError);
  EXPECT_THROW(TaskBelief(1.0, 1.0, 0.0), ParameterError);
  EXPECT_THROW(TaskBelief(1.0, 1.0, 1.0), ParameterError);
  EXPECT_NO_THROW(TaskBelief(0.3, 7.2, 0.9));
}

TEST(TaskReward, Examples) {
  EXPECT_NEAR(task_reward({1, 1, 0.5}), 0.5, 1e-12);
  EXPECT_NEAR(task_reward({2, 1, 0.5}), 0.75, 1e-12);
  EXPECT_NEAR(task_reward({1, 2, 0.5}), 0.75, 1e-12);
  // Beta(3,1): 1 - 0.5^3
  EXPECT_NEAR(task_reward({3, 1, 0.5}), 0.875, 1e-12);
}

TEST(TaskReward, RangeAndMirror) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    double a = 0.1 + 50.0 * portable_unit(rng);
    double b = 0.1 + 50.0 * portable_unit(rng);
    double d = 0.01 + 0.98 * portable_unit(rng);
    double r = task_reward({a, b, d});
    EXPECT_GE(r, 0.5);
    EXPECT_LE(r, 1.0);
    EXPECT_NEAR(task_reward({a, b, 0.5}), task_reward({b, a, 0.5}), 1e-12);
  }
}

TEST(TotalReward, Examples) {
  std::vector<TaskBelief> one{{1, 1, 0.5}};
  EXPECT_NEAR(total_reward(one), 0.5, 1e-12);
  std::vector<TaskBelief> two{{2, 1, 0.5}, {1, 2, 0.5}};
  EXPECT_NEAR(total_reward(two), 1.5, 1e-12);
  std::vector<TaskBelief> many(37, TaskBelief{1, 1, 0.5});
  EXPECT_NEAR(total_reward(many), 0.5 * 37, 1e-12);
  EXPECT_THROW(total_reward(std::vector<TaskBelief>{}), ParameterError);
}

TEST(PosteriorUpdate, Examples) {
  EXPECT_EQ(posterior_update({1, 1, 0.5}, Label::positive), TaskBelief(2, 1, 0.5));
  EXPECT_EQ(posterior_update({1, 1, 0.5}, Label::negative), TaskBelief(1, 2, 0.5));
  EXPECT_EQ(posterior_update({3, 7, 0.3}, Label::positive), TaskBelief(4, 7, 0.3));
  TaskBelief b{1.25, 3.5, 0.5};
  for (Label y : {Label::positive, Label::negative}) {
    TaskBelief n = posterior_update(b, y);
    EXPECT_DOUBLE_EQ(n.alpha() + n.beta(), b.alpha() + b.beta() + 1.0);
    EXPECT_EQ(n.threshold(), b.threshold());
  }
}

TEST(PredictedLabel, Examples) {
  EXPECT_EQ(predicted_label({2, 1, 0.5}), Label::positive);
  EXPECT_EQ(predicted_label({1, 2, 0.5}), Label::negative);
  EXPECT_EQ(predicted_label({1, 1, 0.5}), Label::negative);
  EXPECT_EQ(predicted_label({4, 4, 0.5}), Label::negative);
  EXPECT_EQ(predicted_label({1, 1, 0.3}), Label::positive);
}

TEST(Martingale, PosteriorMeanUnchangedInExpectation) {
  Rng rng(2024);
  const TaskBelief prior{2.5, 4.0, 0.5};
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    Label y = sample_bernoulli(rng, prior.mean()) ? Label::positive : Label::negative;
    double m = posterior_update(prior, y).mean();
    sum += m;
    sum2 += m * m;
  }
  double mean = sum / n;
  double se = std::sqrt((sum2 / n - mean * mean) / n);
  EXPECT_LT(std::abs(mean - prior.mean()), 3.0 * se);
}
