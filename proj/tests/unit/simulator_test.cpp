#include <gtest/gtest.h>

#include <crowdalloc/errors.hpp>
#include <crowdalloc/simulator.hpp>

#include <cmath>
#include <numeric>

using namespace crowdalloc;

namespace {

const PolicyKind kAll[] = {PolicyKind::index, PolicyKind::okg, PolicyKind::thompson, PolicyKind::ucb_tuned,
                           PolicyKind::round_robin};

}  // namespace

TEST(ConfidenceInterval, Examples) {
  std::vector<double> flat{1, 1, 1, 1};
  auto a = confidence_interval(flat);
  EXPECT_EQ(a.mean, 1.0);
  EXPECT_EQ(a.lo, 1.0);
  EXPECT_EQ(a.hi, 1.0);

  std::vector<double> pair{0, 2};
  auto b = confidence_interval(pair);
  EXPECT_DOUBLE_EQ(b.mean, 1.0);
  EXPECT_NEAR(b.halfwidth(), 1.96, 1e-12);

  Rng rng(10);
  std::vector<double> normal(10000);
  for (double& v : normal) v = sample_standard_normal(rng);
  auto c = confidence_interval(normal);
  EXPECT_LE(c.lo, 0.0);
  EXPECT_GE(c.hi, 0.0);
  EXPECT_NEAR(c.halfwidth(), 0.0196, 0.001);

  std::vector<double> one{3.0};
  EXPECT_THROW(confidence_interval(one), ParameterError);
}

TEST(RunEpisode, ZeroBudget) {
  Instance inst = Instance::homogeneous(3, 0);
  inst.priors[1] = {2, 1};
  Rng rng(1);
  auto r = run_episode(inst, *make_policy(PolicyKind::index, inst), LabelSource::synthetic(), rng);
  EXPECT_NEAR(r.terminal_reward, 0.5 + 0.75 + 0.5, 1e-12);
  EXPECT_EQ(std::accumulate(r.assignments.begin(), r.assignments.end(), 0), 0);
  EXPECT_EQ(r.events, 0);
}

TEST(RunEpisode, SingleLabelAlwaysGivesThreeQuarters) {
  auto inst = Instance::homogeneous(1, 1);
  for (PolicyKind k : kAll) {
    auto p = make_policy(k, inst);
    for (int seed = 0; seed < 30; ++seed) {
      Rng rng = replication_rng(seed, 0);
      auto r = run_episode(inst, *p, LabelSource::synthetic(), rng);
      EXPECT_EQ(r.assignments[0], 1);
      EXPECT_NEAR(r.terminal_reward, 0.75, 1e-12);
    }
  }
}

TEST(RunEpisode, ReplayAccuracyPerfectWhenCrowdAgreesWithGold) {
  auto inst = Instance::homogeneous(3, 6);
  std::vector<ReplayTask> tasks(3, ReplayTask{{Label::positive, Label::positive, Label::positive}, Label::positive});
  Rng rng(2);
  auto r = run_episode(inst, *make_policy(PolicyKind::round_robin, inst), LabelSource::replay(tasks), rng);
  ASSERT_TRUE(r.accuracy.has_value());
  EXPECT_EQ(*r.accuracy, 1.0);
  EXPECT_EQ(r.replay_fallbacks, 0);
}

TEST(RunEpisode, ReplayReadsLabelsInOrderThenFallsBack) {
  auto inst = Instance::homogeneous(1, 4);
  ReplayTask t{{Label::negative, Label::positive}, Label::negative};
  Rng rng(5);
  auto r = run_episode(inst, *make_policy(PolicyKind::index, inst), LabelSource::replay({t}), rng);
  EXPECT_EQ(r.assignments[0], 4);
  EXPECT_EQ(r.replay_fallbacks, 2);
  EXPECT_EQ(r.positives[0] + r.negatives[0], 4);
  EXPECT_GE(r.negatives[0], 1);
  EXPECT_GE(r.positives[0], 1);
  EXPECT_THROW(LabelSource::replay({ReplayTask{}}), ParameterError);
  EXPECT_THROW(run_episode(Instance::homogeneous(2, 2), *make_policy(PolicyKind::index, inst),
                           LabelSource::replay({t}), rng),
               ParameterError);
}

TEST(RunEpisode, InvariantsAcrossPolicies) {
  auto inst = Instance::homogeneous(5, 6, {}, 0.5, 2);
  for (PolicyKind k : kAll) {
    auto p = make_policy(k, inst);
    for (int rep = 0; rep < 200; ++rep) {
      Rng rng = replication_rng(17, rep);
      auto r = run_episode(inst, *p, LabelSource::synthetic(), rng);
      int assigned = std::accumulate(r.assignments.begin(), r.assignments.end(), 0);
      int labels = std::accumulate(r.positives.begin(), r.positives.end(), 0) +
                   std::accumulate(r.negatives.begin(), r.negatives.end(), 0);
      EXPECT_EQ(assigned + r.skipped, inst.budget);
      EXPECT_EQ(labels, inst.budget - r.skipped);
      EXPECT_GE(r.terminal_reward, 0.5 * 5 - 1e-12);
      EXPECT_LE(r.terminal_reward, 5.0 + 1e-12);
      EXPECT_LE(r.max_task_load, 2);
      EXPECT_LE(r.events, 10 * inst.budget + 10);
    }
  }
}

TEST(RunEpisode, FiniteHorizonCancels) {
  auto inst = Instance::homogeneous(3, 30, {}, 0.5, 10, 0.1, 0.4, 0, 25.0);
  auto p = make_policy(PolicyKind::okg, inst);
  for (int rep = 0; rep < 200; ++rep) {
    Rng rng = replication_rng(4, rep);
    EpisodeOptions opt;
    bool cancelled_clean = true;
    double last = 0.0;
    opt.observer = [&](const SystemState& s, int) {
      if (s.time >= inst.horizon && s.total_in_flight() != 0) cancelled_clean = false;
      last = s.time;
    };
    auto r = run_episode(inst, *p, LabelSource::synthetic(), rng, opt);
    EXPECT_TRUE(cancelled_clean);
    EXPECT_GE(last, inst.horizon);
    int labels = std::accumulate(r.positives.begin(), r.positives.end(), 0) +
                 std::accumulate(r.negatives.begin(), r.negatives.end(), 0);
    EXPECT_LE(labels, inst.budget);
  }
}

TEST(RunEpisode, EventLogMatchesCount) {
  auto inst = Instance::homogeneous(2, 4);
  Rng rng(3);
  EpisodeOptions opt;
  opt.record_events = true;
  auto r = run_episode(inst, *make_policy(PolicyKind::index, inst), LabelSource::synthetic(), rng, opt);
  EXPECT_EQ(static_cast<long>(r.event_log.size()), r.events);
  int completions = 0;
  for (const auto& e : r.event_log) completions += e.kind == EventKind::completion;
  EXPECT_EQ(completions, 4);
}

TEST(Synthetic, PositiveRateMatchesPriorMean) {
  Instance inst = Instance::homogeneous(2, 6, {}, 0.5, 3);
  inst.priors = {{2, 5}, {3, 1}};
  auto p = make_policy(PolicyKind::round_robin, inst);
  const int n = 20000;
  for (int x = 0; x < 2; ++x) {
    std::vector<double> rates;
    for (int rep = 0; rep < n; ++rep) {
      Rng rng = replication_rng(77, rep);
      auto r = run_episode(inst, *p, LabelSource::synthetic(), rng);
      rates.push_back(double(r.positives[x]) / (r.positives[x] + r.negatives[x]));
    }
    auto ci = confidence_interval(rates);
    const double m = inst.priors[x].alpha / (inst.priors[x].alpha + inst.priors[x].beta);
    EXPECT_LT(std::abs(ci.mean - m), 3.0 * ci.sd / std::sqrt(double(n))) << x;
  }
}

TEST(RunReplications, ZeroBudgetHasZeroWidth) {
  auto inst = Instance::homogeneous(4, 0);
  auto rep = run_replications(inst, PolicyKind::thompson, LabelSource::synthetic(), 50);
  EXPECT_EQ(rep.reward.mean, 2.0);
  EXPECT_EQ(rep.reward.ci_lo, 2.0);
  EXPECT_EQ(rep.reward.ci_hi, 2.0);
  EXPECT_THROW(run_replications(inst, PolicyKind::index, LabelSource::synthetic(), 1), ParameterError);
}

TEST(RunReplications, DeterministicAndThreadIndependent) {
  auto inst = Instance::homogeneous(10, 12, {}, 0.5, {}, 0.1, 0.4, 12345);
  for (PolicyKind k : {PolicyKind::index, PolicyKind::thompson}) {
    auto a = run_replications(inst, k, LabelSource::synthetic(), 400, 1);
    auto b = run_replications(inst, k, LabelSource::synthetic(), 400, 3);
    auto c = run_replications(inst, k, LabelSource::synthetic(), 400, 1);
    EXPECT_EQ(a.reward.mean, b.reward.mean);
    EXPECT_EQ(a.reward.sd, b.reward.sd);
    EXPECT_EQ(a.reward.mean, c.reward.mean);
    EXPECT_EQ(a.reward.ci_lo, c.reward.ci_lo);
    for (int i = 0; i < 400; ++i) EXPECT_EQ(a.episodes[i].terminal_reward, b.episodes[i].terminal_reward);
    EXPECT_NEAR(a.reward.per_task_mean, a.reward.mean / 10, 1e-15);
  }
}

TEST(RunReplications, ReplayAccuracyStats) {
  auto inst = Instance::homogeneous(2, 3);
  std::vector<ReplayTask> tasks{{{Label::positive, Label::negative, Label::positive}, Label::positive},
                                {{Label::negative, Label::negative}, Label::positive}};
  auto rep = run_replications(inst, PolicyKind::okg, LabelSource::replay(tasks), 100);
  ASSERT_TRUE(rep.accuracy.has_value());
  EXPECT_GE(rep.accuracy->mean, 0.0);
  EXPECT_LE(rep.accuracy->mean, 1.0);
  auto synth = run_replications(inst, PolicyKind::okg, LabelSource::synthetic(), 100);
  EXPECT_FALSE(synth.accuracy.has_value());
}

TEST(ValidateCap, Examples) {
  auto unreachable = Instance::homogeneous(3, 4, {}, 0.5, 4);
  EXPECT_FALSE(validate_cap(unreachable, PolicyKind::index, 300).warning);
  auto single_budget = Instance::homogeneous(1, 5, {}, 0.5, 5);
  EXPECT_FALSE(validate_cap(single_budget, PolicyKind::index, 50).warning);

  auto desk = Instance::homogeneous(10, 12, {}, 0.5, 12);
  auto rep = validate_cap(desk, PolicyKind::index, 300);
  EXPECT_LE(rep.max_task_load, 12);
  EXPECT_EQ(rep.worker_cap, 12);

  auto tight = Instance::homogeneous(1, 2, {}, 0.5, 1);
  auto flagged = validate_cap(tight, PolicyKind::index, 10);
  EXPECT_TRUE(flagged.warning);
  EXPECT_EQ(flagged.max_task_load, 1);
}
