#include "crowdalloc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "crowdalloc/errors.hpp"

namespace crowdalloc {

LabelSource LabelSource::replay(std::vector<ReplayTask> tasks) {
  for (const auto& t : tasks)
    if (t.labels.empty()) throw ParameterError("replay source: every task needs at least one label");
  LabelSource s;
  s.mode = LabelMode::replay;
  s.tasks = std::move(tasks);
  return s;
}

EpisodeResult run_episode(const Instance& inst, const Policy& policy, const LabelSource& source,
                          Rng& rng, const EpisodeOptions& options) {
  validate(inst);
  const int k = inst.num_tasks;
  if (source.mode == LabelMode::replay && std::ssize(source.tasks) != k)
    throw ParameterError("run_episode: replay source must cover every task");

  std::vector<double> theta;
  if (source.mode == LabelMode::synthetic) {
    theta.resize(k);
    for (int x = 0; x < k; ++x) theta[x] = sample_beta(rng, inst.priors[x].alpha, inst.priors[x].beta);
  }
  std::vector<std::size_t> cursor(source.mode == LabelMode::replay ? k : 0, 0);

  EpisodeResult result;
  result.assignments.assign(k, 0);
  SystemState state = initial_state(inst);

  auto next_label = [&](int x) {
    if (source.mode == LabelMode::synthetic)
      return sample_bernoulli(rng, theta[x]) ? Label::positive : Label::negative;
    const auto& labels = source.tasks[x].labels;
    if (cursor[x] < labels.size()) return labels[cursor[x]++];
    ++result.replay_fallbacks;
    return labels[portable_below(rng, labels.size())];
  };

  while (!is_terminal(state, inst)) {
    const EventTiming timing = sample_event_timing(state, inst, rng);
    const bool void_event = state.time + timing.gap >= inst.horizon;
    Event event;
    std::optional<int> assignment;
    if (timing.kind == EventKind::arrival) {
      event = Event::arrival(timing.gap);
      if (!void_event && state.arrivals_used < inst.budget) {
        for (int x = 0; x < k; ++x)
          if (!task_eligible(state, inst, x)) result.cap_binding = true;
        assignment = policy.decide(state, rng).task;
        if (assignment)
          ++result.assignments[*assignment];
        else
          ++result.skipped;
      }
    } else {
      const Label y = void_event ? Label::negative : next_label(timing.task);
      event = Event::completion(timing.task, y, timing.gap);
    }
    state = apply_event(state, event, assignment, inst);
    ++result.events;
    if (options.record_events) result.event_log.push_back(event);
    if (options.observer) options.observer(state, result.skipped);
  }

  result.terminal_reward = total_reward(state.beliefs);
  result.positives = state.positives;
  result.negatives = state.negatives;
  result.max_task_load = *std::max_element(result.assignments.begin(), result.assignments.end());
  if (source.mode == LabelMode::replay) {
    int correct = 0;
    for (int x = 0; x < k; ++x)
      if (predicted_label(state.beliefs[x]) == source.tasks[x].gold) ++correct;
    result.accuracy = static_cast<double>(correct) / k;
  }
  return result;
}

ConfidenceInterval confidence_interval(std::span<const double> samples) {
  if (samples.size() < 2) throw ParameterError("confidence_interval: need at least 2 samples");
  const double n = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double s : samples) sum += s;
  const double mean = sum / n;
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  ConfidenceInterval ci;
  ci.mean = mean;
  ci.sd = std::sqrt(ss / (n - 1.0));
  const double half = 1.96 * ci.sd / std::sqrt(n);
  ci.lo = mean - half;
  ci.hi = mean + half;
  return ci;
}

double ReplicationStats::standard_error() const noexcept {
  return n > 0 ? sd / std::sqrt(static_cast<double>(n)) : 0.0;
}

namespace {

ReplicationStats make_stats(std::span<const double> samples, int num_tasks) {
  const ConfidenceInterval ci = confidence_interval(samples);
  ReplicationStats st;
  st.n = static_cast<int>(samples.size());
  st.mean = ci.mean;
  st.sd = ci.sd;
  st.ci_lo = ci.lo;
  st.ci_hi = ci.hi;
  st.per_task_mean = ci.mean / num_tasks;
  return st;
}

}  // namespace

ReplicationReport run_replications(const Instance& inst, const Policy& policy,
                                   const LabelSource& source, int n, int threads) {
  if (n < 2) throw ParameterError("run_replications: need at least 2 replications");
  validate(inst);
  ReplicationReport report;
  report.policy = policy.kind();
  report.episodes.resize(n);

  unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  workers = std::clamp(workers, 1u, static_cast<unsigned>(n));
  auto run_range = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      Rng rng = replication_rng(inst.master_seed, static_cast<std::uint64_t>(i));
      report.episodes[i] = run_episode(inst, policy, source, rng);
    }
  };
  if (workers == 1) {
    run_range(0, n);
  } else {
    std::vector<std::jthread> pool;
    const int chunk = (n + static_cast<int>(workers) - 1) / static_cast<int>(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const int begin = static_cast<int>(w) * chunk;
      const int end = std::min(n, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
  }

  std::vector<double> rewards(n);
  std::vector<double> accuracies;
  for (int i = 0; i < n; ++i) {
    const EpisodeResult& e = report.episodes[i];
    rewards[i] = e.terminal_reward;
    if (e.accuracy) accuracies.push_back(*e.accuracy);
    report.max_task_load = std::max(report.max_task_load, e.max_task_load);
    if (e.cap_binding) ++report.episodes_cap_binding;
    report.replay_fallbacks += e.replay_fallbacks;
  }
  report.reward = make_stats(rewards, inst.num_tasks);
  if (!accuracies.empty()) {
    report.accuracy = make_stats(accuracies, 1);
  }
  return report;
}

ReplicationReport run_replications(const Instance& inst, PolicyKind policy,
                                   const LabelSource& source, int n, int threads) {
  const auto p = make_policy(policy, inst);
  return run_replications(inst, *p, source, n, threads);
}

CapReport validate_cap(const Instance& inst, PolicyKind policy, int n) {
  if (n < 1) throw ParameterError("validate_cap: need at least one replication");
  const auto p = make_policy(policy, inst);
  CapReport report;
  report.worker_cap = inst.worker_cap;
  for (int i = 0; i < n; ++i) {
    Rng rng = replication_rng(inst.master_seed, static_cast<std::uint64_t>(i));
    const EpisodeResult e = run_episode(inst, *p, LabelSource::synthetic(), rng);
    report.max_task_load = std::max(report.max_task_load, e.max_task_load);
    if (e.cap_binding) ++report.episodes_cap_binding;
  }
  report.warning = report.episodes_cap_binding > 0;
  return report;
}

}  // namespace crowdalloc
