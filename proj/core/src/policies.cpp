#include "crowdalloc/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "crowdalloc/errors.hpp"

namespace crowdalloc {

namespace {

constexpr double kIneligible = -std::numeric_limits<double>::infinity();

// Argmax over eligible tasks, lowest index on ties.
PolicyDecision argmax_decision(std::vector<double> scores) {
  PolicyDecision d;
  for (int x = 0; x < std::ssize(scores); ++x) {
    if (scores[x] == kIneligible) continue;
    if (!d.task || scores[x] > scores[*d.task]) d.task = x;
  }
  d.scores = std::move(scores);
  return d;
}

void check_state(const SystemState& state, const Instance& inst) {
  if (state.num_tasks() != inst.num_tasks)
    throw ContractError("policy: state and instance disagree on the number of tasks");
  if (state.arrivals_used >= inst.budget)
    throw ContractError("policy: no budget left for a decision");
}

// Index of the first group holding an equal value; appends when new.
template <class T>
int group_index(std::vector<T>& groups, const T& value) {
  for (int g = 0; g < std::ssize(groups); ++g)
    if (groups[g] == value) return g;
  groups.push_back(value);
  return static_cast<int>(groups.size()) - 1;
}

}  // namespace

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::index: return "index";
    case PolicyKind::okg: return "okg";
    case PolicyKind::thompson: return "thompson";
    case PolicyKind::ucb_tuned: return "ucb_tuned";
    case PolicyKind::round_robin: return "round_robin";
  }
  return "unknown";
}

PolicyKind parse_policy_kind(std::string_view name) {
  for (PolicyKind k : {PolicyKind::index, PolicyKind::okg, PolicyKind::thompson,
                       PolicyKind::ucb_tuned, PolicyKind::round_robin})
    if (to_string(k) == name) return k;
  throw ParameterError("unknown policy '" + std::string(name) +
                       "' (expected index, okg, thompson, ucb_tuned or round_robin)");
}

std::vector<PolicyKind> parse_policy_list(std::string_view text) {
  std::vector<PolicyKind> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_policy_kind(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::unique_ptr<Policy> make_policy(PolicyKind kind, const Instance& instance) {
  validate(instance);
  switch (kind) {
    case PolicyKind::index: return std::make_unique<IndexPolicy>(instance);
    case PolicyKind::okg: return std::make_unique<OkgPolicy>(instance);
    case PolicyKind::thompson: return std::make_unique<ThompsonPolicy>(instance);
    case PolicyKind::ucb_tuned: return std::make_unique<UcbTunedPolicy>(instance);
    case PolicyKind::round_robin: return std::make_unique<RoundRobinPolicy>(instance);
  }
  throw ParameterError("make_policy: unknown kind");
}

// ---- index ----

IndexPolicy::IndexPolicy(const Instance& instance) : instance_(instance) {
  validate(instance_);
  std::vector<SingleTaskParams> groups;
  std::vector<std::shared_ptr<const IndexTable>> tables;
  for (int x = 0; x < instance_.num_tasks; ++x) {
    const int g = group_index(groups, single_task_params(instance_, x));
    if (g == std::ssize(tables))
      tables.push_back(std::make_shared<const IndexTable>(IndexTable::build(groups[g])));
    table_of_task_.push_back(tables[g]);
  }
}

double IndexPolicy::lambda_star(const SystemState& state, int task) const {
  const SingleTaskDpState s{state.positives[task], state.negatives[task], state.in_flight[task],
                            instance_.budget - state.arrivals_used};
  return table_of_task_[task]->lambda_star(s);
}

PolicyDecision IndexPolicy::decide(const SystemState& state) const {
  check_state(state, instance_);
  std::vector<double> scores(state.num_tasks(), kIneligible);
  for (int x = 0; x < state.num_tasks(); ++x)
    if (task_eligible(state, instance_, x)) scores[x] = lambda_star(state, x);
  return argmax_decision(std::move(scores));
}

PolicyDecision IndexPolicy::decide(const SystemState& state, Rng&) const { return decide(state); }

// ---- okg ----

double okg_score(const TaskBelief& b) {
  const double now = task_reward(b);
  const double up = task_reward(posterior_update(b, Label::positive)) - now;
  const double down = task_reward(posterior_update(b, Label::negative)) - now;
  return std::fmax(up, down);
}

OkgPolicy::OkgPolicy(const Instance& instance) : instance_(instance) {
  validate(instance_);
  side_ = instance_.worker_cap + 1;
  std::vector<std::pair<TaskPrior, double>> groups;
  for (int x = 0; x < instance_.num_tasks; ++x) {
    const int g = group_index(groups, std::make_pair(instance_.priors[x], instance_.thresholds[x]));
    group_of_task_.push_back(g);
    if (g == std::ssize(group_scores_)) {
      std::vector<double> table(static_cast<std::size_t>(side_) * side_, 0.0);
      for (int p = 0; p < side_; ++p)
        for (int n = 0; p + n < side_; ++n)
          table[p * side_ + n] = okg_score(TaskBelief(groups[g].first.alpha + p,
                                                       groups[g].first.beta + n, groups[g].second));
      group_scores_.push_back(std::move(table));
    }
  }
}

double OkgPolicy::score(const SystemState& state, int x) const {
  const int p = state.positives[x];
  const int n = state.negatives[x];
  if (p + n < side_) return group_scores_[group_of_task_[x]][p * side_ + n];
  return okg_score(state.beliefs[x]);
}

PolicyDecision OkgPolicy::decide(const SystemState& state) const {
  check_state(state, instance_);
  std::vector<double> scores(state.num_tasks(), kIneligible);
  for (int x = 0; x < state.num_tasks(); ++x)
    if (task_eligible(state, instance_, x)) scores[x] = score(state, x);
  return argmax_decision(std::move(scores));
}

PolicyDecision OkgPolicy::decide(const SystemState& state, Rng&) const { return decide(state); }

// ---- thompson ----

PolicyDecision thompson_pick(std::span<const double> draws, const SystemState& state,
                             const Instance& instance) {
  if (std::ssize(draws) != state.num_tasks())
    throw ParameterError("thompson_pick: need one draw per task");
  std::vector<double> scores(state.num_tasks(), kIneligible);
  for (int x = 0; x < state.num_tasks(); ++x)
    if (task_eligible(state, instance, x))
      scores[x] = -std::fabs(draws[x] - state.beliefs[x].threshold());
  return argmax_decision(std::move(scores));
}

PolicyDecision ThompsonPolicy::decide(const SystemState& state, Rng& rng) const {
  check_state(state, instance_);
  std::vector<double> draws(state.num_tasks(), 0.0);
  for (int x = 0; x < state.num_tasks(); ++x)
    if (task_eligible(state, instance_, x))
      draws[x] = sample_beta(rng, state.beliefs[x].alpha(), state.beliefs[x].beta());
  return thompson_pick(draws, state, instance_);
}

// ---- ucb1-tuned ----

double ucb_tuned_score(int positives, int labels, int total_labels) {
  if (labels == 0) return std::numeric_limits<double>::infinity();
  const double n = total_labels;
  const double nx = labels;
  const double p_hat = positives / nx;
  const double ambiguity = 1.0 - std::fabs(2.0 * p_hat - 1.0);
  const double log_n = std::log(n);
  const double variance = p_hat * (1.0 - p_hat) + std::sqrt(2.0 * log_n / nx);
  return ambiguity + std::sqrt((log_n / nx) * std::fmin(0.25, variance));
}

PolicyDecision UcbTunedPolicy::decide(const SystemState& state) const {
  check_state(state, instance_);
  int total = 0;
  for (int x = 0; x < state.num_tasks(); ++x) total += state.labels(x);
  std::vector<double> scores(state.num_tasks(), kIneligible);
  for (int x = 0; x < state.num_tasks(); ++x)
    if (task_eligible(state, instance_, x))
      scores[x] = ucb_tuned_score(state.positives[x], state.labels(x), total);
  return argmax_decision(std::move(scores));
}

PolicyDecision UcbTunedPolicy::decide(const SystemState& state, Rng&) const {
  return decide(state);
}

// ---- round robin ----

PolicyDecision RoundRobinPolicy::decide(const SystemState& state) const {
  check_state(state, instance_);
  const int k = state.num_tasks();
  std::vector<double> scores(k, kIneligible);
  PolicyDecision d;
  for (int step = 0; step < k; ++step) {
    const int x = (state.arrivals_used + step) % k;
    if (task_eligible(state, instance_, x)) {
      scores[x] = 1.0;
      d.task = x;
      break;
    }
  }
  d.scores = std::move(scores);
  return d;
}

PolicyDecision RoundRobinPolicy::decide(const SystemState& state, Rng&) const {
  return decide(state);
}

// ---- one-shot conveniences ----

PolicyDecision index_choose(const SystemState& state, const Instance& instance) {
  return IndexPolicy(instance).decide(state);
}
PolicyDecision okg_choose(const SystemState& state, const Instance& instance) {
  return OkgPolicy(instance).decide(state);
}
PolicyDecision thompson_choose(const SystemState& state, const Instance& instance, Rng& rng) {
  return ThompsonPolicy(instance).decide(state, rng);
}
PolicyDecision ucb_tuned_choose(const SystemState& state, const Instance& instance) {
  return UcbTunedPolicy(instance).decide(state);
}
PolicyDecision round_robin_choose(const SystemState& state, const Instance& instance) {
  return RoundRobinPolicy(instance).decide(state);
}

}  // namespace crowdalloc
