#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crowdalloc/ct_model.hpp"
#include "crowdalloc/index_table.hpp"
#include "crowdalloc/rng.hpp"

namespace crowdalloc {

enum class PolicyKind { index, okg, thompson, ucb_tuned, round_robin };

std::string_view to_string(PolicyKind kind);
// Accepts the names printed by to_string; throws ParameterError otherwise.
PolicyKind parse_policy_kind(std::string_view name);
std::vector<PolicyKind> parse_policy_list(std::string_view comma_separated);

struct PolicyDecision {
  std::optional<int> task;     // empty: no task can take the worker
  std::vector<double> scores;  // per task; -inf marks an ineligible task
};

// Decision rule for an arriving worker while budget remains. Implementations
// are immutable after construction, so one instance can serve concurrent
// replications as long as each passes its own Rng.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual PolicyKind kind() const noexcept = 0;
  virtual bool deterministic() const noexcept { return true; }
  virtual PolicyDecision decide(const SystemState& state, Rng& rng) const = 0;
};

std::unique_ptr<Policy> make_policy(PolicyKind kind, const Instance& instance);

// Index policy: assign to the eligible task with the largest lambda*, lowest
// index on ties. One IndexTable is built per distinct (prior, threshold).
class IndexPolicy final : public Policy {
 public:
  explicit IndexPolicy(const Instance& instance);
  PolicyKind kind() const noexcept override { return PolicyKind::index; }
  PolicyDecision decide(const SystemState& state, Rng& rng) const override;
  PolicyDecision decide(const SystemState& state) const;
  double lambda_star(const SystemState& state, int task) const;

 private:
  Instance instance_;
  std::vector<std::shared_ptr<const IndexTable>> table_of_task_;
};

// Optimistic knowledge gradient: largest of the two one-label reward gains.
class OkgPolicy final : public Policy {
 public:
  explicit OkgPolicy(const Instance& instance);
  PolicyKind kind() const noexcept override { return PolicyKind::okg; }
  PolicyDecision decide(const SystemState& state, Rng& rng) const override;
  PolicyDecision decide(const SystemState& state) const;

 private:
  double score(const SystemState& state, int task) const;

  Instance instance_;
  // Scores for label counts inside the cap, per distinct prior group.
  std::vector<int> group_of_task_;
  std::vector<std::vector<double>> group_scores_;
  int side_ = 0;
};

// Thompson-style ambiguity seeking: sample theta from each posterior and
// pick the task whose sample lies closest to its threshold.
class ThompsonPolicy final : public Policy {
 public:
  explicit ThompsonPolicy(const Instance& instance) : instance_(instance) {}
  PolicyKind kind() const noexcept override { return PolicyKind::thompson; }
  bool deterministic() const noexcept override { return false; }
  PolicyDecision decide(const SystemState& state, Rng& rng) const override;

 private:
  Instance instance_;
};

// UCB1-tuned on label ambiguity 1 - |2 p_hat - 1|.
class UcbTunedPolicy final : public Policy {
 public:
  explicit UcbTunedPolicy(const Instance& instance) : instance_(instance) {}
  PolicyKind kind() const noexcept override { return PolicyKind::ucb_tuned; }
  PolicyDecision decide(const SystemState& state, Rng& rng) const override;
  PolicyDecision decide(const SystemState& state) const;

 private:
  Instance instance_;
};

// Task l mod K, moving on cyclically past capped tasks.
class RoundRobinPolicy final : public Policy {
 public:
  explicit RoundRobinPolicy(const Instance& instance) : instance_(instance) {}
  PolicyKind kind() const noexcept override { return PolicyKind::round_robin; }
  PolicyDecision decide(const SystemState& state, Rng& rng) const override;
  PolicyDecision decide(const SystemState& state) const;

 private:
  Instance instance_;
};

// One-shot conveniences; each builds the policy for the call.
PolicyDecision index_choose(const SystemState& state, const Instance& instance);
PolicyDecision okg_choose(const SystemState& state, const Instance& instance);
PolicyDecision thompson_choose(const SystemState& state, const Instance& instance, Rng& rng);
PolicyDecision ucb_tuned_choose(const SystemState& state, const Instance& instance);
PolicyDecision round_robin_choose(const SystemState& state, const Instance& instance);

// Thompson selection given already-drawn samples (one per task).
PolicyDecision thompson_pick(std::span<const double> draws, const SystemState& state,
                             const Instance& instance);

// max(R(a+1, b) - R(a, b), R(a, b+1) - R(a, b)).
double okg_score(const TaskBelief& belief);

// UCB1-tuned score of a task with `positives` of `labels` observed, out of
// `total_labels` across all tasks. +inf when the task has no labels.
double ucb_tuned_score(int positives, int labels, int total_labels);

}  // namespace crowdalloc
