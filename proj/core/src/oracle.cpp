#include "crowdalloc/oracle.hpp"

#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "crowdalloc/errors.hpp"

namespace crowdalloc {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<int>& key) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (int v : key) h = splitmix64(h ^ static_cast<std::uint64_t>(v));
    return static_cast<std::size_t>(h);
  }
};

// Memoized recursion on SystemState through the ct_model kernel. Time is
// irrelevant with an infinite horizon, so events are applied with gap 0.
class ExactSolver {
 public:
  ExactSolver(const Instance& inst, const Policy* policy) : inst_(inst), policy_(policy) {}

  double value(const SystemState& s) {
    const std::vector<int> key = make_key(s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const double v = compute(s);
    memo_.emplace(key, v);
    return v;
  }

 private:
  std::vector<int> make_key(const SystemState& s) const {
    std::vector<int> key;
    key.reserve(3 * s.num_tasks() + 1);
    for (int x = 0; x < s.num_tasks(); ++x) {
      key.push_back(s.positives[x]);
      key.push_back(s.negatives[x]);
      key.push_back(s.in_flight[x]);
    }
    key.push_back(s.arrivals_used);
    return key;
  }

  double compute(const SystemState& s) {
    if (is_terminal(s, inst_)) return total_reward(s.beliefs);
    const TransitionProbabilities p = transition_probabilities(s, inst_);
    double completions = 0.0;
    for (int x = 0; x < s.num_tasks(); ++x) {
      if (s.in_flight[x] == 0) continue;
      const Event up = Event::completion(x, Label::positive, 0.0);
      const Event down = Event::completion(x, Label::negative, 0.0);
      completions += p.positive[x] * value(apply_event(s, up, {}, inst_));
      completions += p.negative[x] * value(apply_event(s, down, {}, inst_));
    }
    if (s.arrivals_used >= inst_.budget) {
      // Arrivals without budget are self-loops of the embedded chain.
      return completions / (1.0 - p.arrival);
    }
    return p.arrival * arrival_value(s) + completions;
  }

  double arrival_value(const SystemState& s) {
    const Event arrival = Event::arrival(0.0);
    if (policy_ != nullptr) {
      Rng unused(0);
      return value(apply_event(s, arrival, policy_->decide(s, unused).task, inst_));
    }
    double best = value(apply_event(s, arrival, std::nullopt, inst_));
    for (int z = 0; z < s.num_tasks(); ++z)
      if (task_eligible(s, inst_, z)) best = std::fmax(best, value(apply_event(s, arrival, z, inst_)));
    return best;
  }

  const Instance& inst_;
  const Policy* policy_;
  std::unordered_map<std::vector<int>, double, KeyHash> memo_;
};

void check_oracle_instance(const Instance& inst) {
  validate(inst);
  if (!inst.infinite_horizon())
    throw UnsupportedError("exact oracle supports only an infinite horizon");
  const double states = estimate_joint_states(inst);
  if (states > kOracleStateLimit)
    throw CapacityError("exact oracle refused: about " + std::to_string(states) +
                            " joint states exceed the limit of " +
                            std::to_string(kOracleStateLimit),
                        states);
}

}  // namespace

double estimate_joint_states(const Instance& inst) {
  const double c = std::min(inst.worker_cap, inst.budget);
  const double per_task = (c + 1.0) * (c + 2.0) * (c + 3.0) / 6.0;
  return std::pow(per_task, inst.num_tasks) * (inst.budget + 1.0);
}

double exact_optimal_value(const Instance& inst) {
  check_oracle_instance(inst);
  ExactSolver solver(inst, nullptr);
  return solver.value(initial_state(inst));
}

double exact_policy_value(const Instance& inst, const Policy& policy) {
  check_oracle_instance(inst);
  if (!policy.deterministic())
    throw UnsupportedError("exact_policy_value: policy '" + std::string(to_string(policy.kind())) +
                           "' is randomized");
  ExactSolver solver(inst, &policy);
  return solver.value(initial_state(inst));
}

double exact_policy_value(const Instance& inst, PolicyKind policy) {
  check_oracle_instance(inst);
  const auto p = make_policy(policy, inst);
  return exact_policy_value(inst, *p);
}

}  // namespace crowdalloc
