#include "crowdalloc/ct_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "crowdalloc/errors.hpp"

namespace crowdalloc {

int default_worker_cap(int budget) { return std::max(1, std::min(budget, 15)); }

TaskBelief Instance::prior_belief(int task) const {
  return TaskBelief(priors.at(task).alpha, priors.at(task).beta, thresholds.at(task));
}

Instance Instance::homogeneous(int num_tasks, int budget, TaskPrior prior, double threshold,
                               std::optional<int> worker_cap, double arrival_rate,
                               double completion_rate, std::uint64_t master_seed,
                               double horizon) {
  Instance inst;
  inst.num_tasks = num_tasks;
  inst.budget = budget;
  inst.horizon = horizon;
  inst.arrival_rate = arrival_rate;
  inst.completion_rate = completion_rate;
  inst.priors.assign(std::max(num_tasks, 0), prior);
  inst.thresholds.assign(std::max(num_tasks, 0), threshold);
  inst.worker_cap = worker_cap.value_or(default_worker_cap(budget));
  inst.master_seed = master_seed;
  validate(inst);
  return inst;
}

void validate(const Instance& inst) {
  if (inst.num_tasks < 1) throw ParameterError("instance: need at least one task");
  if (inst.budget < 0) throw ParameterError("instance: budget must be nonnegative");
  if (!(inst.arrival_rate > 0.0) || !std::isfinite(inst.arrival_rate))
    throw ParameterError("instance: arrival rate must be positive");
  if (!(inst.completion_rate > 0.0) || !std::isfinite(inst.completion_rate))
    throw ParameterError("instance: completion rate must be positive");
  if (!(inst.horizon > 0.0)) throw ParameterError("instance: horizon must be positive");
  if (std::ssize(inst.priors) != inst.num_tasks || std::ssize(inst.thresholds) != inst.num_tasks)
    throw ParameterError("instance: priors and thresholds must have one entry per task");
  for (int x = 0; x < inst.num_tasks; ++x) (void)inst.prior_belief(x);
  if (inst.worker_cap < 1) throw ParameterError("instance: worker cap must be at least 1");
  if (inst.budget >= 1 && inst.worker_cap > inst.budget)
    throw ParameterError("instance: worker cap " + std::to_string(inst.worker_cap) +
                         " exceeds budget " + std::to_string(inst.budget));
}

int SystemState::total_in_flight() const noexcept {
  return std::accumulate(in_flight.begin(), in_flight.end(), 0);
}

SystemState initial_state(const Instance& inst) {
  SystemState s;
  s.beliefs.reserve(inst.num_tasks);
  for (int x = 0; x < inst.num_tasks; ++x) s.beliefs.push_back(inst.prior_belief(x));
  s.positives.assign(inst.num_tasks, 0);
  s.negatives.assign(inst.num_tasks, 0);
  s.in_flight.assign(inst.num_tasks, 0);
  return s;
}

double event_rate(const SystemState& state, const Instance& inst) {
  return inst.completion_rate * state.total_in_flight() + inst.arrival_rate;
}

TransitionProbabilities transition_probabilities(const SystemState& state, const Instance& inst) {
  const double q = event_rate(state, inst);
  TransitionProbabilities p;
  p.arrival = inst.arrival_rate / q;
  p.positive.resize(state.num_tasks());
  p.negative.resize(state.num_tasks());
  for (int x = 0; x < state.num_tasks(); ++x) {
    const double completion = inst.completion_rate * state.in_flight[x] / q;
    const double mean = state.beliefs[x].mean();
    p.positive[x] = mean * completion;
    p.negative[x] = (1.0 - mean) * completion;
  }
  return p;
}

EventTiming sample_event_timing(const SystemState& state, const Instance& inst, Rng& rng) {
  if (is_terminal(state, inst)) throw ContractError("sample_event_timing: state is terminal");
  const double q = event_rate(state, inst);
  EventTiming ev;
  ev.gap = sample_exponential(rng, q);
  double u = portable_unit(rng) * q - inst.arrival_rate;
  if (u < 0.0) return ev;
  // Rounding can leave u marginally nonnegative after the last busy task;
  // the completion is then attributed to that task.
  int task = -1;
  for (int x = 0; x < state.num_tasks(); ++x) {
    if (state.in_flight[x] == 0) continue;
    task = x;
    u -= inst.completion_rate * state.in_flight[x];
    if (u < 0.0) break;
  }
  if (task < 0) return ev;
  ev.kind = EventKind::completion;
  ev.task = task;
  return ev;
}

Event sample_next_event(const SystemState& state, const Instance& inst, Rng& rng) {
  const EventTiming t = sample_event_timing(state, inst, rng);
  if (t.kind == EventKind::arrival) return Event::arrival(t.gap);
  const Label y = sample_bernoulli(rng, state.beliefs[t.task].mean()) ? Label::positive
                                                                      : Label::negative;
  return Event::completion(t.task, y, t.gap);
}

bool task_eligible(const SystemState& state, const Instance& inst, int task) {
  return state.assigned(task) < inst.worker_cap;
}

SystemState apply_event(const SystemState& state, const Event& event,
                        std::optional<int> assignment, const Instance& inst) {
  if (!(event.gap >= 0.0)) throw ContractError("apply_event: negative gap");
  SystemState next = state;
  next.time = state.time + event.gap;
  if (next.time >= inst.horizon) {
    std::fill(next.in_flight.begin(), next.in_flight.end(), 0);
    return next;
  }
  if (event.kind == EventKind::arrival) {
    if (state.arrivals_used >= inst.budget) {
      if (assignment) throw ContractError("apply_event: no budget left for an assignment");
      return next;
    }
    if (assignment) {
      const int x = *assignment;
      if (x < 0 || x >= state.num_tasks())
        throw ContractError("apply_event: assignment to task " + std::to_string(x) +
                            " out of range");
      if (!task_eligible(state, inst, x))
        throw ContractError("apply_event: task " + std::to_string(x) + " is at its worker cap");
      ++next.in_flight[x];
    }
    ++next.arrivals_used;
    return next;
  }
  if (assignment) throw ContractError("apply_event: completion events take no assignment");
  const int x = event.task;
  if (x < 0 || x >= state.num_tasks())
    throw ContractError("apply_event: completion on task out of range");
  if (state.in_flight[x] <= 0)
    throw ContractError("apply_event: completion on task " + std::to_string(x) +
                        " with no worker in flight");
  --next.in_flight[x];
  next.beliefs[x] = posterior_update(state.beliefs[x], event.label);
  if (event.label == Label::positive)
    ++next.positives[x];
  else
    ++next.negatives[x];
  return next;
}

bool is_terminal(const SystemState& state, const Instance& inst) {
  if (state.time >= inst.horizon) return true;
  return state.arrivals_used >= inst.budget && state.total_in_flight() == 0;
}

}  // namespace crowdalloc
