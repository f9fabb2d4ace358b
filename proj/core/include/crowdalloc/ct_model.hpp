#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "crowdalloc/belief.hpp"
#include "crowdalloc/rng.hpp"

namespace crowdalloc {

inline constexpr double kInfiniteHorizon = std::numeric_limits<double>::infinity();

struct TaskPrior {
  double alpha = 1.0;
  double beta = 1.0;
  friend bool operator==(const TaskPrior&, const TaskPrior&) = default;
};

// Per-task cap used when none is given: min(U, 15), and at least 1.
int default_worker_cap(int budget);

// Problem configuration. `worker_cap` bounds the total number of workers a
// single task may ever receive (completed plus in flight).
struct Instance {
  int num_tasks = 1;
  int budget = 0;
  double horizon = kInfiniteHorizon;
  double arrival_rate = 0.1;
  double completion_rate = 0.4;
  std::vector<TaskPrior> priors;
  std::vector<double> thresholds;
  int worker_cap = 1;
  std::uint64_t master_seed = 0;

  bool infinite_horizon() const noexcept { return horizon == kInfiniteHorizon; }
  TaskBelief prior_belief(int task) const;

  // K tasks sharing one prior and threshold. A missing cap means
  // default_worker_cap(budget).
  static Instance homogeneous(int num_tasks, int budget, TaskPrior prior = {},
                              double threshold = 0.5, std::optional<int> worker_cap = {},
                              double arrival_rate = 0.1, double completion_rate = 0.4,
                              std::uint64_t master_seed = 0,
                              double horizon = kInfiniteHorizon);
};

// Throws ParameterError on any violated invariant.
void validate(const Instance& instance);

// Chain state (alpha, beta, t, w, l). Integer label counts are kept next to
// the real-valued beliefs because the DP tables are indexed by them.
struct SystemState {
  std::vector<TaskBelief> beliefs;
  std::vector<int> positives;
  std::vector<int> negatives;
  std::vector<int> in_flight;
  double time = 0.0;
  int arrivals_used = 0;

  int num_tasks() const noexcept { return static_cast<int>(beliefs.size()); }
  int assigned(int task) const { return positives[task] + negatives[task] + in_flight[task]; }
  int labels(int task) const { return positives[task] + negatives[task]; }
  int total_in_flight() const noexcept;
};

SystemState initial_state(const Instance& instance);

enum class EventKind { arrival, completion };

struct Event {
  EventKind kind = EventKind::arrival;
  int task = -1;                    // completion only
  Label label = Label::negative;    // completion only
  double gap = 0.0;                 // time since the previous event

  static Event arrival(double gap) { return Event{EventKind::arrival, -1, Label::negative, gap}; }
  static Event completion(int task, Label label, double gap) {
    return Event{EventKind::completion, task, label, gap};
  }
};

// Probability of each next event in the embedded chain. Index x of
// `positive`/`negative` is a completion on task x with that label.
struct TransitionProbabilities {
  double arrival = 1.0;
  std::vector<double> positive;
  std::vector<double> negative;
};

// q(s) = mu * sum_x w_x + r.
double event_rate(const SystemState& state, const Instance& instance);

TransitionProbabilities transition_probabilities(const SystemState& state,
                                                 const Instance& instance);

// Event time and type without a label; simulators that own the label source
// (true theta, replayed data) draw the label themselves.
struct EventTiming {
  double gap = 0.0;
  EventKind kind = EventKind::arrival;
  int task = -1;
};

EventTiming sample_event_timing(const SystemState& state, const Instance& instance, Rng& rng);

// Full kernel draw with the label from the posterior predictive.
Event sample_next_event(const SystemState& state, const Instance& instance, Rng& rng);

// True when task can take one more worker under the per-task cap.
bool task_eligible(const SystemState& state, const Instance& instance, int task);

// Applies one event. `assignment` is the task given to an arriving worker
// while budget remains; leaving it empty skips the worker, which still uses
// one unit of budget. When t + gap reaches the horizon the event is void,
// all in-flight work is cancelled and only the clock moves.
SystemState apply_event(const SystemState& state, const Event& event,
                        std::optional<int> assignment, const Instance& instance);

bool is_terminal(const SystemState& state, const Instance& instance);

}  // namespace crowdalloc
