#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "crowdalloc/ct_model.hpp"
#include "crowdalloc/policies.hpp"

namespace crowdalloc {

enum class LabelMode { synthetic, replay };

// Recorded crowd labels for one task, read in order, and its gold label.
struct ReplayTask {
  std::vector<Label> labels;
  Label gold = Label::negative;
};

// Where completion labels come from. Synthetic: theta_x is drawn once per
// episode from the prior and labels are Bernoulli(theta_x). Replay: labels
// are read from `tasks` (one entry per instance task).
struct LabelSource {
  LabelMode mode = LabelMode::synthetic;
  std::vector<ReplayTask> tasks;

  static LabelSource synthetic() { return {}; }
  static LabelSource replay(std::vector<ReplayTask> tasks);
};

struct EpisodeResult {
  double terminal_reward = 0.0;
  std::optional<double> accuracy;  // replay only
  std::vector<int> assignments;    // workers given to each task
  int skipped = 0;                 // arrivals with budget but no eligible task
  long events = 0;                 // N
  int max_task_load = 0;
  bool cap_binding = false;  // some decision found a task at its cap
  int replay_fallbacks = 0;  // labels drawn after a task's list ran out
  std::vector<int> positives;
  std::vector<int> negatives;
  std::vector<Event> event_log;  // filled when EpisodeOptions::record_events
};

struct EpisodeOptions {
  bool record_events = false;
  // Called with the state after each event and the skip count so far.
  std::function<void(const SystemState&, int)> observer;
};

EpisodeResult run_episode(const Instance& instance, const Policy& policy,
                          const LabelSource& source, Rng& rng,
                          const EpisodeOptions& options = {});

struct ConfidenceInterval {
  double mean = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double sd = 0.0;  // sample standard deviation (n - 1)
  double halfwidth() const noexcept { return hi - mean; }
};

// Normal-approximation 95% interval, mean +- 1.96 s / sqrt(n).
ConfidenceInterval confidence_interval(std::span<const double> samples);

struct ReplicationStats {
  int n = 0;
  double mean = 0.0;
  double sd = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double per_task_mean = 0.0;
  double halfwidth() const noexcept { return ci_hi - mean; }
  double standard_error() const noexcept;
};

struct ReplicationReport {
  PolicyKind policy = PolicyKind::index;
  ReplicationStats reward;
  std::optional<ReplicationStats> accuracy;
  std::vector<EpisodeResult> episodes;  // by replication index
  int max_task_load = 0;
  int episodes_cap_binding = 0;
  long replay_fallbacks = 0;
};

// n episodes, replication i seeded by replication_rng(master_seed, i). The
// report does not depend on `threads` (0 = hardware concurrency).
ReplicationReport run_replications(const Instance& instance, const Policy& policy,
                                   const LabelSource& source, int n, int threads = 0);
ReplicationReport run_replications(const Instance& instance, PolicyKind policy,
                                   const LabelSource& source, int n, int threads = 0);

struct CapReport {
  int worker_cap = 0;
  int max_task_load = 0;
  int episodes_cap_binding = 0;
  bool warning = false;  // the cap constrained at least one decision
};

CapReport validate_cap(const Instance& instance, PolicyKind policy, int n);

}  // namespace crowdalloc
