#pragma once

#include <cstdint>
#include <vector>

#include "crowdalloc/ct_model.hpp"

namespace crowdalloc {

// One task of the relaxed problem: its prior, threshold, the shared rates,
// the global budget U and the per-task cap on total assigned workers.
struct SingleTaskParams {
  double alpha0 = 1.0;
  double beta0 = 1.0;
  double threshold = 0.5;
  double arrival_rate = 0.1;
  double completion_rate = 0.4;
  int budget = 0;
  int worker_cap = 1;

  // Largest number of workers this task can ever hold: min(cap, U).
  int total_cap() const noexcept { return worker_cap < budget ? worker_cap : budget; }

  friend bool operator==(const SingleTaskParams&, const SingleTaskParams&) = default;
};

SingleTaskParams single_task_params(const Instance& instance, int task);
void validate(const SingleTaskParams& params);

// Search interval [0, upper] for the multiplier. A single hire can never be
// worth more than 0.5 because the task reward lives in [0.5, 1].
double lambda_upper_limit(double threshold);

// Hire is recorded whenever it is within this margin of skipping. With an
// infinite horizon, hiring now and hiring at a later arrival frequently tie
// exactly; counting ties as hire keeps the decision monotone in lambda.
inline constexpr double kHireTolerance = 1e-12;

struct SingleTaskDpState {
  int pos = 0;          // positive labels observed
  int neg = 0;          // negative labels observed
  int in_flight = 0;    // workers currently on the task
  int budget_left = 0;  // remaining global arrivals u = U - l

  friend bool operator==(const SingleTaskDpState&, const SingleTaskDpState&) = default;
};

// Dense index over (pos, neg, in_flight) with pos + neg + in_flight <= cap.
class LabelStateIndexer {
 public:
  explicit LabelStateIndexer(int cap);

  int cap() const noexcept { return cap_; }
  int size() const noexcept { return size_; }
  // -1 when outside the simplex.
  int index(int pos, int neg, int in_flight) const noexcept;

 private:
  int cap_;
  int size_ = 0;
  std::vector<int> lookup_;
};

// Value and arrival decisions V(pos, neg, w, u) of the relaxed single-task
// problem sup E[R_x - lambda * (#hires)] with an infinite horizon.
class SingleTaskDpTable {
 public:
  const SingleTaskParams& params() const noexcept { return params_; }
  double lambda() const noexcept { return lambda_; }
  int max_budget_left() const noexcept { return layers_ - 1; }

  bool in_domain(const SingleTaskDpState& s) const noexcept;
  double value(const SingleTaskDpState& s) const;
  bool hire(const SingleTaskDpState& s) const;
  // V(0, 0, 0, U).
  double start_value() const;

 private:
  friend SingleTaskDpTable solve_single_task_layers(const SingleTaskParams&, double, int);

  SingleTaskDpTable(const SingleTaskParams& params, double lambda, int layers);
  std::size_t flat(const SingleTaskDpState& s) const;

  SingleTaskParams params_;
  double lambda_;
  int layers_;
  LabelStateIndexer indexer_;
  std::vector<double> value_;
  std::vector<std::uint8_t> hire_;
};

// Backward induction over u = 0..U.
SingleTaskDpTable solve_single_task(const SingleTaskParams& params, double lambda);

// Same recursion truncated to u = 0..max_budget_left; values at those layers
// are identical to the full solve.
SingleTaskDpTable solve_single_task_layers(const SingleTaskParams& params, double lambda,
                                           int max_budget_left);

bool optimal_action(const SingleTaskDpTable& table, const SingleTaskDpState& state);

// Switching multiplier lambda*: hire is (weakly) optimal at `state` below it
// and strictly worse than skip above it. Found by bracketing on an 11-point
// grid over [0, lambda_upper_limit] and bisecting to 1e-6. Throws
// DiagnosticError when the grid shows hire after skip. Zero when no hire is
// possible.
double index_lambda_star(const SingleTaskDpState& state, const SingleTaskParams& params);

}  // namespace crowdalloc
