#pragma once

#include <span>

namespace crowdalloc {

enum class Label { negative = 0, positive = 1 };

// Beta(alpha, beta) posterior on a task's positive-label probability, with
// the classification threshold d. The task's true label is positive when
// theta > d.
class TaskBelief {
 public:
  TaskBelief(double alpha, double beta, double threshold);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double threshold() const noexcept { return threshold_; }
  double mean() const noexcept { return alpha_ / (alpha_ + beta_); }

  friend bool operator==(const TaskBelief&, const TaskBelief&) = default;

 private:
  double alpha_;
  double beta_;
  double threshold_;
};

// Regularized incomplete beta function I_x(a, b), i.e. the Beta(a, b) cdf at x.
// Absolute error below 1e-10 for the parameter ranges used here.
double reg_inc_beta(double x, double a, double b);

// P[theta < d] under the belief.
double prob_below_threshold(const TaskBelief& belief);

// Expected terminal reward of one task: the better of the two labels,
// max(P[theta > d], P[theta < d]). Always in [0.5, 1].
double task_reward(const TaskBelief& belief);

double total_reward(std::span<const TaskBelief> beliefs);

TaskBelief posterior_update(const TaskBelief& belief, Label label);

// Positive iff P[theta > d] > P[theta < d]; an exact tie yields negative.
Label predicted_label(const TaskBelief& belief);

}  // namespace crowdalloc
