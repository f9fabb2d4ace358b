#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "crowdalloc/ct_model.hpp"
#include "crowdalloc/lagrange_dp.hpp"

namespace crowdalloc {

struct BoundProbe {
  double lambda = 0.0;
  double value = 0.0;
};

struct BoundResult {
  double lambda_star = 0.0;
  double bound_value = 0.0;
  std::vector<BoundProbe> evaluations;  // in probe order
  double bracket_width = 0.0;           // final Fibonacci bracket
};

// B(lambda) = sum_x V_x,lambda(start) + U * lambda. Tasks with identical
// (alpha0, beta0, d) share one single-task solve per lambda.
class BoundEvaluator {
 public:
  // Throws UnsupportedError for a finite horizon.
  explicit BoundEvaluator(const Instance& instance);

  double operator()(double lambda);
  std::size_t solves() const noexcept { return solves_; }

 private:
  struct Group {
    SingleTaskParams params;
    int count = 0;
  };
  Instance instance_;
  std::vector<Group> groups_;
  std::map<std::pair<std::size_t, double>, double> cache_;
  std::size_t solves_ = 0;
};

double b_of_lambda(const Instance& instance, double lambda);

// Fibonacci search for the minimizing scalar multiplier over
// [0, lambda_upper_limit] until the bracket is narrower than tol. Every
// probed B(lambda) is itself a valid bound; the smallest one is returned.
BoundResult upper_bound(const Instance& instance, double tol = 1e-4);

struct GapReport {
  double per_task_gap = 0.0;     // (bound - mean) / K
  double relative_gap = 0.0;     // (bound - mean) / bound
  bool ci_exceeds_bound = false;  // mean + halfwidth > bound
};

GapReport optimality_gap(double policy_mean, double policy_ci_halfwidth, double bound,
                         int num_tasks);

}  // namespace crowdalloc
