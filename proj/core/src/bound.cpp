#include "crowdalloc/bound.hpp"

#include <cmath>

#include "crowdalloc/errors.hpp"

namespace crowdalloc {

BoundEvaluator::BoundEvaluator(const Instance& instance) : instance_(instance) {
  validate(instance_);
  if (!instance_.infinite_horizon())
    throw UnsupportedError("upper bound is only available for an infinite horizon");
  for (int x = 0; x < instance_.num_tasks; ++x) {
    const SingleTaskParams p = single_task_params(instance_, x);
    bool found = false;
    for (auto& g : groups_) {
      if (g.params == p) {
        ++g.count;
        found = true;
        break;
      }
    }
    if (!found) groups_.push_back(Group{p, 1});
  }
}

double BoundEvaluator::operator()(double lambda) {
  if (!(lambda >= 0.0)) throw ParameterError("b_of_lambda: lambda must be nonnegative");
  double sum = 0.0;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const auto key = std::make_pair(g, lambda);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      ++solves_;
      it = cache_.emplace(key, solve_single_task(groups_[g].params, lambda).start_value()).first;
    }
    sum += groups_[g].count * it->second;
  }
  return sum + instance_.budget * lambda;
}

double b_of_lambda(const Instance& instance, double lambda) {
  BoundEvaluator eval(instance);
  return eval(lambda);
}

BoundResult upper_bound(const Instance& instance, double tol) {
  if (!(tol > 0.0)) throw ParameterError("upper_bound: tol must be positive");
  BoundEvaluator eval(instance);
  BoundResult result;
  auto probe = [&](double lambda) {
    for (const auto& e : result.evaluations)
      if (e.lambda == lambda) return e.value;  // the last step revisits a point
    const double v = eval(lambda);
    result.evaluations.push_back(BoundProbe{lambda, v});
    if (result.evaluations.size() == 1 || v < result.bound_value) {
      result.bound_value = v;
      result.lambda_star = lambda;
    }
    return v;
  };

  double lo = 0.0;
  double hi = lambda_upper_limit(instance.thresholds.front());
  for (double d : instance.thresholds) hi = std::fmax(hi, lambda_upper_limit(d));
  probe(lo);
  probe(hi);

  // The final bracket has length 2 (hi - lo) / F_n.
  std::vector<double> fib{1.0, 1.0};
  while (fib.back() < 2.0 * (hi - lo) / tol)
    fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  std::size_t n = fib.size() - 1;
  result.bracket_width = hi - lo;
  if (n < 3) return result;

  double x1 = lo + fib[n - 2] / fib[n] * (hi - lo);
  double x2 = lo + fib[n - 1] / fib[n] * (hi - lo);
  double f1 = probe(x1);
  double f2 = probe(x2);
  while (n > 2) {
    --n;
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = lo + fib[n - 2] / fib[n] * (hi - lo);
      f1 = probe(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + fib[n - 1] / fib[n] * (hi - lo);
      f2 = probe(x2);
    }
  }
  result.bracket_width = hi - lo;
  return result;
}

GapReport optimality_gap(double policy_mean, double policy_ci_halfwidth, double bound,
                         int num_tasks) {
  if (!(bound >= 0.0)) throw ParameterError("optimality_gap: bound must be nonnegative");
  if (num_tasks < 1) throw ParameterError("optimality_gap: need at least one task");
  GapReport g;
  const double gap = bound - policy_mean;
  g.per_task_gap = gap / num_tasks;
  g.relative_gap = bound > 0.0 ? gap / bound : 0.0;
  g.ci_exceeds_bound = policy_mean + policy_ci_halfwidth > bound;
  return g;
}

}  // namespace crowdalloc
