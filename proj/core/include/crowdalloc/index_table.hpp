#pragma once

#include <cstdint>
#include <vector>

#include "crowdalloc/lagrange_dp.hpp"
#include "crowdalloc/piecewise_linear.hpp"

namespace crowdalloc {

// lambda* for every state of one single-task relaxation, computed in a single
// backward pass that carries each value function as an exact piecewise-linear
// function of the multiplier. The hire advantage
//   D(lambda) = V(w+1, u-1) - lambda - V(w, u-1)
// is then a piecewise-linear function too, and lambda* is where it first
// falls below -kHireTolerance. This agrees with index_lambda_star to bisection
// accuracy and costs one pass instead of one DP solve per state and step.
class IndexTable {
 public:
  static IndexTable build(const SingleTaskParams& params);

  const SingleTaskParams& params() const noexcept { return params_; }

  // Throws DiagnosticError at states whose hire decision is not monotone
  // in lambda, and ParameterError outside the domain.
  double lambda_star(const SingleTaskDpState& state) const;

  bool monotone(const SingleTaskDpState& state) const;
  std::size_t non_monotone_states() const noexcept { return non_monotone_count_; }

  // V(0, 0, 0, U) as a function of lambda.
  const PiecewiseLinear& start_value_function() const noexcept { return start_value_; }

  // Largest knot count seen during the pass (a cost diagnostic).
  std::size_t max_knots() const noexcept { return max_knots_; }

 private:
  IndexTable(const SingleTaskParams& params);
  std::size_t flat(const SingleTaskDpState& s) const;

  SingleTaskParams params_;
  LabelStateIndexer indexer_;
  std::vector<double> lambda_star_;
  std::vector<std::uint8_t> monotone_;
  std::size_t non_monotone_count_ = 0;
  std::size_t max_knots_ = 0;
  PiecewiseLinear start_value_;
};

}  // namespace crowdalloc
