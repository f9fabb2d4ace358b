#include "crowdalloc/lagrange_dp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crowdalloc/errors.hpp"

namespace crowdalloc {

SingleTaskParams single_task_params(const Instance& inst, int task) {
  SingleTaskParams p;
  p.alpha0 = inst.priors.at(task).alpha;
  p.beta0 = inst.priors.at(task).beta;
  p.threshold = inst.thresholds.at(task);
  p.arrival_rate = inst.arrival_rate;
  p.completion_rate = inst.completion_rate;
  p.budget = inst.budget;
  p.worker_cap = inst.worker_cap;
  return p;
}

void validate(const SingleTaskParams& p) {
  (void)TaskBelief(p.alpha0, p.beta0, p.threshold);
  if (!(p.arrival_rate > 0.0) || !(p.completion_rate > 0.0))
    throw ParameterError("single task: rates must be positive");
  if (p.budget < 0) throw ParameterError("single task: budget must be nonnegative");
  if (p.worker_cap < 1) throw ParameterError("single task: worker cap must be at least 1");
}

double lambda_upper_limit(double threshold) { return threshold == 0.5 ? 0.5 : 1.0; }

LabelStateIndexer::LabelStateIndexer(int cap) : cap_(cap) {
  if (cap < 0) throw ParameterError("LabelStateIndexer: negative cap");
  const int side = cap + 1;
  lookup_.assign(static_cast<std::size_t>(side) * side * side, -1);
  for (int p = 0; p <= cap; ++p)
    for (int n = 0; p + n <= cap; ++n)
      for (int w = 0; p + n + w <= cap; ++w)
        lookup_[(static_cast<std::size_t>(p) * side + n) * side + w] = size_++;
}

int LabelStateIndexer::index(int pos, int neg, int in_flight) const noexcept {
  if (pos < 0 || neg < 0 || in_flight < 0 || pos + neg + in_flight > cap_) return -1;
  const int side = cap_ + 1;
  return lookup_[(static_cast<std::size_t>(pos) * side + neg) * side + in_flight];
}

SingleTaskDpTable::SingleTaskDpTable(const SingleTaskParams& params, double lambda, int layers)
    : params_(params),
      lambda_(lambda),
      layers_(layers),
      indexer_(params.total_cap()),
      value_(static_cast<std::size_t>(layers) * indexer_.size(), 0.0),
      hire_(static_cast<std::size_t>(layers) * indexer_.size(), 0) {}

bool SingleTaskDpTable::in_domain(const SingleTaskDpState& s) const noexcept {
  return s.budget_left >= 0 && s.budget_left < layers_ &&
         indexer_.index(s.pos, s.neg, s.in_flight) >= 0;
}

std::size_t SingleTaskDpTable::flat(const SingleTaskDpState& s) const {
  if (!in_domain(s))
    throw ParameterError("SingleTaskDpTable: state (" + std::to_string(s.pos) + "," +
                         std::to_string(s.neg) + "," + std::to_string(s.in_flight) + "," +
                         std::to_string(s.budget_left) + ") outside the table domain");
  return static_cast<std::size_t>(s.budget_left) * indexer_.size() +
         indexer_.index(s.pos, s.neg, s.in_flight);
}

double SingleTaskDpTable::value(const SingleTaskDpState& s) const { return value_[flat(s)]; }

bool SingleTaskDpTable::hire(const SingleTaskDpState& s) const { return hire_[flat(s)] != 0; }

double SingleTaskDpTable::start_value() const {
  return value(SingleTaskDpState{0, 0, 0, layers_ - 1});
}

SingleTaskDpTable solve_single_task(const SingleTaskParams& params, double lambda) {
  return solve_single_task_layers(params, lambda, params.budget);
}

SingleTaskDpTable solve_single_task_layers(const SingleTaskParams& params, double lambda,
                                           int max_budget_left) {
  validate(params);
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw ParameterError("solve_single_task: lambda must be nonnegative");
  if (max_budget_left < 0 || max_budget_left > params.budget)
    throw ParameterError("solve_single_task: layer count outside [0, U]");

  SingleTaskDpTable table(params, lambda, max_budget_left + 1);
  const LabelStateIndexer& ix = table.indexer_;
  const int cap = ix.cap();
  const std::size_t stride = ix.size();
  const double r = params.arrival_rate;
  const double mu = params.completion_rate;

  // Terminal reward and posterior predictive by label counts.
  std::vector<double> reward((cap + 1) * (cap + 1), 0.0);
  std::vector<double> p_pos((cap + 1) * (cap + 1), 0.0);
  for (int p = 0; p <= cap; ++p)
    for (int n = 0; p + n <= cap; ++n) {
      const TaskBelief b(params.alpha0 + p, params.beta0 + n, params.threshold);
      reward[p * (cap + 1) + n] = task_reward(b);
      p_pos[p * (cap + 1) + n] = b.mean();
    }

  for (int u = 0; u <= max_budget_left; ++u) {
    double* cur = table.value_.data() + u * stride;
    std::uint8_t* cur_hire = table.hire_.data() + u * stride;
    const double* prev = u > 0 ? table.value_.data() + (u - 1) * stride : nullptr;
    for (int t = 0; t <= cap; ++t) {
      for (int w = 0; w <= t; ++w) {
        for (int p = 0; p <= t - w; ++p) {
          const int n = t - w - p;
          const int here = ix.index(p, n, w);
          // Arrival branch: best of skip and hire.
          double arrival = 0.0;
          bool hire = false;
          if (u > 0) {
            const double skip = prev[here];
            arrival = skip;
            if (t < cap) {
              const double take = prev[ix.index(p, n, w + 1)] - lambda;
              hire = take - skip >= -kHireTolerance;
              arrival = std::fmax(take, skip);
            }
          }
          cur_hire[here] = hire ? 1 : 0;
          if (w == 0) {
            cur[here] = u > 0 ? arrival : reward[p * (cap + 1) + n];
            continue;
          }
          const double mean = p_pos[p * (cap + 1) + n];
          const double after_pos = cur[ix.index(p + 1, n, w - 1)];
          const double after_neg = cur[ix.index(p, n + 1, w - 1)];
          const double completion = mean * after_pos + (1.0 - mean) * after_neg;
          if (u == 0) {
            // Arrivals past the budget leave the state unchanged, so only
            // completions matter.
            cur[here] = completion;
          } else {
            const double q = r + mu * w;
            cur[here] = (r / q) * arrival + (mu * w / q) * completion;
          }
        }
      }
    }
  }
  return table;
}

bool optimal_action(const SingleTaskDpTable& table, const SingleTaskDpState& state) {
  return table.hire(state);
}

double index_lambda_star(const SingleTaskDpState& state, const SingleTaskParams& params) {
  validate(params);
  const LabelStateIndexer ix(params.total_cap());
  if (state.budget_left < 0 || state.budget_left > params.budget ||
      ix.index(state.pos, state.neg, state.in_flight) < 0)
    throw ParameterError("index_lambda_star: state outside the single-task domain");
  if (state.budget_left < 1 || state.pos + state.neg + state.in_flight >= ix.cap()) return 0.0;

  const int layers = state.budget_left;
  auto hires_at = [&](double lambda) {
    return solve_single_task_layers(params, lambda, layers).hire(state);
  };

  const double upper = lambda_upper_limit(params.threshold);
  constexpr int kGrid = 10;
  std::vector<bool> grid(kGrid + 1);
  for (int i = 0; i <= kGrid; ++i) grid[i] = hires_at(upper * i / kGrid);
  for (int i = 1; i <= kGrid; ++i) {
    if (grid[i] && !grid[i - 1])
      throw DiagnosticError("index_lambda_star: hire decision is not monotone in lambda near " +
                            std::to_string(upper * i / kGrid));
  }
  if (!grid[0]) return 0.0;
  if (grid[kGrid]) return upper;

  int last_hire = 0;
  while (grid[last_hire + 1]) ++last_hire;
  double lo = upper * last_hire / kGrid;
  double hi = upper * (last_hire + 1) / kGrid;
  constexpr double kTolerance = 1e-6;
  while (hi - lo > kTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (hires_at(mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace crowdalloc
