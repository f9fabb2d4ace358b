#include "crowdalloc/index_table.hpp"

#include <string>

#include "crowdalloc/errors.hpp"

namespace crowdalloc {

namespace {

// Pruning tolerance for collinear knots; the accumulated error stays far
// below the 1e-6 resolution needed for the index.
constexpr double kSimplifyTolerance = 1e-14;

// A state counts as non-monotone only if hire clearly returns after skip.
constexpr double kReturnMargin = 1e-9;

struct Crossing {
  double lambda_star = 0.0;
  bool monotone = true;
};

// Last point where the advantage is still >= -kHireTolerance, plus whether it
// clearly rises again afterwards.
Crossing first_crossing(const PiecewiseLinear& advantage) {
  const auto xs = advantage.xs();
  const auto ys = advantage.ys();
  Crossing c;
  std::size_t k = 0;
  if (ys[0] < -kHireTolerance) {
    c.lambda_star = 0.0;
  } else {
    while (k < ys.size() && ys[k] >= -kHireTolerance) ++k;
    if (k == ys.size()) return Crossing{advantage.upper(), true};
    const double y0 = ys[k - 1] + kHireTolerance;
    const double y1 = ys[k] + kHireTolerance;
    c.lambda_star = xs[k - 1] + (xs[k] - xs[k - 1]) * (y0 / (y0 - y1));
  }
  for (std::size_t j = k; j < ys.size(); ++j)
    if (ys[j] > kReturnMargin) c.monotone = false;
  return c;
}

}  // namespace

IndexTable::IndexTable(const SingleTaskParams& params)
    : params_(params),
      indexer_(params.total_cap()),
      lambda_star_(static_cast<std::size_t>(params.budget + 1) * indexer_.size(), 0.0),
      monotone_(lambda_star_.size(), 1) {}

IndexTable IndexTable::build(const SingleTaskParams& params) {
  validate(params);
  IndexTable table(params);
  const LabelStateIndexer& ix = table.indexer_;
  const int cap = ix.cap();
  const std::size_t stride = ix.size();
  const double upper = lambda_upper_limit(params.threshold);
  const double r = params.arrival_rate;
  const double mu = params.completion_rate;

  std::vector<PiecewiseLinear> prev(stride);
  std::vector<PiecewiseLinear> cur(stride);
  for (int u = 0; u <= params.budget; ++u) {
    for (int t = 0; t <= cap; ++t) {
      for (int w = 0; w <= t; ++w) {
        for (int p = 0; p <= t - w; ++p) {
          const int n = t - w - p;
          const int here = ix.index(p, n, w);
          const std::size_t slot = static_cast<std::size_t>(u) * stride + here;
          PiecewiseLinear arrival;
          if (u > 0) {
            const PiecewiseLinear& skip = prev[here];
            if (t < cap) {
              const PiecewiseLinear take = minus_identity(prev[ix.index(p, n, w + 1)]);
              PiecewiseLinear advantage = combine(1.0, take, -1.0, skip);
              advantage.simplify(kSimplifyTolerance);
              const Crossing c = first_crossing(advantage);
              table.lambda_star_[slot] = c.lambda_star;
              if (!c.monotone) {
                table.monotone_[slot] = 0;
                ++table.non_monotone_count_;
              }
              arrival = pointwise_max(take, skip);
            } else {
              arrival = skip;
            }
          }
          PiecewiseLinear value;
          if (w == 0) {
            value = u > 0 ? std::move(arrival)
                          : PiecewiseLinear::constant(
                                task_reward(TaskBelief(params.alpha0 + p, params.beta0 + n,
                                                       params.threshold)),
                                upper);
          } else {
            const double mean = (params.alpha0 + p) / (params.alpha0 + params.beta0 + p + n);
            const PiecewiseLinear completion =
                combine(mean, cur[ix.index(p + 1, n, w - 1)], 1.0 - mean,
                        cur[ix.index(p, n + 1, w - 1)]);
            if (u == 0) {
              value = completion;
            } else {
              const double q = r + mu * w;
              value = combine(r / q, arrival, mu * w / q, completion);
            }
          }
          value.simplify(kSimplifyTolerance);
          if (value.knots() > table.max_knots_) table.max_knots_ = value.knots();
          cur[here] = std::move(value);
        }
      }
    }
    std::swap(prev, cur);
  }
  table.start_value_ = prev[ix.index(0, 0, 0)];
  return table;
}

std::size_t IndexTable::flat(const SingleTaskDpState& s) const {
  const int idx = indexer_.index(s.pos, s.neg, s.in_flight);
  if (idx < 0 || s.budget_left < 0 || s.budget_left > params_.budget)
    throw ParameterError("IndexTable: state outside the table domain");
  return static_cast<std::size_t>(s.budget_left) * indexer_.size() + idx;
}

bool IndexTable::monotone(const SingleTaskDpState& s) const { return monotone_[flat(s)] != 0; }

double IndexTable::lambda_star(const SingleTaskDpState& s) const {
  const std::size_t slot = flat(s);
  if (!monotone_[slot])
    throw DiagnosticError("IndexTable: hire decision at (" + std::to_string(s.pos) + "," +
                          std::to_string(s.neg) + "," + std::to_string(s.in_flight) + "," +
                          std::to_string(s.budget_left) + ") is not monotone in lambda");
  return lambda_star_[slot];
}

}  // namespace crowdalloc
