#include "crowdalloc/belief.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "crowdalloc/errors.hpp"

namespace crowdalloc {

namespace {

// Continued fraction for the incomplete beta function, modified Lentz method.
double beta_continued_fraction(double x, double a, double b) {
  constexpr int kMaxIterations = 100000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) return h;
  }
  return h;
}

// x^a (1-x)^b / (a B(a, b)) evaluated in log space.
double front_factor(double x, double a, double b) {
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  return std::exp(log_front) / a;
}

}  // namespace

TaskBelief::TaskBelief(double alpha, double beta, double threshold)
    : alpha_(alpha), beta_(beta), threshold_(threshold) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw ParameterError("TaskBelief: alpha must be positive, got " + std::to_string(alpha));
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw ParameterError("TaskBelief: beta must be positive, got " + std::to_string(beta));
  if (!(threshold > 0.0 && threshold < 1.0))
    throw ParameterError("TaskBelief: threshold must lie in (0,1), got " + std::to_string(threshold));
}

double reg_inc_beta(double x, double a, double b) {
  if (!(x >= 0.0 && x <= 1.0)) throw ParameterError("reg_inc_beta: x must lie in [0,1]");
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("reg_inc_beta: a and b must be positive");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  if (x == 0.5 && a == b) return 0.5;  // symmetric beta; keeps the label tie exact
  if (x <= a / (a + b)) return front_factor(x, a, b) * beta_continued_fraction(x, a, b);
  return 1.0 - front_factor(1.0 - x, b, a) * beta_continued_fraction(1.0 - x, b, a);
}

double prob_below_threshold(const TaskBelief& belief) {
  return reg_inc_beta(belief.threshold(), belief.alpha(), belief.beta());
}

double task_reward(const TaskBelief& belief) {
  const double below = prob_below_threshold(belief);
  return std::fmax(1.0 - below, below);
}

double total_reward(std::span<const TaskBelief> beliefs) {
  if (beliefs.empty()) throw ParameterError("total_reward: empty belief list");
  double sum = 0.0;
  for (const auto& b : beliefs) sum += task_reward(b);
  return sum;
}

TaskBelief posterior_update(const TaskBelief& belief, Label label) {
  if (label == Label::positive)
    return TaskBelief(belief.alpha() + 1.0, belief.beta(), belief.threshold());
  return TaskBelief(belief.alpha(), belief.beta() + 1.0, belief.threshold());
}

Label predicted_label(const TaskBelief& belief) {
  const double below = prob_below_threshold(belief);
  return (1.0 - below) > below ? Label::positive : Label::negative;
}

}  // namespace crowdalloc
