#pragma once

#include <span>
#include <vector>

namespace crowdalloc {

// Continuous piecewise-linear function on [0, upper], stored as sorted knots
// that include both endpoints. Value functions of the single-task relaxation
// are of this form in the multiplier.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  PiecewiseLinear(std::vector<double> xs, std::vector<double> ys);

  static PiecewiseLinear constant(double value, double upper);

  double operator()(double x) const;
  double upper() const { return xs_.back(); }
  std::span<const double> xs() const { return xs_; }
  std::span<const double> ys() const { return ys_; }
  std::size_t knots() const { return xs_.size(); }

  // Drops interior knots lying within `tol` of the chord through their
  // neighbours.
  void simplify(double tol);

  friend PiecewiseLinear combine(double a, const PiecewiseLinear& f, double b,
                                 const PiecewiseLinear& g);
  friend PiecewiseLinear pointwise_max(const PiecewiseLinear& f, const PiecewiseLinear& g);
  friend PiecewiseLinear minus_identity(PiecewiseLinear f);

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

// a*f + b*g on the union of the knots.
PiecewiseLinear combine(double a, const PiecewiseLinear& f, double b, const PiecewiseLinear& g);

// max(f, g), with crossing points inserted as knots.
PiecewiseLinear pointwise_max(const PiecewiseLinear& f, const PiecewiseLinear& g);

// x -> f(x) - x.
PiecewiseLinear minus_identity(PiecewiseLinear f);

}  // namespace crowdalloc
