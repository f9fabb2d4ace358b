#include "crowdalloc/piecewise_linear.hpp"

#include <cmath>

#include "crowdalloc/errors.hpp"

namespace crowdalloc {

namespace {

// Knots closer than this are treated as one.
constexpr double kKnotMerge = 1e-15;

double interpolate(double x0, double y0, double x1, double y1, double x) {
  if (x1 == x0) return y0;
  return y0 + (y1 - y0) * ((x - x0) / (x1 - x0));
}

// Sorted union of two knot sequences sharing both endpoints.
std::vector<double> merge_knots(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    double next = 0.0;
    if (j >= b.size() || (i < a.size() && a[i] <= b[j]))
      next = a[i++];
    else
      next = b[j++];
    if (out.empty() || next - out.back() > kKnotMerge) out.push_back(next);
  }
  return out;
}

// Values of f at the sorted points xs (a superset walk over f's knots).
std::vector<double> sample(const PiecewiseLinear& f, std::span<const double> xs) {
  const auto fx = f.xs();
  const auto fy = f.ys();
  std::vector<double> out(xs.size());
  std::size_t seg = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double x = xs[k];
    while (seg + 2 < fx.size() && fx[seg + 1] < x) ++seg;
    if (std::fabs(x - fx[seg + 1]) <= kKnotMerge)
      out[k] = fy[seg + 1];
    else if (std::fabs(x - fx[seg]) <= kKnotMerge)
      out[k] = fy[seg];
    else
      out[k] = interpolate(fx[seg], fy[seg], fx[seg + 1], fy[seg + 1], x);
  }
  return out;
}

}  // namespace

PiecewiseLinear::PiecewiseLinear(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() < 2 || xs_.size() != ys_.size())
    throw ParameterError("PiecewiseLinear: need matching knot vectors with >= 2 entries");
  if (xs_.front() != 0.0) throw ParameterError("PiecewiseLinear: domain must start at 0");
  for (std::size_t i = 1; i < xs_.size(); ++i)
    if (!(xs_[i] > xs_[i - 1])) throw ParameterError("PiecewiseLinear: knots must increase");
}

PiecewiseLinear PiecewiseLinear::constant(double value, double upper) {
  return PiecewiseLinear({0.0, upper}, {value, value});
}

double PiecewiseLinear::operator()(double x) const {
  if (x <= xs_.front()) return ys_.front();
  if (x >= xs_.back()) return ys_.back();
  std::size_t lo = 0;
  std::size_t hi = xs_.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (xs_[mid] <= x)
      lo = mid;
    else
      hi = mid;
  }
  return interpolate(xs_[lo], ys_[lo], xs_[hi], ys_[hi], x);
}

void PiecewiseLinear::simplify(double tol) {
  if (xs_.size() <= 2) return;
  std::vector<double> kx;
  std::vector<double> ky;
  kx.reserve(xs_.size());
  ky.reserve(ys_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    while (kx.size() >= 2) {
      const std::size_t m = kx.size() - 1;
      const double chord = interpolate(kx[m - 1], ky[m - 1], xs_[i], ys_[i], kx[m]);
      if (std::fabs(chord - ky[m]) > tol) break;
      kx.pop_back();
      ky.pop_back();
    }
    kx.push_back(xs_[i]);
    ky.push_back(ys_[i]);
  }
  xs_ = std::move(kx);
  ys_ = std::move(ky);
}

PiecewiseLinear combine(double a, const PiecewiseLinear& f, double b, const PiecewiseLinear& g) {
  std::vector<double> xs = merge_knots(f.xs(), g.xs());
  const std::vector<double> fv = sample(f, xs);
  const std::vector<double> gv = sample(g, xs);
  std::vector<double> ys(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) ys[k] = a * fv[k] + b * gv[k];
  PiecewiseLinear out;
  out.xs_ = std::move(xs);
  out.ys_ = std::move(ys);
  return out;
}

PiecewiseLinear pointwise_max(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  const std::vector<double> xs = merge_knots(f.xs(), g.xs());
  const std::vector<double> fv = sample(f, xs);
  const std::vector<double> gv = sample(g, xs);
  PiecewiseLinear out;
  out.xs_.reserve(xs.size() + 4);
  out.ys_.reserve(xs.size() + 4);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k > 0) {
      const double d0 = fv[k - 1] - gv[k - 1];
      const double d1 = fv[k] - gv[k];
      if ((d0 > 0.0 && d1 < 0.0) || (d0 < 0.0 && d1 > 0.0)) {
        const double x = xs[k - 1] + (xs[k] - xs[k - 1]) * (d0 / (d0 - d1));
        if (x - out.xs_.back() > kKnotMerge && xs[k] - x > kKnotMerge) {
          out.xs_.push_back(x);
          out.ys_.push_back(interpolate(xs[k - 1], fv[k - 1], xs[k], fv[k], x));
        }
      }
    }
    out.xs_.push_back(xs[k]);
    out.ys_.push_back(std::fmax(fv[k], gv[k]));
  }
  return out;
}

PiecewiseLinear minus_identity(PiecewiseLinear f) {
  for (std::size_t k = 0; k < f.xs_.size(); ++k) f.ys_[k] -= f.xs_[k];
  return f;
}

}  // namespace crowdalloc
