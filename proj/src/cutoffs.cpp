#include "kfp/cutoffs.hpp"

#include <cmath>

namespace kfp {

namespace {

// Mollifier bump on (-1,1), rescaled to s in (0,1).
double bump(double s) {
  double t = 2.0 * s - 1.0;
  double w = 1.0 - t * t;
  if (w <= 0.0) return 0.0;
  return std::exp(-1.0 / w);
}

}  // namespace

SmoothRamp::SmoothRamp() {
  values_.resize(kIntervals + 1);
  slopes_.resize(kIntervals + 1);
  const double h = 1.0 / kIntervals;
  values_[0] = 0.0;
  for (int i = 1; i <= kIntervals; ++i) {
    double a = (i - 1) * h, b = i * h;
    values_[i] = values_[i - 1] + h / 6.0 * (bump(a) + 4.0 * bump(0.5 * (a + b)) + bump(b));
  }
  const double total = values_[kIntervals];
  for (int i = 0; i <= kIntervals; ++i) {
    values_[i] /= total;
    slopes_[i] = bump(i * h) / total;
  }
  values_[kIntervals] = 1.0;
}

const SmoothRamp& SmoothRamp::instance() {
  static const SmoothRamp ramp;
  return ramp;
}

double SmoothRamp::value(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double x = t * kIntervals;
  int i = std::min(static_cast<int>(x), kIntervals - 1);
  double u = x - i;
  const double h = 1.0 / kIntervals;
  double p0 = values_[i], p1 = values_[i + 1];
  double m0 = slopes_[i] * h, m1 = slopes_[i + 1] * h;
  double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * p0 + (u3 - 2 * u2 + u) * m0 + (-2 * u3 + 3 * u2) * p1 +
         (u3 - u2) * m1;
}

double SmoothRamp::deriv(double t) const {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  double x = t * kIntervals;
  int i = std::min(static_cast<int>(x), kIntervals - 1);
  double u = x - i;
  const double h = 1.0 / kIntervals;
  double p0 = values_[i], p1 = values_[i + 1];
  double m0 = slopes_[i] * h, m1 = slopes_[i + 1] * h;
  double u2 = u * u;
  double d = (6 * u2 - 6 * u) * p0 + (3 * u2 - 4 * u + 1) * m0 + (-6 * u2 + 6 * u) * p1 +
             (3 * u2 - 2 * u) * m1;
  return d / h;
}

RadialCutoffPair::RadialCutoffPair() : half_width_(0.41) {}

double RadialCutoffPair::plateau() const { return std::pow(2.0, -half_width_); }
double RadialCutoffPair::outer() const { return std::pow(2.0, half_width_); }

double RadialCutoffPair::chi(double r) const {
  if (r <= 0.0) return 1.0;
  double u = std::log2(r);
  if (u <= -half_width_) return 1.0;
  if (u >= half_width_) return 0.0;
  return 1.0 - SmoothRamp::instance().value((u + half_width_) / (2.0 * half_width_));
}

double RadialCutoffPair::chi_deriv(double r) const {
  if (r <= 0.0) return 0.0;
  double u = std::log2(r);
  if (u <= -half_width_ || u >= half_width_) return 0.0;
  double ds = SmoothRamp::instance().deriv((u + half_width_) / (2.0 * half_width_));
  // d/dr = d/du * 1/(r ln 2), d/du of the argument = 1/(2w)
  return -ds / (2.0 * half_width_ * r * std::log(2.0));
}

}  // namespace kfp
