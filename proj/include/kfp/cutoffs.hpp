#pragma once

// Smooth profile construction shared by the dyadic and fine partitions.
//
// SmoothRamp is the normalized cumulative integral of the mollifier bump
// b(t) = exp(-1/(1-t^2)): S(0)=0, S(1)=1, all derivatives vanish at the ends.
// It is tabulated once (composite Simpson) and interpolated with a C^1 cubic
// Hermite using the exact integrand as slope data.
//
// RadialCutoffPair turns the ramp into the Littlewood-Paley pair (chi, phi):
// chi is radial, 1 on a ball, 0 outside a slightly larger one, and
// phi(x) = chi(x/2) - chi(x), so that chi(x) + sum_{j>=0} phi(2^-j x) = 1
// telescopes exactly.

#include <vector>

namespace kfp {

class SmoothRamp {
 public:
  static const SmoothRamp& instance();

  // Clamped to 0 below 0 and 1 above 1.
  double value(double t) const;
  double deriv(double t) const;

 private:
  SmoothRamp();
  static constexpr int kIntervals = 4000;
  std::vector<double> values_;  // S at uniform knots on [0,1]
  std::vector<double> slopes_;  // exact integrand (normalized bump) at knots
};

class RadialCutoffPair {
 public:
  RadialCutoffPair();

  // chi = 1 for r <= plateau(), 0 for r >= outer(); the ramp runs in
  // u = log2(r) so dyadic rescaling shifts it by integers.
  double chi(double r) const;
  double chi_deriv(double r) const;  // d chi / dr
  double phi(double r) const { return chi(0.5 * r) - chi(r); }
  double phi_deriv(double r) const { return 0.5 * chi_deriv(0.5 * r) - chi_deriv(r); }

  double plateau() const;  // 2^{-0.41} ~ 0.7526 (> 3/4)
  double outer() const;    // 2^{0.41} ~ 1.3286 (< 4/3)

 private:
  double half_width_;  // 0.41, ramp over log2(r) in [-w, w]
};

}  // namespace kfp
