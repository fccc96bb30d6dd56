#pragma once

// Deterministic unit-sphere sampling for d <= 3, plus a generic minimizer
// (dense scan followed by local pattern-search refinement).

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace kfp {

// d=1: {+1,-1}. d=2: angular grid of spacing ~resolution (radians).
// d=3: Fibonacci lattice with point count chosen for mean spacing ~resolution.
std::vector<Eigen::VectorXd> sphere_grid(int d, double resolution);

struct SphereMin {
  double value = 0.0;
  Eigen::VectorXd argmin;
};

// Scans the grid, then refines the best point by projected pattern search
// down to step 1e-12. f must be continuous on the sphere.
SphereMin minimize_over_sphere(int d, double resolution,
                               const std::function<double(const Eigen::VectorXd&)>& f);

// Same machinery, refining around every grid point below `keep_below` and
// returning the refined local minima (used to enumerate near-zero sets).
std::vector<SphereMin> scan_below(int d, double resolution, double keep_below,
                                  const std::function<double(const Eigen::VectorXd&)>& f);

// Local refinement from one starting point.
SphereMin refine_on_sphere(const Eigen::VectorXd& start, double initial_step,
                           const std::function<double(const Eigen::VectorXd&)>& f);

}  // namespace kfp
