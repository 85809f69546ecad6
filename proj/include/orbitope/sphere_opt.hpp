#pragma once

#include <functional>
#include <vector>

#include "orbitope/hom_poly.hpp"

namespace orbitope {

/// Dense grids on S^{n-1} for n in {2, 3, 4}: angle grid on the circle,
/// Fibonacci lattice on S^2, spherical-coordinate product grid on S^3.
/// Calls fn(x) for roughly `points` grid points.
void for_each_sphere_grid_point(int n, long points, const std::function<void(const double*)>& fn);

struct SphereOptOptions {
  long grid_points = 200000;
  int refine_starts = 10;   // local searches launched from the best grid points
  int refine_iters = 60;
  double step_init = 0.1;
};

/// Estimated max of p over S^{n-1}: dense grid plus projected-gradient ascent
/// refinement from the best grid points.
double sphere_max(const CompiledPoly& p, const SphereOptOptions& opt);

/// Estimated min (grid + descent).
double sphere_min(const CompiledPoly& p, const SphereOptOptions& opt);

/// Estimated max |p| (ascends both signs).
double sphere_sup_norm(const CompiledPoly& p, const SphereOptOptions& opt);

}  // namespace orbitope
