#pragma once

#include "json.hpp"
#include "orbitope/hom_poly.hpp"
#include "orbitope/sphere_opt.hpp"

namespace orbitope {

/// Exact radii for the body of nonnegative degree-2k forms: inscribed L^2
/// ball, symmetry coefficient and the resulting outer ball.
struct PosBallReport {
  int n = 0, k = 0;
  Rat r_max_sq;          // (C(n+2k-1, 2k) - 1)^{-1}
  Rat sym_coeff;         // (C(n+k-1, k) - 1)^{-1}
  Rat outer_radius_sq;   // C(n+k-1, k) - 1
  nlohmann::json to_json() const;
};

PosBallReport pos_ball_report(int n, int k);

/// Estimated global minimum of p on S^{n-1} (n in {2,3,4}): dense grid plus
/// projected-gradient descent refinement.
double min_on_sphere(const HomPoly& p, long grid, int ascents);

/// Smallest eigenvalue of the symmetric coefficient matrix of a quadratic
/// form (x_i x_j coefficients split evenly off-diagonal). Ground truth for
/// the k = 1 positivity boundary.
double psd_oracle_quadratic(const HomPoly& p);

/// Monte Carlo estimate of (vol Pos' / vol K)^{1/d} via the boundary-scaling
/// identity: the d-th root of the average of |min_S p|^{-d} over uniform p on
/// the unit L^2 sphere of U_{2k,n}. The -d power has heavy tails, so a
/// median-based variant is reported alongside the raw estimator.
struct VolumeRatioEstimate {
  int n = 0, k = 0, d = 0;
  long samples = 0;
  RngSeed seed;
  double estimate = 0.0;
  double std_err = 0.0;          // bootstrap
  double robust_estimate = 0.0;  // median-based
  double robust_std_err = 0.0;
  double paper_lower_scale = 0.0;  // (n ln(2k+1))^{-1/2}
  nlohmann::json to_json() const;
};

VolumeRatioEstimate volume_ratio_pos(int n, int k, long samples, RngSeed seed,
                                     long grid = 2000, int ascents = 8);

/// Structural factor of the sums-of-squares volume ceiling:
/// 2^{4k} C(n+k-1, k)^{1/2} C(n+2k-1, 2k)^{-1/2} (absolute constant dropped).
double sq_bound_eval(int n, int k);

}  // namespace orbitope
