#pragma once

#include "json.hpp"
#include "orbitope/multivector.hpp"
#include "orbitope/rng.hpp"

namespace orbitope {

/// Two-sided comass estimate: `lower` from multistart ascent over frames
/// (a certified direction: some point of the Grassmannian attains it),
/// `upper` from the d_k^{1/2k} * ||l||_{2k} sandwich with an MC norm.
struct ComassEstimate {
  double lower = 0.0;
  double upper = 0.0;
  double upper_std_err = 0.0;
  double norm_2k = 0.0;
  double norm_2k_std_err = 0.0;
  int k_used = 0;
  int restarts = 0;
  long mc_samples = 0;
  RngSeed seed;
};

/// Default k for the sandwich: ceil(m n ln(m+1)) capped at 6.
int default_comass_k(int n, int m);

/// MC estimate of (∫ <c,x>^{2k} dx)^{1/2k} over Haar frames, with std error.
std::pair<double, double> grassmann_norm_2k(const MultiVector& c, int k, long samples, RngSeed seed);

ComassEstimate comass(const MultiVector& c, int k, int restarts, long mc_samples, RngSeed seed);

struct LongCalibrationReport {
  int n = 0, m = 0, pool = 0, k = 0;
  RngSeed seed;
  double achieved_length_sq = 0.0;      // <c,c> after rescaling to comass upper bound 1
  double upper_bound_used = 0.0;
  double ratio_vs_ceiling = 0.0;        // achieved / C(n,m); stays <= 1
  double ratio_vs_paper_rate = 0.0;     // achieved / (C(n,m) / (n m ln(m+1)))
  double kaehler_length_sq = 0.0;       // C(n/2, m/2) when n, m even, else 0
  int numeric_rank_found = 0;           // rank of the sampled coordinate span
  nlohmann::json to_json() const;
};

/// Thm-4.1-style experiment: sample `pool` unit functionals, keep the one
/// with the smallest sandwich upper bound, rescale it to comass bound 1 and
/// report length ratios (never asserting the paper's existential constant).
std::pair<MultiVector, LongCalibrationReport> long_calibration(int n, int m, int pool, int k,
                                                               RngSeed seed);

}  // namespace orbitope
