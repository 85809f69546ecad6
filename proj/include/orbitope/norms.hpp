#pragma once

#include "json.hpp"
#include "orbitope/hom_poly.hpp"
#include "orbitope/sphere_opt.hpp"

namespace orbitope {

/// Two-sided bound ||f||_2k <= max |f| <= d_k^{1/2k} ||f||_2k for a
/// polynomial on the sphere, with d_k = C(n + mk - 1, mk). In centered mode
/// (odd-power mean zero) the same chain bounds max f rather than max |f|.
struct SandwichBound {
  double lower = 0.0;   // ||f||_2k
  double upper = 0.0;   // d_k^{1/2k} * lower
  double lower_std_err = 0.0;
  Int d_k;
  int k = 1;
  bool centered = false;
  NormMethod method = NormMethod::Exact;
};

enum class SandwichMethod { Auto, Exact, MonteCarlo };

SandwichBound sphere_sandwich(const HomPolyQ& p, int k, bool centered = false,
                              SandwichMethod method = SandwichMethod::Auto, RngSeed seed = {},
                              long samples = 200000);
SandwichBound sphere_sandwich(const HomPoly& p, int k, bool centered = false,
                              SandwichMethod method = SandwichMethod::Auto, RngSeed seed = {},
                              long samples = 200000);

/// exp(a H(b/a)) with the entropy function H; dominates C(a, b).
double entropy_bound(long a, long b);

/// Lemma-3.5 style ceiling sqrt(2k <v,v> / d) for the average L^{2k} norm of
/// a random functional on a d-dimensional orbit module.
double expected_norm_bound(long d, long k, double v_norm_sq);

struct AvgSupNormReport {
  int n = 0, m = 0;
  int samples = 0;
  RngSeed seed;
  long grid_points = 0;
  double mean_sup = 0.0;
  double std_err = 0.0;
  double bound_scale = 0.0;  // sqrt(n ln(m+1))
  double ratio = 0.0;        // mean_sup / bound_scale
  double max_sup = 0.0;
  nlohmann::json to_json() const;
};

/// Draws polynomials uniformly on the unit L^2 sphere of U_{m,n} and
/// estimates the average sup-norm against the sqrt(n ln(m+1)) scale.
AvgSupNormReport avg_sup_norm_experiment(int n, int m, int samples, RngSeed seed,
                                         const SphereOptOptions& opt = {});

}  // namespace orbitope
