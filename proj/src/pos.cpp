#include "orbitope/pos.hpp"

#include <algorithm>
#include <cmath>

#include "orbitope/linalg.hpp"
#include "orbitope/util.hpp"

namespace orbitope {

nlohmann::json PosBallReport::to_json() const {
  return {{"n", n},
          {"k", k},
          {"r_max_sq", r_max_sq.str()},
          {"sym_coeff", sym_coeff.str()},
          {"outer_radius_sq", outer_radius_sq.str()},
          {"r_max_sq_float", r_max_sq.to_double()},
          {"sym_coeff_float", sym_coeff.to_double()},
          {"outer_radius_sq_float", outer_radius_sq.to_double()}};
}

PosBallReport pos_ball_report(int n, int k) {
  if (n < 2 || k < 1) throw std::invalid_argument("pos_ball_report: need n >= 2, k >= 1");
  PosBallReport r;
  r.n = n;
  r.k = k;
  const Int d2k = binomial(n + 2 * k - 1, 2 * k) - Int(1);
  const Int dk = binomial(n + k - 1, k) - Int(1);
  r.r_max_sq = Rat(Int(1), d2k);
  r.sym_coeff = Rat(Int(1), dk);
  r.outer_radius_sq = Rat(dk);
  return r;
}

double min_on_sphere(const HomPoly& p, long grid, int ascents) {
  if (p.n() < 2 || p.n() > 4) throw std::invalid_argument("min_on_sphere: n must be 2, 3, or 4");
  SphereOptOptions opt;
  opt.grid_points = grid;
  opt.refine_starts = ascents;
  opt.refine_iters = 120;
  return sphere_min(CompiledPoly::from(p), opt);
}

double psd_oracle_quadratic(const HomPoly& p) {
  if (p.m() != 2) throw std::invalid_argument("psd_oracle_quadratic: degree != 2");
  const int n = p.n();
  SymD q(n);
  for (const auto& [a, c] : p.terms()) {
    int i = -1, j = -1;
    for (int v = 0; v < n; ++v) {
      if (a[v] == 2) i = j = v;
      if (a[v] == 1) (i < 0 ? i : j) = v;
    }
    q.at(i, j) = (i == j) ? c : c / 2.0;
  }
  const auto eig = sym_eig(q);
  return eig.values.back();
}

nlohmann::json VolumeRatioEstimate::to_json() const {
  return {{"n", n},
          {"k", k},
          {"d", d},
          {"samples", samples},
          {"seed", seed.value},
          {"estimate", estimate},
          {"std_err", std_err},
          {"robust_estimate", robust_estimate},
          {"robust_std_err", robust_std_err},
          {"paper_lower_scale", paper_lower_scale}};
}

namespace {

/// Bootstrap standard error of a statistic of the |min|^{-d} values.
double bootstrap_se(const std::vector<double>& vals, RngSeed seed, int reps,
                    const std::function<double(std::vector<double>&)>& stat) {
  Rng rng(seed);
  const size_t n = vals.size();
  std::vector<double> resample(n), outs;
  outs.reserve(reps);
  for (int r = 0; r < reps; ++r) {
    for (size_t i = 0; i < n; ++i) resample[i] = vals[rng.next_u64() % n];
    outs.push_back(stat(resample));
  }
  double mean = 0.0;
  for (double v : outs) mean += v;
  mean /= reps;
  double var = 0.0;
  for (double v : outs) var += (v - mean) * (v - mean);
  return std::sqrt(var / (reps - 1));
}

}  // namespace

VolumeRatioEstimate volume_ratio_pos(int n, int k, long samples, RngSeed seed, long grid,
                                     int ascents) {
  if (samples < 1000) throw std::invalid_argument("volume_ratio_pos: samples < 1000");
  const PolyBasis basis = orthonormal_basis_U(n, 2 * k);
  const int d = static_cast<int>(basis.size());
  if (d > 30)
    throw std::runtime_error(
        "volume_ratio_pos: dim U_{2k,n} over the desk-scale guard (30); use smaller n or k");

  std::function<double(std::uint64_t)> one = [&](std::uint64_t s) {
    Rng rng = derive_rng(seed, s);
    const auto z = rng.unit_sphere(d);
    HomPoly p(n, 2 * k);
    for (int j = 0; j < d; ++j)
      for (const auto& [a, c] : basis.elements[j].terms()) p.add_term(a, z[j] * c);
    const double mn = min_on_sphere(p, grid, ascents);
    // Mean-zero nonconstant polynomials have a strictly negative minimum.
    const double depth = std::max(1e-12, -mn);
    return std::pow(depth, -static_cast<double>(d));
  };
  const auto vals = map_blocks<double>(samples, one);

  VolumeRatioEstimate est;
  est.n = n;
  est.k = k;
  est.d = d;
  est.samples = samples;
  est.seed = seed;
  est.paper_lower_scale = 1.0 / std::sqrt(n * std::log(2.0 * k + 1.0));

  auto mean_stat = [d](std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return std::pow(s / v.size(), 1.0 / d);
  };
  auto median_stat = [d](std::vector<double>& v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return std::pow(v[v.size() / 2], 1.0 / d);
  };
  std::vector<double> copy = vals;
  est.estimate = mean_stat(copy);
  copy = vals;
  est.robust_estimate = median_stat(copy);
  est.std_err = bootstrap_se(vals, derive_seed(seed, 0xB007ULL), 200, mean_stat);
  est.robust_std_err = bootstrap_se(vals, derive_seed(seed, 0xB007ULL + 1), 200, median_stat);
  return est;
}

double sq_bound_eval(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("sq_bound_eval: need n, k >= 1");
  return std::pow(2.0, 4.0 * k) * std::sqrt(binomial(n + k - 1, k).to_double()) /
         std::sqrt(binomial(n + 2 * k - 1, 2 * k).to_double());
}

}  // namespace orbitope
