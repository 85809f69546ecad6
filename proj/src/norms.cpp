#include "orbitope/norms.hpp"

#include <cmath>

#include "orbitope/util.hpp"

namespace orbitope {

namespace {

template <class T>
SandwichBound sandwich_impl(const Poly<T>& p, int k, bool centered, SandwichMethod method,
                            RngSeed seed, long samples) {
  if (k < 1) throw std::invalid_argument("sphere_sandwich: k < 1");
  if (centered) {
    // Requires ∫ p^k dσ = 0; exact on rational input, tolerance check on float.
    if constexpr (std::is_same_v<T, Rat>) {
      Poly<T> pk = p;
      for (int i = 1; i < k; ++i) pk = poly_mul(pk, p);
      Rat integral;
      for (const auto& [a, c] : pk.terms()) integral += c * monomial_moment(p.n(), a);
      if (!integral.is_zero())
        throw std::invalid_argument("sphere_sandwich: centered mode needs ∫p^k = 0, got " +
                                    integral.str());
    } else {
      Poly<T> pk = p;
      for (int i = 1; i < k; ++i) pk = poly_mul(pk, p);
      double integral = 0.0;
      double scale = 0.0;
      for (const auto& [a, c] : pk.terms()) {
        integral += c * monomial_moment(p.n(), a).to_double();
        scale += std::abs(c);
      }
      if (std::abs(integral) > 1e-12 * std::max(scale, 1.0))
        throw std::invalid_argument("sphere_sandwich: centered mode needs ∫p^k = 0");
    }
  }

  NormEstimate norm;
  if (method == SandwichMethod::MonteCarlo) {
    norm = lp_norm_2k(p, k, NormMethod::MonteCarlo, seed, samples);
  } else {
    try {
      norm = lp_norm_2k(p, k, NormMethod::Exact);
    } catch (const std::runtime_error&) {
      if (method == SandwichMethod::Exact) throw;
      norm = lp_norm_2k(p, k, NormMethod::MonteCarlo, seed, samples);
    }
  }

  SandwichBound b;
  b.k = k;
  b.centered = centered;
  b.method = norm.method;
  b.lower = norm.value;
  b.lower_std_err = norm.std_err;
  b.d_k = binomial(p.n() + p.m() * k - 1, p.m() * k);
  b.upper = std::pow(b.d_k.to_double(), 1.0 / (2.0 * k)) * b.lower;
  return b;
}

}  // namespace

SandwichBound sphere_sandwich(const HomPolyQ& p, int k, bool centered, SandwichMethod method,
                              RngSeed seed, long samples) {
  return sandwich_impl(p, k, centered, method, seed, samples);
}
SandwichBound sphere_sandwich(const HomPoly& p, int k, bool centered, SandwichMethod method,
                              RngSeed seed, long samples) {
  return sandwich_impl(p, k, centered, method, seed, samples);
}

double entropy_bound(long a, long b) {
  if (a < 1 || b < 0 || b > a) throw std::invalid_argument("entropy_bound: need 0 <= b <= a, a >= 1");
  const double x = static_cast<double>(b) / a;
  double h = 0.0;
  if (x > 0.0 && x < 1.0) h = x * std::log(1.0 / x) + (1.0 - x) * std::log(1.0 / (1.0 - x));
  return std::exp(a * h);
}

double expected_norm_bound(long d, long k, double v_norm_sq) {
  if (d < 1 || k < 1) throw std::invalid_argument("expected_norm_bound: need d >= 1, k >= 1");
  return std::sqrt(2.0 * k * v_norm_sq / d);
}

nlohmann::json AvgSupNormReport::to_json() const {
  return {{"n", n},
          {"m", m},
          {"samples", samples},
          {"seed", seed.value},
          {"grid_points", grid_points},
          {"mean_sup", mean_sup},
          {"std_err", std_err},
          {"bound_scale", bound_scale},
          {"ratio", ratio},
          {"max_sup", max_sup}};
}

AvgSupNormReport avg_sup_norm_experiment(int n, int m, int samples, RngSeed seed,
                                         const SphereOptOptions& opt) {
  if (samples < 50) throw std::invalid_argument("avg_sup_norm_experiment: samples < 50");
  const PolyBasis basis = orthonormal_basis_U(n, m);
  const int d = static_cast<int>(basis.size());
  std::vector<CompiledPoly> compiled;
  compiled.reserve(d);
  for (const auto& b : basis.elements) compiled.push_back(CompiledPoly::from(b));

  std::function<double(std::uint64_t)> one = [&](std::uint64_t s) {
    Rng rng = derive_rng(seed, s);
    const auto z = rng.unit_sphere(d);
    // Combine the basis term maps into one polynomial.
    HomPoly p(n, m);
    for (int j = 0; j < d; ++j)
      for (const auto& [a, c] : basis.elements[j].terms()) p.add_term(a, z[j] * c);
    return sphere_sup_norm(CompiledPoly::from(p), opt);
  };
  const auto sups = map_blocks<double>(samples, one);

  AvgSupNormReport rep;
  rep.n = n;
  rep.m = m;
  rep.samples = samples;
  rep.seed = seed;
  rep.grid_points = opt.grid_points;
  double sum = 0.0, sum_sq = 0.0, mx = 0.0;
  for (double v : sups) {
    sum += v;
    sum_sq += v * v;
    mx = std::max(mx, v);
  }
  rep.mean_sup = sum / samples;
  rep.std_err = std::sqrt(std::max(0.0, sum_sq / samples - rep.mean_sup * rep.mean_sup) / samples);
  rep.bound_scale = std::sqrt(n * std::log(m + 1.0));
  rep.ratio = rep.mean_sup / rep.bound_scale;
  rep.max_sup = mx;
  return rep;
}

}  // namespace orbitope
