#include "orbitope/hom_poly.hpp"

#include <algorithm>
#include <cmath>

#include "orbitope/util.hpp"

namespace orbitope {

Rat monomial_moment(int n, const MultiIndex& alpha) {
  if (n < 1) throw std::invalid_argument("monomial_moment: n < 1");
  if (alpha.size() != n) throw std::invalid_argument("monomial_moment: alpha length != n");
  int deg = 0;
  for (int i = 0; i < n; ++i) {
    if (alpha[i] % 2 != 0) return Rat(0);
    deg += alpha[i];
  }
  Rat num(1);
  for (int i = 0; i < n; ++i) num *= odd_double_factorial(alpha[i] / 2);
  Rat den(1);
  for (int j = 0; j < deg / 2; ++j) den *= Rat(n + 2 * j);
  return num / den;
}

namespace {

template <class T, class Acc>
Acc inner_expand(const Poly<T>& p, const Poly<T>& q) {
  if (p.n() != q.n()) throw std::invalid_argument("l2_inner: variable count mismatch");
  Acc s{};
  for (const auto& [a, ca] : p.terms())
    for (const auto& [b, cb] : q.terms()) {
      const Rat mom = monomial_moment(p.n(), a + b);
      if (mom.is_zero()) continue;
      if constexpr (std::is_same_v<Acc, Rat>)
        s += ca * cb * mom;
      else
        s += ca * cb * mom.to_double();
    }
  return s;
}

}  // namespace

Rat l2_inner(const HomPolyQ& p, const HomPolyQ& q) { return inner_expand<Rat, Rat>(p, q); }
double l2_inner(const HomPoly& p, const HomPoly& q) { return inner_expand<double, double>(p, q); }

HomPolyQ radius_power(int n, int k) {
  HomPolyQ r(n, 0);
  r.add_term(MultiIndex::zero(n), Rat(1));
  if (k == 0) return r;
  HomPolyQ r2(n, 2);
  for (int i = 0; i < n; ++i) r2.add_term(MultiIndex::unit(n, i, 2), Rat(1));
  HomPolyQ out = r2;
  for (int i = 1; i < k; ++i) out = poly_mul(out, r2);
  return out;
}

namespace {

template <class T>
Poly<T> poly_pow(const Poly<T>& p, int e, size_t budget) {
  Poly<T> out = p;
  for (int i = 1; i < e; ++i) out = poly_mul(out, p, budget);
  return out;
}

template <class T>
NormEstimate lp_norm_impl(const Poly<T>& p, int k, NormMethod method, RngSeed seed, long samples,
                          size_t budget) {
  if (k < 1) throw std::invalid_argument("lp_norm_2k: k < 1");
  if (method == NormMethod::Exact) {
    const auto pow = poly_pow(p, 2 * k, budget);
    double integral = 0.0;
    if constexpr (std::is_same_v<T, Rat>) {
      Rat s;
      for (const auto& [a, c] : pow.terms()) s += c * monomial_moment(p.n(), a);
      integral = s.to_double();
    } else {
      for (const auto& [a, c] : pow.terms()) integral += c * monomial_moment(p.n(), a).to_double();
    }
    integral = std::max(integral, 0.0);
    return {std::pow(integral, 1.0 / (2.0 * k)), 0.0, NormMethod::Exact};
  }

  if (samples < 100) throw std::invalid_argument("lp_norm_2k: mc path needs samples >= 100");
  const CompiledPoly cp = CompiledPoly::from(p);
  const int n = p.n();
  const long block_size = 65536;
  const std::uint64_t nblocks = (samples + block_size - 1) / block_size;
  struct Acc {
    double sum = 0.0, sum_sq = 0.0;
    long count = 0;
  };
  auto accs = map_blocks<Acc>(nblocks, [&](std::uint64_t b) {
    Rng rng = derive_rng(seed, b);
    Acc acc;
    const long lo = static_cast<long>(b) * block_size;
    const long hi = std::min(samples, lo + block_size);
    for (long i = lo; i < hi; ++i) {
      const auto x = rng.unit_sphere(n);
      const double v = cp.eval(x.data());
      double t = 1.0;
      for (int j = 0; j < 2 * k; ++j) t *= v;
      acc.sum += t;
      acc.sum_sq += t * t;
      ++acc.count;
    }
    return acc;
  });
  double sum = 0.0, sum_sq = 0.0;
  long count = 0;
  for (const auto& a : accs) {
    sum += a.sum;
    sum_sq += a.sum_sq;
    count += a.count;
  }
  const double mean = sum / count;
  const double var = std::max(0.0, sum_sq / count - mean * mean);
  const double se_mean = std::sqrt(var / count);
  const double value = std::pow(std::max(mean, 0.0), 1.0 / (2.0 * k));
  // Delta method for the 1/2k power.
  double se = 0.0;
  if (mean > 0) se = se_mean * value / (2.0 * k * mean);
  return {value, se, NormMethod::MonteCarlo};
}

}  // namespace

NormEstimate lp_norm_2k(const HomPolyQ& p, int k, NormMethod method, RngSeed seed, long samples,
                        size_t budget) {
  return lp_norm_impl(p, k, method, seed, samples, budget);
}
NormEstimate lp_norm_2k(const HomPoly& p, int k, NormMethod method, RngSeed seed, long samples,
                        size_t budget) {
  return lp_norm_impl(p, k, method, seed, samples, budget);
}

Rat integral_pow_2k(const HomPolyQ& p, int k, size_t term_budget) {
  const auto pow = poly_pow(p, 2 * k, term_budget);
  Rat s;
  for (const auto& [a, c] : pow.terms()) s += c * monomial_moment(p.n(), a);
  return s;
}

Int dim_U(int n, int m) {
  const Int full = binomial(n + m - 1, m);
  return (m % 2 == 0) ? full - Int(1) : full;
}

PolyBasis orthonormal_basis_U(int n, int m) {
  if (n < 2 || m < 1) throw std::invalid_argument("orthonormal_basis_U: need n >= 2, m >= 1");
  const Int want_big = dim_U(n, m);
  if (want_big > Int(5000)) throw std::runtime_error("orthonormal_basis_U: dimension over guard (5000)");
  const long want = want_big.to_long();

  PolyBasis basis;
  basis.n = n;
  basis.m = m;

  const bool even = (m % 2 == 0);
  HomPolyQ rk(n, 0);
  if (even) rk = radius_power(n, m / 2);

  for (const auto& alpha : monomials_of_degree(n, m)) {
    HomPolyQ cand(n, m);
    cand.add_term(alpha, Rat(1));
    if (even) {
      // Project out the sphere mean: subtract mean * r^{m/2}.
      const Rat mean = monomial_moment(n, alpha);
      if (!mean.is_zero()) cand -= rk * mean;
    }
    // Exact Gram-Schmidt against the accepted directions.
    for (size_t j = 0; j < basis.exact_dirs.size(); ++j) {
      const Rat proj = l2_inner(cand, basis.exact_dirs[j]);
      if (!proj.is_zero()) cand -= basis.exact_dirs[j] * (proj / basis.norm_sq[j]);
    }
    const Rat nsq = l2_inner(cand, cand);
    if (nsq.is_zero()) continue;
    basis.exact_dirs.push_back(cand);
    basis.norm_sq.push_back(nsq);
    if (static_cast<long>(basis.exact_dirs.size()) == want) break;
  }
  if (static_cast<long>(basis.exact_dirs.size()) != want)
    throw std::runtime_error("orthonormal_basis_U: spanning set did not reach dim U");

  for (size_t j = 0; j < basis.exact_dirs.size(); ++j) {
    const double scale = 1.0 / std::sqrt(basis.norm_sq[j].to_double());
    basis.elements.push_back(to_double(basis.exact_dirs[j]) * scale);
  }
  return basis;
}

namespace {

template <class T>
nlohmann::json poly_json_impl(const Poly<T>& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [a, c] : p.terms()) {
    nlohmann::json t;
    t["alpha"] = a.exps();
    if constexpr (std::is_same_v<T, Rat>)
      t["coef"] = c.str();
    else
      t["coef"] = c;
    terms.push_back(std::move(t));
  }
  return {{"n", p.n()}, {"m", p.m()}, {"terms", std::move(terms)}};
}

}  // namespace

nlohmann::json poly_to_json(const HomPolyQ& p) { return poly_json_impl(p); }
nlohmann::json poly_to_json(const HomPoly& p) { return poly_json_impl(p); }

HomPolyQ poly_q_from_json(const nlohmann::json& j) {
  HomPolyQ p(j.at("n").get<int>(), j.at("m").get<int>());
  for (const auto& t : j.at("terms")) {
    const MultiIndex a(t.at("alpha").get<std::vector<int>>());
    const auto& c = t.at("coef");
    if (c.is_string())
      p.add_term(a, Rat::parse(c.get<std::string>()));
    else if (c.is_number_integer())
      p.add_term(a, Rat(c.get<long>()));
    else
      throw std::invalid_argument("poly_q_from_json: float coefficient in exact polynomial");
  }
  return p;
}

HomPoly poly_d_from_json(const nlohmann::json& j) {
  HomPoly p(j.at("n").get<int>(), j.at("m").get<int>());
  for (const auto& t : j.at("terms")) {
    const MultiIndex a(t.at("alpha").get<std::vector<int>>());
    const auto& c = t.at("coef");
    if (c.is_string())
      p.add_term(a, Rat::parse(c.get<std::string>()).to_double());
    else
      p.add_term(a, c.get<double>());
  }
  return p;
}

}  // namespace orbitope
