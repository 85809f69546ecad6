#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "orbitope/multi_index.hpp"
#include "orbitope/rational.hpp"
#include "orbitope/rng.hpp"

namespace orbitope {

/// Sparse homogeneous polynomial in n variables of degree m. Every stored
/// key has degree exactly m; zero coefficients are never stored.
template <class T>
class Poly {
 public:
  Poly() : n_(0), m_(0) {}
  Poly(int n, int m) : n_(n), m_(m) {
    if (n < 1 || m < 0) throw std::invalid_argument("Poly: need n >= 1, m >= 0");
  }

  int n() const { return n_; }
  int m() const { return m_; }
  const std::map<MultiIndex, T>& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  void add_term(const MultiIndex& alpha, const T& coef) {
    if (alpha.size() != n_) throw std::invalid_argument("Poly term: wrong variable count");
    if (alpha.degree() != m_) throw std::invalid_argument("Poly term: wrong degree");
    auto it = terms_.find(alpha);
    if (it == terms_.end()) {
      if (!(coef == T())) terms_.emplace(alpha, coef);
    } else {
      it->second += coef;
      if (it->second == T()) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check_same_space(o);
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_same_space(o);
    for (const auto& [a, c] : o.terms_) add_term(a, -c);
    return *this;
  }
  Poly& operator*=(const T& s) {
    if (s == T()) {
      terms_.clear();
      return *this;
    }
    for (auto& [a, c] : terms_) c *= s;
    return *this;
  }
  friend Poly operator*(Poly p, const T& s) { return p *= s; }
  friend Poly operator+(Poly p, const Poly& q) { return p += q; }
  friend Poly operator-(Poly p, const Poly& q) { return p -= q; }

  double eval(const std::vector<double>& x) const {
    double s = 0.0;
    for (const auto& [a, c] : terms_) {
      double t = coef_to_double(c);
      for (int i = 0; i < n_; ++i)
        for (int e = 0; e < a[i]; ++e) t *= x[i];
      s += t;
    }
    return s;
  }

 private:
  static double coef_to_double(const double& c) { return c; }
  static double coef_to_double(const Rat& c) { return c.to_double(); }
  void check_same_space(const Poly& o) const {
    if (o.n_ != n_ || o.m_ != m_) throw std::invalid_argument("Poly op: mismatched space");
  }
  int n_, m_;
  std::map<MultiIndex, T> terms_;
};

using HomPoly = Poly<double>;
using HomPolyQ = Poly<Rat>;

/// Product of homogeneous polynomials (term-map convolution). Throws when the
/// result would exceed `term_budget` stored terms.
template <class T>
Poly<T> poly_mul(const Poly<T>& p, const Poly<T>& q, size_t term_budget = 1000000) {
  if (p.n() != q.n()) throw std::invalid_argument("poly_mul: variable count mismatch");
  Poly<T> r(p.n(), p.m() + q.m());
  for (const auto& [a, ca] : p.terms())
    for (const auto& [b, cb] : q.terms()) {
      r.add_term(a + b, ca * cb);
      if (r.term_count() > term_budget)
        throw std::runtime_error("poly_mul: expansion exceeds term budget; use the mc path");
    }
  return r;
}

/// (x_1^2 + ... + x_n^2)^k, exact.
HomPolyQ radius_power(int n, int k);

inline HomPoly to_double(const HomPolyQ& p) {
  HomPoly d(p.n(), p.m());
  for (const auto& [a, c] : p.terms()) d.add_term(a, c.to_double());
  return d;
}

/// Integral of the monomial x^alpha over S^{n-1} with the rotation-invariant
/// probability measure: 0 if any exponent is odd, else
/// prod_i (alpha_i - 1)!! / (n (n+2) ... (n + |alpha| - 2)).
Rat monomial_moment(int n, const MultiIndex& alpha);

/// Exact L^2(S^{n-1}) inner product by bilinear expansion into moments.
Rat l2_inner(const HomPolyQ& p, const HomPolyQ& q);
double l2_inner(const HomPoly& p, const HomPoly& q);

enum class NormMethod { Exact, MonteCarlo };

struct NormEstimate {
  double value = 0.0;
  double std_err = 0.0;  // 0 on the exact path
  NormMethod method = NormMethod::Exact;
};

/// L^{2k} norm on the sphere: (∫ p^{2k} dσ)^{1/2k}. The exact path expands
/// p^{2k} by repeated convolution (guarded by `term_budget`); the mc path
/// averages p(x)^{2k} over seeded uniform sphere samples and carries a
/// standard error.
NormEstimate lp_norm_2k(const HomPolyQ& p, int k, NormMethod method, RngSeed seed = {},
                        long samples = 0, size_t term_budget = 1000000);
NormEstimate lp_norm_2k(const HomPoly& p, int k, NormMethod method, RngSeed seed = {},
                        long samples = 0, size_t term_budget = 1000000);

/// ∫ p^{2k} dσ exactly (Rat coefficients).
Rat integral_pow_2k(const HomPolyQ& p, int k, size_t term_budget = 1000000);

/// Orthonormal basis of U_{m,n}, the degree-m polynomials with zero sphere
/// mean. Exact rational Gram-Schmidt over the monomial spanning set in graded
/// lex order, mean-zero projection applied first for even m. The float
/// elements are the exact directions scaled by 1/sqrt(norm_sq).
struct PolyBasis {
  int n = 0, m = 0;
  double gram_tol = 1e-12;
  std::vector<HomPoly> elements;      // normalized, float
  std::vector<HomPolyQ> exact_dirs;   // orthogonal, unnormalized, exact
  std::vector<Rat> norm_sq;           // exact squared L2 norms of exact_dirs
  size_t size() const { return elements.size(); }
};

PolyBasis orthonormal_basis_U(int n, int m);

/// dim U_{m,n}: C(n+m-1, m) - 1 for even m, C(n+m-1, m) for odd m.
Int dim_U(int n, int m);

// JSON wire format: {"n":…, "m":…, "terms":[{"alpha":[…], "coef":"num/den"|float}…]}
nlohmann::json poly_to_json(const HomPolyQ& p);
nlohmann::json poly_to_json(const HomPoly& p);
HomPolyQ poly_q_from_json(const nlohmann::json& j);
HomPoly poly_d_from_json(const nlohmann::json& j);

/// Flat evaluation form for hot loops (grids, MC).
struct CompiledPoly {
  int n = 0;
  int max_deg = 0;
  std::vector<double> coef;
  std::vector<int> exps;  // term t occupies exps[t*n .. t*n+n-1]

  template <class T>
  static CompiledPoly from(const Poly<T>& p) {
    CompiledPoly c;
    c.n = p.n();
    for (const auto& [a, co] : p.terms()) {
      if constexpr (std::is_same_v<T, Rat>)
        c.coef.push_back(co.to_double());
      else
        c.coef.push_back(co);
      for (int i = 0; i < c.n; ++i) {
        c.exps.push_back(a[i]);
        c.max_deg = std::max(c.max_deg, a[i]);
      }
    }
    return c;
  }

  double eval(const double* x) const {
    double pw[264];  // per-variable power table
    if (n * (max_deg + 1) <= 264) {
      for (int i = 0; i < n; ++i) {
        double* row = pw + i * (max_deg + 1);
        row[0] = 1.0;
        for (int e = 1; e <= max_deg; ++e) row[e] = row[e - 1] * x[i];
      }
      double s = 0.0;
      const int* ep = exps.data();
      for (size_t t = 0; t < coef.size(); ++t, ep += n) {
        double v = coef[t];
        for (int i = 0; i < n; ++i) v *= pw[i * (max_deg + 1) + ep[i]];
        s += v;
      }
      return s;
    }
    double s = 0.0;
    const int* ep = exps.data();
    for (size_t t = 0; t < coef.size(); ++t, ep += n) {
      double v = coef[t];
      for (int i = 0; i < n; ++i)
        for (int e = 0; e < ep[i]; ++e) v *= x[i];
      s += v;
    }
    return s;
  }
};

}  // namespace orbitope
