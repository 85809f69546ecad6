#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "orbitope/hom_poly.hpp"
#include "orbitope/rng.hpp"

using namespace orbitope;

namespace {

HomPolyQ mono(int n, std::vector<int> e, Rat c = Rat(1)) {
  HomPolyQ p(n, MultiIndex(e).degree());
  p.add_term(MultiIndex(std::move(e)), c);
  return p;
}

// Independent MC oracle for sphere moments.
struct McMoment {
  double mean, se;
};
McMoment mc_moment(int n, const MultiIndex& alpha, long samples, RngSeed seed) {
  Rng rng(seed);
  double sum = 0.0, sum_sq = 0.0;
  for (long s = 0; s < samples; ++s) {
    const auto x = rng.unit_sphere(n);
    double v = 1.0;
    for (int i = 0; i < n; ++i)
      for (int e = 0; e < alpha[i]; ++e) v *= x[i];
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / samples;
  const double se = std::sqrt(std::max(0.0, sum_sq / samples - mean * mean) / samples);
  return {mean, se};
}

}  // namespace

TEST_CASE("monomial_moment closed form") {
  CHECK(monomial_moment(3, MultiIndex{1, 0, 0}) == Rat(0));  // odd symmetry
  CHECK(monomial_moment(3, MultiIndex{2, 0, 0}) == Rat(1, 3));
  // [frozen from the MC oracle below] 3!!/(3*5) and 1/(3*5).
  CHECK(monomial_moment(3, MultiIndex{4, 0, 0}) == Rat(1, 5));
  CHECK(monomial_moment(3, MultiIndex{2, 2, 0}) == Rat(1, 15));
  CHECK(monomial_moment(2, MultiIndex{2, 0}) == Rat(1, 2));
  CHECK(monomial_moment(4, MultiIndex::zero(4)) == Rat(1));
  CHECK_THROWS(monomial_moment(0, MultiIndex{}));
}

TEST_CASE("monomial_moment agrees with the MC oracle") {
  const auto a = mc_moment(3, MultiIndex{4, 0, 0}, 400000, RngSeed{11});
  CHECK(std::abs(a.mean - 0.2) <= 3 * a.se);
  const auto b = mc_moment(3, MultiIndex{2, 2, 0}, 400000, RngSeed{12});
  CHECK(std::abs(b.mean - 1.0 / 15) <= 3 * b.se);
}

TEST_CASE("sum of second moments is exactly 1 for n <= 12") {
  for (int n = 1; n <= 12; ++n) {
    Rat s;
    for (int i = 0; i < n; ++i) s += monomial_moment(n, MultiIndex::unit(n, i, 2));
    CHECK(s == Rat(1));
  }
}

TEST_CASE("l2_inner examples") {
  CHECK(l2_inner(mono(2, {1, 0}), mono(2, {1, 0})) == Rat(1, 2));
  CHECK(l2_inner(mono(3, {2, 0, 0}), mono(3, {0, 2, 0})) == Rat(1, 15));
  CHECK(l2_inner(mono(3, {1, 1, 0}), mono(3, {1, 1, 0})) == Rat(1, 15));
  CHECK_THROWS(l2_inner(mono(2, {1, 0}), mono(3, {1, 0, 0})));
}

TEST_CASE("multiplication by r^2 is self-adjoint for the sphere product") {
  // <r p, q> = <p, r q> exactly: restriction to the sphere is well defined.
  Rng rng(RngSeed{3});
  const HomPolyQ r2 = radius_power(3, 1);
  for (int t = 0; t < 20; ++t) {
    HomPolyQ p(3, 2), q(3, 4);
    for (const auto& a : monomials_of_degree(3, 2))
      p.add_term(a, Rat(static_cast<long>(rng.next_u64() % 19) - 9));
    for (const auto& a : monomials_of_degree(3, 4))
      q.add_term(a, Rat(static_cast<long>(rng.next_u64() % 19) - 9));
    CHECK(l2_inner(poly_mul(r2, p), q) == l2_inner(p, poly_mul(r2, q)));
  }
}

TEST_CASE("lp_norm_2k examples") {
  // p = r^2 is identically 1 on the sphere.
  const HomPolyQ r2 = radius_power(3, 1);
  CHECK(lp_norm_2k(r2, 1, NormMethod::Exact).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lp_norm_2k(mono(2, {1, 0}), 1, NormMethod::Exact).value ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(lp_norm_2k(mono(3, {1, 0, 0}), 2, NormMethod::Exact).value ==
        doctest::Approx(std::pow(0.2, 0.25)).epsilon(1e-12));
  CHECK_THROWS(lp_norm_2k(mono(2, {1, 0}), 1, NormMethod::MonteCarlo, RngSeed{1}, 50));
}

TEST_CASE("lp_norm_2k monotone in k (power-mean inequality)") {
  Rng rng(RngSeed{21});
  for (int t = 0; t < 50; ++t) {
    HomPolyQ p(3, 2);
    for (const auto& a : monomials_of_degree(3, 2))
      p.add_term(a, Rat(static_cast<long>(rng.next_u64() % 41) - 20, 1 + rng.next_u64() % 7));
    double prev = 0.0;
    for (int k = 1; k <= 4; ++k) {
      const double v = lp_norm_2k(p, k, NormMethod::Exact).value;
      CHECK(v >= prev - 1e-9);
      prev = v;
    }
  }
}

TEST_CASE("lp_norm_2k mc path agrees with exact within 4 standard errors") {
  Rng rng(RngSeed{31});
  for (int m = 2; m <= 4; m += 2) {
    for (int k = 1; k <= 3; ++k) {
      HomPolyQ p(3, m);
      for (const auto& a : monomials_of_degree(3, m))
        p.add_term(a, Rat(static_cast<long>(rng.next_u64() % 11) - 5));
      const double exact = lp_norm_2k(p, k, NormMethod::Exact).value;
      const auto mc = lp_norm_2k(p, k, NormMethod::MonteCarlo, RngSeed{100u + m * 10u + k}, 60000);
      CHECK(std::abs(mc.value - exact) <= 4 * std::max(mc.std_err, 1e-12));
    }
  }
}

TEST_CASE("expansion budget guard") {
  HomPolyQ p(4, 4);
  for (const auto& a : monomials_of_degree(4, 4)) p.add_term(a, Rat(1));
  CHECK_THROWS_WITH_AS(static_cast<void>(lp_norm_2k(p, 3, NormMethod::Exact, RngSeed{}, 0, 500)),
                       doctest::Contains("mc"), std::runtime_error);
}

TEST_CASE("orthonormal_basis_U dimensions") {
  CHECK(orthonormal_basis_U(2, 2).size() == 2);   // C(3,2) - 1
  CHECK(orthonormal_basis_U(3, 2).size() == 5);   // C(4,2) - 1
  CHECK(orthonormal_basis_U(3, 3).size() == 10);  // odd degree: no constraint binds
  CHECK(dim_U(3, 3) == Int(10));
  // Odd-degree monomials all have zero sphere mean, so the constraint is vacuous.
  for (const auto& a : monomials_of_degree(3, 3)) CHECK(monomial_moment(3, a) == Rat(0));
}

TEST_CASE("orthonormal_basis_U exact orthogonality and zero means") {
  const PolyBasis b = orthonormal_basis_U(3, 4);
  CHECK(b.size() == 14);
  for (size_t i = 0; i < b.size(); ++i) {
    // Exact zero sphere mean.
    Rat mean;
    for (const auto& [a, c] : b.exact_dirs[i].terms()) mean += c * monomial_moment(3, a);
    CHECK(mean == Rat(0));
    for (size_t j = 0; j < i; ++j) CHECK(l2_inner(b.exact_dirs[i], b.exact_dirs[j]) == Rat(0));
    CHECK(l2_inner(b.exact_dirs[i], b.exact_dirs[i]) == b.norm_sq[i]);
  }
  // Float elements: Gram within tolerance of the identity.
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = i; j < b.size(); ++j) {
      const double g = l2_inner(b.elements[i], b.elements[j]);
      CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("poly JSON round trip") {
  HomPolyQ p(3, 2);
  p.add_term(MultiIndex{2, 0, 0}, Rat(1, 3));
  p.add_term(MultiIndex{1, 1, 0}, Rat(-7, 5));
  const auto j = poly_to_json(p);
  const HomPolyQ q = poly_q_from_json(j);
  CHECK(q.terms().size() == 2);
  HomPolyQ diff = p;
  diff -= q;
  CHECK(diff.term_count() == 0);

  HomPoly d(2, 1);
  d.add_term(MultiIndex{1, 0}, 0.25);
  const HomPoly e = poly_d_from_json(poly_to_json(d));
  CHECK(e.terms().at(MultiIndex{1, 0}) == doctest::Approx(0.25));
}

TEST_CASE("compiled polynomial evaluates like the map form") {
  Rng rng(RngSeed{77});
  HomPoly p(3, 4);
  for (const auto& a : monomials_of_degree(3, 4)) p.add_term(a, rng.next_gaussian());
  const CompiledPoly c = CompiledPoly::from(p);
  for (int t = 0; t < 100; ++t) {
    const auto x = rng.unit_sphere(3);
    CHECK(c.eval(x.data()) == doctest::Approx(p.eval(x)).epsilon(1e-12));
  }
}
