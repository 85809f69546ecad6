#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "orbitope/pos.hpp"
#include "orbitope/rng.hpp"

using namespace orbitope;

namespace {

HomPoly dmono(int n, std::vector<int> e, double c) {
  HomPoly p(n, MultiIndex(e).degree());
  p.add_term(MultiIndex(std::move(e)), c);
  return p;
}

HomPoly random_quadratic(int n, Rng& rng) {
  HomPoly p(n, 2);
  for (const auto& a : monomials_of_degree(n, 2)) p.add_term(a, rng.next_gaussian());
  return p;
}

}  // namespace

TEST_CASE("pos_ball_report exact values") {
  const PosBallReport a = pos_ball_report(3, 1);
  CHECK(a.r_max_sq == Rat(1, 5));   // C(4,2) - 1 = 5
  CHECK(a.sym_coeff == Rat(1, 2));  // C(3,1) - 1 = 2
  CHECK(a.outer_radius_sq == Rat(2));
  CHECK(pos_ball_report(2, 1).r_max_sq == Rat(1, 2));   // C(3,2) - 1 = 2
  CHECK(pos_ball_report(3, 2).r_max_sq == Rat(1, 14));  // C(6,4) - 1 = 14
  // Outer-ball chain consistency: outer^2 = r_max^2 * (dim / alpha) with
  // dim = C(n+2k-1,2k)-1 would overstate; the paper chain gives
  // outer^2 = 1/sym_coeff directly.
  CHECK(a.outer_radius_sq == Rat(1) / a.sym_coeff);
}

TEST_CASE("psd_oracle_quadratic examples") {
  HomPoly sum_sq(3, 2);
  for (int i = 0; i < 3; ++i) sum_sq.add_term(MultiIndex::unit(3, i, 2), 1.0);
  CHECK(psd_oracle_quadratic(sum_sq) == doctest::Approx(1.0));

  CHECK(psd_oracle_quadratic(dmono(2, {1, 1}, 1.0)) == doctest::Approx(-0.5));

  HomPoly diff(2, 2);
  diff.add_term(MultiIndex{2, 0}, 1.0);
  diff.add_term(MultiIndex{0, 2}, -1.0);
  CHECK(psd_oracle_quadratic(diff) == doctest::Approx(-1.0));
  CHECK_THROWS(psd_oracle_quadratic(dmono(2, {1, 0}, 1.0)));
}

TEST_CASE("min_on_sphere examples") {
  HomPoly r2(3, 2);
  for (int i = 0; i < 3; ++i) r2.add_term(MultiIndex::unit(3, i, 2), 1.0);
  CHECK(min_on_sphere(r2, 2000, 4) == doctest::Approx(1.0).epsilon(1e-9));

  HomPoly diff(2, 2);
  diff.add_term(MultiIndex{2, 0}, 1.0);
  diff.add_term(MultiIndex{0, 2}, -1.0);
  CHECK(min_on_sphere(diff, 2000, 4) == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK_THROWS(min_on_sphere(dmono(5, {2, 0, 0, 0, 0}, 1.0), 2000, 4));
}

TEST_CASE("min_on_sphere matches the eigenvalue oracle on random quadratics") {
  Rng rng(RngSeed{2718});
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const HomPoly q = random_quadratic(3, rng);
    const double grid = min_on_sphere(q, 2000, 8);
    const double eig = psd_oracle_quadratic(q);
    worst = std::max(worst, std::abs(grid - eig));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("inscribed ball: all boundary samples PSD, inflated ball escapes") {
  const PosBallReport ball = pos_ball_report(3, 1);
  const double r_max = std::sqrt(ball.r_max_sq.to_double());
  const PolyBasis basis = orthonormal_basis_U(3, 2);
  const HomPoly r_poly = to_double(radius_power(3, 1));
  Rng rng(RngSeed{31415});
  int inflated_violations = 0;
  for (int s = 0; s < 200; ++s) {
    const auto z = rng.unit_sphere(static_cast<int>(basis.size()));
    HomPoly q(3, 2);
    for (size_t j = 0; j < basis.size(); ++j)
      for (const auto& [a, c] : basis.elements[j].terms()) q.add_term(a, z[j] * c);
    HomPoly on_ball = r_poly;
    for (const auto& [a, c] : q.terms()) on_ball.add_term(a, r_max * c);
    CHECK(psd_oracle_quadratic(on_ball) >= -1e-9);
    HomPoly inflated = r_poly;
    for (const auto& [a, c] : q.terms()) inflated.add_term(a, 1.05 * r_max * c);
    if (psd_oracle_quadratic(inflated) < -1e-12) ++inflated_violations;
  }
  CHECK(inflated_violations > 0);
}

TEST_CASE("volume_ratio_pos main and robust variants agree") {
  const VolumeRatioEstimate est = volume_ratio_pos(3, 1, 2000, RngSeed{6283});
  CHECK(est.d == 5);
  CHECK(est.estimate > 0.0);
  CHECK(est.estimate <= 1.0);
  // Inscribed ball floor.
  CHECK(est.estimate >= 1.0 / std::sqrt(5.0) - 3 * est.std_err - 0.05);
  CHECK(std::abs(est.estimate - est.robust_estimate) <=
        3 * (est.std_err + est.robust_std_err) + 0.05 * est.estimate);
  CHECK_THROWS(volume_ratio_pos(3, 1, 100, RngSeed{1}));  // samples guard
  CHECK_THROWS(volume_ratio_pos(4, 3, 2000, RngSeed{1}));  // dimension guard
}

TEST_CASE("volume_ratio_pos tracks the eigenvalue oracle at (2,1)") {
  // Binary quadratics: d = dim U_{2,2} = 2; the min on the circle is the
  // smallest eigenvalue of the 2x2 form, brute-force analyzable.
  const VolumeRatioEstimate est = volume_ratio_pos(2, 1, 2000, RngSeed{111}, 4000, 6);

  const PolyBasis basis = orthonormal_basis_U(2, 2);
  Rng rng(RngSeed{222});
  double mean = 0.0;
  const int d = 2;
  const long N = 4000;
  for (long s = 0; s < N; ++s) {
    const auto z = rng.unit_sphere(d);
    HomPoly q(2, 2);
    for (int j = 0; j < d; ++j)
      for (const auto& [a, c] : basis.elements[j].terms()) q.add_term(a, z[j] * c);
    const double lam = psd_oracle_quadratic(q);
    mean += std::pow(-lam, -static_cast<double>(d)) / N;
  }
  const double oracle = std::sqrt(mean);
  CHECK(std::abs(est.estimate - oracle) <= std::max(0.05 * oracle, 4 * est.std_err));
}

TEST_CASE("sq_bound_eval closed values and n^{-k/2} trend") {
  CHECK(sq_bound_eval(3, 1) == doctest::Approx(16.0 * std::sqrt(3.0 / 5.0)));
  CHECK(sq_bound_eval(2, 1) == doctest::Approx(16.0 * std::sqrt(2.0 / 3.0)));
  // Fixed k: bound ~ c(k) n^{-k/2}; check the decay ratio over doublings.
  for (int k = 1; k <= 2; ++k) {
    const double r1 = sq_bound_eval(20, k) / sq_bound_eval(10, k);
    const double r2 = sq_bound_eval(40, k) / sq_bound_eval(20, k);
    const double want = std::pow(2.0, -k / 2.0);
    CHECK(std::abs(r1 - want) < 0.15 * want);
    CHECK(std::abs(r2 - want) < 0.10 * want);
  }
}
