#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "orbitope/hom_poly.hpp"
#include "orbitope/multivector.hpp"
#include "orbitope/orbit.hpp"
#include "orbitope/tsp.hpp"

using namespace orbitope;

namespace {

OrbitSpec sign_orbit_r2() {
  // G = {I, -I} on R^2, v = (1, 0), already centered.
  OrbitSpec spec;
  spec.ambient_dim = 2;
  spec.base_point = {1.0, 0.0};
  spec.base_point_exact = std::vector<Rat>{Rat(1), Rat(0)};
  spec.center_mode = CenterMode::PreCentered;
  FiniteGroup g;
  g.elements.push_back(SparseAction::permutation({0, 1}));
  SparseAction neg(2);
  neg.add(0, 0, Rat(-1));
  neg.add(1, 1, Rat(-1));
  g.elements.push_back(neg);
  spec.group = std::move(g);
  return spec;
}

OrbitSpec rot90_orbit() {
  // Cyclic rotations by 90 degrees on R^2, v = (1, 0).
  OrbitSpec spec;
  spec.ambient_dim = 2;
  spec.base_point = {1.0, 0.0};
  spec.base_point_exact = std::vector<Rat>{Rat(1), Rat(0)};
  spec.center_mode = CenterMode::AutoCenter;
  FiniteGroup g;
  auto rot = [](int quarter) {
    SparseAction a(2);
    const int c[4] = {1, 0, -1, 0};
    const int s[4] = {0, 1, 0, -1};
    if (c[quarter] != 0) {
      a.add(0, 0, Rat(c[quarter]));
      a.add(1, 1, Rat(c[quarter]));
    }
    if (s[quarter] != 0) {
      a.add(0, 1, Rat(-s[quarter]));
      a.add(1, 0, Rat(s[quarter]));
    }
    return a;
  };
  for (int q = 0; q < 4; ++q) g.elements.push_back(rot(q));
  spec.group = std::move(g);
  return spec;
}

}  // namespace

TEST_CASE("second moment of the sign orbit is diag(1, 0)") {
  const auto spec = sign_orbit_r2();
  const SecondMoment m = orbit_second_moment(spec, 0, RngSeed{0});
  CHECK(m.exact);
  CHECK(m.m_exact.at(0, 0) == Rat(1));
  CHECK(m.m_exact.at(0, 1) == Rat(0));
  CHECK(m.m_exact.at(1, 1) == Rat(0));
}

TEST_CASE("second moment of the 90-degree rotation orbit is I/2") {
  const auto spec = rot90_orbit();
  const SecondMoment m = orbit_second_moment(spec, 0, RngSeed{0});
  CHECK(m.exact);
  // Hand average of four rank-1 matrices: diag(1/2, 1/2); the center is 0.
  for (int i = 0; i < 2; ++i) CHECK(m.center_exact[i] == Rat(0));
  CHECK(m.m_exact.at(0, 0) == Rat(1, 2));
  CHECK(m.m_exact.at(1, 1) == Rat(1, 2));
  CHECK(m.m_exact.at(0, 1) == Rat(0));
}

TEST_CASE("single irreducible component: E_min is the sqrt(dim) ball") {
  const auto spec = rot90_orbit();
  const SecondMoment m = orbit_second_moment(spec, 0, RngSeed{0});
  const auto [ell, rep] = min_volume_ellipsoid(spec, m);
  CHECK(rep.hull_dim == 2);
  CHECK(rep.component_dims == std::vector<int>{2});
  // <v,v> = 1 here, so E_min has radius 1 = sqrt(dim * lambda).
  CHECK(ell.exact.has_value());
  const Rat on_orbit = ellipsoid_eval(*ell.exact, *spec.base_point_exact);
  CHECK(on_orbit == Rat(0));
  // Interior point strictly inside, outside point strictly outside.
  CHECK(ellipsoid_eval(ell.approx, std::vector<double>{0.0, 0.0}) == doctest::Approx(-2.0));
  CHECK(ellipsoid_eval(ell.approx, std::vector<double>{2.0, 0.0}) > 0.0);
}

TEST_CASE("finite-path M commutes with every group action exactly") {
  const OrbitSpec spec = stn_orbit_spec(5);
  const SecondMoment m = orbit_second_moment(spec, 0, RngSeed{0});
  const auto& group = std::get<FiniteGroup>(spec.group);
  // Spot-check a handful of elements: A M A^T == M (A orthogonal, so this is
  // the commutation [A, M] = 0).
  for (size_t t = 0; t < group.elements.size(); t += 17) {
    const SymQ conj = group.elements[t].conjugate(m.m_exact);
    for (int i = 0; i < m.m_exact.dim(); ++i)
      for (int j = i; j < m.m_exact.dim(); ++j) CHECK(conj.at(i, j) == m.m_exact.at(i, j));
  }
}

TEST_CASE("ST5 second moment has one distinct nonzero eigenvalue") {
  const OrbitSpec spec = stn_orbit_spec(5);
  const SecondMoment m = orbit_second_moment(spec, 0, RngSeed{0});
  const auto [ell, rep] = min_volume_ellipsoid(spec, m);
  CHECK(rep.hull_dim == 5);
  CHECK(rep.component_dims == std::vector<int>{5});  // irreducible action
  CHECK(rep.lambdas[0] == doctest::Approx(1.0));     // 4/(n-1) at n=5
  // Exact ball shape: M * dim == trace * P.
  const SymQ proj = range_projector_rat(m.m_exact);
  const Rat r_sq = m.m_exact.trace();
  CHECK(r_sq == Rat(5));
  for (int i = 0; i < 25; ++i)
    for (int j = i; j < 25; ++j) CHECK(m.m_exact.at(i, j) * Rat(5) == r_sq * proj.at(i, j));
}

TEST_CASE("AT5 decomposes into components of dimensions 5 and 6") {
  const OrbitSpec spec = atn_orbit_spec(5);
  const SecondMoment m = orbit_second_moment(spec, 0, RngSeed{0});
  const auto [ell, rep] = min_volume_ellipsoid(spec, m);
  CHECK(rep.hull_dim == 11);  // n^2 - 3n + 1
  std::vector<int> dims = rep.component_dims;
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<int>{5, 6});
  // Every directed tour lies exactly on the E_min boundary.
  for (const auto& v : enumerate_tours(5, false))
    CHECK(ellipsoid_eval(*ell.exact, v.flatten()) == Rat(0));
}

TEST_CASE("rescaled-product identity for S_n orbits (exact)") {
  // avg_g (c, gv)^2 == (c, c)/dim with (a, b) = a^T M^+ b / dim.
  for (int n : {5, 6}) {
    const OrbitSpec spec = stn_orbit_spec(n);
    const SecondMoment m = orbit_second_moment(spec, 0, RngSeed{0});
    const SymQ pinv = pseudo_inverse_rat(m.m_exact);
    const int dim = rank_rat(m.m_exact.full());
    const int amb = spec.ambient_dim;

    Rng rng(RngSeed{static_cast<std::uint64_t>(n)});
    std::vector<Rat> c(amb);
    for (int i = 0; i < amb; ++i) c[i] = Rat(static_cast<long>(rng.next_u64() % 21) - 10, 3);

    const std::vector<Rat> pc = pinv.apply(c);
    const Rat inv_dim(1, dim);
    Rat lhs;
    const auto& group = std::get<FiniteGroup>(spec.group);
    for (const auto& g : group.elements) {
      const auto gv = g.apply(*spec.base_point_exact);
      Rat dot;
      for (int i = 0; i < amb; ++i) dot += pc[i] * (gv[i] - m.center_exact[i]);
      dot *= inv_dim;
      lhs += dot * dot;
    }
    lhs *= Rat(1, static_cast<long>(group.elements.size()));
    Rat rhs;
    for (int i = 0; i < amb; ++i) rhs += c[i] * pc[i];
    rhs *= inv_dim * inv_dim;  // (c,c)/dim with the extra 1/dim from the product
    CHECK(lhs == rhs);
  }
}

TEST_CASE("polar duality: E_min form and E_max form are inverse up to dim") {
  const OrbitSpec spec = stn_orbit_spec(5);
  const SecondMoment m = orbit_second_moment(spec, 0, RngSeed{0});
  const auto [emin, rep] = min_volume_ellipsoid(spec, m);
  const EllipsoidPair emax = max_volume_ellipsoid_polar(spec, m);
  // Exact: M^+ M == P (projector onto the hull).
  const SymQ proj = range_projector_rat(m.m_exact);
  const MatQ prod = emin.exact->form.full() * emax.exact->form.full();
  for (int i = 0; i < 25; ++i)
    for (int j = 0; j < 25; ++j) CHECK(prod(i, j) == proj.at(i, j));
  // Float path within tolerance.
  const MatD prod_d = emin.approx.form.full() * emax.approx.form.full();
  for (int i = 0; i < 25; ++i)
    for (int j = 0; j < 25; ++j)
      CHECK(std::abs(prod_d(i, j) - proj.at(i, j).to_double()) < 1e-8);
}

TEST_CASE("rank-1 orbit: E_max of the polar is the segment form") {
  const auto spec = sign_orbit_r2();
  const SecondMoment m = orbit_second_moment(spec, 0, RngSeed{0});
  const EllipsoidPair emax = max_volume_ellipsoid_polar(spec, m);
  // dim V = 1, M = diag(1, 0): membership l^T M l <= 1 reads l_1^2 <= 1.
  CHECK(emax.exact->radius_scale == Rat(1));
  CHECK(emax.exact->form.at(0, 0) == Rat(1));
  CHECK(ellipsoid_eval(*emax.exact, std::vector<Rat>{Rat(1), Rat(0)}) == Rat(0));
}

TEST_CASE("ellipsoid_eval unit ball examples") {
  Ellipsoid<double> ball{std::vector<double>(3, 0.0), SymD::identity(3), 1.0};
  CHECK(ellipsoid_eval(ball, std::vector<double>{0, 0, 0}) == doctest::Approx(-1.0));
  CHECK(ellipsoid_eval(ball, std::vector<double>{1, 0, 0}) == doctest::Approx(0.0));
  CHECK_THROWS(ellipsoid_eval(ball, std::vector<double>{1, 0}));
}

TEST_CASE("haar_so produces special orthogonal matrices") {
  Rng rng(RngSeed{9});
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 5);
    const MatD g = haar_so(n, rng);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += g(i, a) * g(i, b);
        CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-12);
      }
    // det == +1 via the exterior top power.
    const MatD top = exterior_power_matrix(g, n);
    CHECK(top(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("compact path: Grassmannian (4,2) moments approach I/6") {
  OrbitSpec spec;
  const auto sets = index_sets(4, 2);
  spec.ambient_dim = static_cast<int>(sets.size());
  spec.base_point.assign(spec.ambient_dim, 0.0);
  spec.base_point[0] = 1.0;
  spec.center_mode = CenterMode::PreCentered;
  CompactGroup g;
  g.haar_draw = [](Rng& rng) { return exterior_power_matrix(haar_so(4, rng), 2); };
  spec.group = std::move(g);
  const SecondMoment m = orbit_second_moment(spec, 20000, RngSeed{1234});
  for (int i = 0; i < spec.ambient_dim; ++i)
    for (int j = i; j < spec.ambient_dim; ++j) {
      const double want = (i == j) ? 1.0 / 6 : 0.0;
      CHECK(std::abs(m.m.at(i, j) - want) <= 4 * std::max(m.std_err.at(i, j), 1e-12));
    }
  CHECK_THROWS(orbit_second_moment(spec, 500, RngSeed{1}));  // samples guard
}

TEST_CASE("compact path via the congruence action on quadratics (Pos E_max)") {
  // SO(3) acting on U_{2,3} by p -> p o g^{-1}: in the orthonormal basis this
  // is a 5x5 orthogonal matrix; the orbit of the evaluation vector has second
  // moment I (so E_max of the polar is the L2 ball of radius (dim)^{-1/2}).
  const PolyBasis basis = orthonormal_basis_U(3, 2);
  const int d = static_cast<int>(basis.size());

  // Reproducing property: sum_j b_j(x)^2 is constant = d on the sphere.
  {
    Rng rng(RngSeed{5});
    const auto x = rng.unit_sphere(3);
    double s = 0.0;
    for (const auto& b : basis.elements) {
      const double v = b.eval(x);
      s += v * v;
    }
    // sum over the full degree-2 orthonormal system = 6; minus the constant
    // direction r^2/|r^2| contributes 1, leaving d = 5.
    CHECK(s == doctest::Approx(static_cast<double>(d)).epsilon(1e-9));
  }

  OrbitSpec spec;
  spec.ambient_dim = d;
  spec.center_mode = CenterMode::PreCentered;
  spec.base_point.resize(d);
  const std::vector<double> e1 = {1.0, 0.0, 0.0};
  for (int j = 0; j < d; ++j) spec.base_point[j] = basis.elements[j].eval(e1);

  CompactGroup g;
  g.haar_draw = [&basis, d](Rng& rng) {
    const MatD rot = haar_so(3, rng);
    // Matrix of p -> p o rot^{-1} in the basis: column j holds the expansion
    // of b_j composed with rot^{-1} (= rot^T as a linear substitution).
    MatD a(d, d);
    for (int j = 0; j < d; ++j) {
      // Substitute x_i -> sum_k rot(k, i)^T x_k ... i.e. (rot^{-1} x)_i.
      HomPoly composed(3, 2);
      for (const auto& [alpha, coef] : basis.elements[j].terms()) {
        // Expand prod_i (row_i . x)^{alpha_i} for the inverse rotation.
        HomPoly acc(3, 0);
        acc.add_term(MultiIndex::zero(3), coef);
        for (int i = 0; i < 3; ++i)
          for (int rep = 0; rep < alpha[i]; ++rep) {
            HomPoly lin(3, 1);
            for (int k = 0; k < 3; ++k) lin.add_term(MultiIndex::unit(3, k), rot(i, k));
            acc = poly_mul(acc, lin);
          }
        composed += acc;
      }
      for (int i = 0; i < d; ++i) a(i, j) = l2_inner(composed, basis.elements[i]);
    }
    return a;
  };
  spec.group = std::move(g);

  const SecondMoment m = orbit_second_moment(spec, 3000, RngSeed{77});
  const EllipsoidPair emax = max_volume_ellipsoid_polar(spec, m);
  CHECK(emax.approx.radius_scale == doctest::Approx(1.0 / d));
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      const double want = (i == j) ? 1.0 : 0.0;
      CHECK(std::abs(m.m.at(i, j) - want) <= 5 * std::max(m.std_err.at(i, j), 1e-12));
    }
}

TEST_CASE("eigenvalue cluster ambiguity raises a diagnostic error") {
  OrbitSpec spec;
  spec.ambient_dim = 2;
  spec.base_point = {1.0, 1.0};
  spec.center_mode = CenterMode::PreCentered;
  spec.group = FiniteGroup{};  // unused: we feed the moment directly
  SecondMoment m;
  m.exact = false;
  m.m = SymD(2);
  m.m.at(0, 0) = 1.0;
  m.m.at(1, 1) = 1.0 - 1e-6;  // gap exactly at the default threshold
  m.std_err = SymD(2);
  m.center = {0.0, 0.0};
  CHECK_THROWS_WITH_AS(static_cast<void>(min_volume_ellipsoid(spec, m)),
                       doctest::Contains("spectrum"), std::runtime_error);
}
