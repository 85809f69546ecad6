#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "orbitope/orbit.hpp"
#include "orbitope/tsp.hpp"

using namespace orbitope;

TEST_CASE("enumerate_tours counts and invariants") {
  CHECK(enumerate_tours(4, true).size() == 3);    // (n-1)!/2
  CHECK(enumerate_tours(5, true).size() == 12);
  CHECK(enumerate_tours(5, false).size() == 24);  // (n-1)!
  CHECK(enumerate_tours(6, true).size() == 60);
  CHECK_THROWS(enumerate_tours(3, true));
  CHECK_THROWS(enumerate_tours(10, false));

  for (bool sym : {true, false}) {
    const auto tours = enumerate_tours(5, sym);
    std::set<std::vector<int>> seen;
    for (const auto& t : tours) {
      check_tour_matrix(t, sym);
      CHECK(seen.insert(t.entries).second);  // no duplicates
    }
  }
}

TEST_CASE("stn_closed_forms exact fields") {
  const StnReport r5 = stn_closed_forms(5);
  CHECK(r5.dim == 5);
  CHECK(r5.r_min_sq == Rat(5));
  CHECK(*r5.r_max_sq == Rat(1));
  CHECK(*r5.sym_coeff == Rat(1));

  const StnReport r6 = stn_closed_forms(6);
  CHECK(r6.r_min_sq == Rat(36, 5));
  CHECK(*r6.r_max_sq == Rat(8, 15));
  CHECK(*r6.sym_coeff == Rat(2, 3));

  const StnReport r7 = stn_closed_forms(7);
  CHECK(r7.dim == 14);  // (49 - 21)/2

  // n = 4: partial report, symmetry fields absent.
  const StnReport r4 = stn_closed_forms(4);
  CHECK(!r4.r_max_sq.has_value());
  CHECK(!r4.sym_coeff.has_value());
  CHECK(!r4.deep_point.has_value());
}

TEST_CASE("deep point b: distance to center and vertex distances exact") {
  for (int n : {5, 6, 7}) {
    const StnReport r = stn_closed_forms(n);
    Rat dist_sq;
    for (size_t i = 0; i < r.center.size(); ++i) {
      const Rat d = (*r.deep_point)[i] - r.center[i];
      dist_sq += d * d;
    }
    CHECK(dist_sq == *r.r_max_sq);
    // b is the centroid of the vertices with x_12 = x_21 = 0.
    const auto tours = enumerate_tours(n, true);
    std::vector<Rat> centroid(r.center.size(), Rat(0));
    long count = 0;
    for (const auto& t : tours) {
      if (t.at(0, 1) != 0) continue;
      ++count;
      const auto f = t.flatten();
      for (size_t i = 0; i < f.size(); ++i) centroid[i] += f[i];
    }
    REQUIRE(count > 0);
    for (size_t i = 0; i < centroid.size(); ++i) {
      centroid[i] /= Rat(count);
      CHECK(centroid[i] == (*r.deep_point)[i]);
    }
    // Every vertex at exact distance R_min from c.
    for (const auto& t : tours) {
      const auto f = t.flatten();
      Rat d_sq;
      for (size_t i = 0; i < f.size(); ++i) {
        const Rat d = f[i] - r.center[i];
        d_sq += d * d;
      }
      CHECK(d_sq == r.r_min_sq);
    }
  }
}

TEST_CASE("hull membership: centroid inside, inflated vertex outside") {
  const auto tours = enumerate_tours(5, true);
  const StnReport r = stn_closed_forms(5);

  const LpFeasibility inside = hull_membership(tours, r.center);
  CHECK(inside.feasible);
  Rat wsum;
  for (const auto& w : inside.weights) {
    CHECK(w.sign() >= 0);
    wsum += w;
  }
  CHECK(wsum == Rat(1));

  // 1.01 (v - c) + c is outside by vertex extremality; the separator is an
  // exact certificate.
  const auto vf = tours.front().flatten();
  std::vector<Rat> outside_pt(vf.size());
  for (size_t i = 0; i < vf.size(); ++i)
    outside_pt[i] = Rat(101, 100) * (vf[i] - r.center[i]) + r.center[i];
  const LpFeasibility outside = hull_membership(tours, outside_pt);
  CHECK(!outside.feasible);
  Rat at_point = outside.separator_offset;
  for (size_t i = 0; i < outside_pt.size(); ++i) at_point += outside.separator[i] * outside_pt[i];
  CHECK(at_point.sign() > 0);
  for (const auto& t : tours) {
    const auto f = t.flatten();
    Rat at_vertex = outside.separator_offset;
    for (size_t i = 0; i < f.size(); ++i) at_vertex += outside.separator[i] * f[i];
    CHECK(at_vertex.sign() <= 0);
  }
}

TEST_CASE("the lambda-scaled reflection of a vertex lies in its opposite face") {
  for (int n : {5, 6}) {
    const auto tours = enumerate_tours(n, true);
    const StnReport r = stn_closed_forms(n);
    const TourMatrix& v = tours.front();
    const auto face = face_vertices(v, tours);
    REQUIRE(!face.empty());
    // n = 5: the complement of a 5-cycle is a 5-cycle, so F_v is one vertex.
    if (n == 5) CHECK(face.size() == 1);

    const auto vf = v.flatten();
    std::vector<Rat> target(vf.size());
    for (size_t i = 0; i < vf.size(); ++i)
      target[i] = -(*r.sym_coeff) * (vf[i] - r.center[i]) + r.center[i];
    const LpFeasibility lp = hull_membership(face, target);
    CHECK(lp.feasible);
    // The weights are the certificate: re-verify the combination exactly.
    std::vector<Rat> combo(target.size(), Rat(0));
    Rat wsum;
    for (size_t j = 0; j < face.size(); ++j) {
      wsum += lp.weights[j];
      const auto col = face[j].flatten();
      for (size_t i = 0; i < combo.size(); ++i) combo[i] += lp.weights[j] * col[i];
    }
    CHECK(wsum == Rat(1));
    for (size_t i = 0; i < combo.size(); ++i) CHECK(combo[i] == target[i]);
  }
}

TEST_CASE("atn residual vanishes exactly at every directed tour") {
  for (int n : {5, 6}) {
    for (const auto& t : enumerate_tours(n, false)) CHECK(atn_ellipsoid_residual(n, t).is_zero());
    CHECK(atn_ellipsoid_residual_at(n, atn_center(n)) ==
          -Rat(static_cast<long>(n) * n - 3L * n + 1));
  }
  // Invariant violations are rejected.
  TourMatrix bad;
  bad.n = 5;
  bad.entries.assign(25, 0);
  CHECK_THROWS(atn_ellipsoid_residual(5, bad));
}

TEST_CASE("affine hull dimensions from vertex ranks") {
  for (int n : {5, 6}) {
    std::vector<std::vector<Rat>> sym_pts, asym_pts;
    for (const auto& t : enumerate_tours(n, true)) sym_pts.push_back(t.flatten());
    for (const auto& t : enumerate_tours(n, false)) asym_pts.push_back(t.flatten());
    CHECK(affine_dim(sym_pts) == n * (n - 3) / 2);
    CHECK(affine_dim(asym_pts) == n * n - 3 * n + 1);
  }
}

TEST_CASE("the functional <v-c, x-c> attains the paper extremes over vertices") {
  for (int n : {5, 6, 7}) {
    const auto tours = enumerate_tours(n, true);
    const StnReport r = stn_closed_forms(n);
    const auto vf = tours.front().flatten();
    Rat max_val, min_val;
    bool first = true;
    for (const auto& t : tours) {
      const auto f = t.flatten();
      Rat val;
      for (size_t i = 0; i < f.size(); ++i) val += (vf[i] - r.center[i]) * (f[i] - r.center[i]);
      if (first || val > max_val) max_val = val;
      if (first || val < min_val) min_val = val;
      first = false;
    }
    CHECK(max_val == Rat(2L * n * (n - 3), n - 1));
    CHECK(min_val == -Rat(4L * n, n - 1));
  }
}

TEST_CASE("cross-module: orbit-engine E_min equals the closed-form ball") {
  for (int n : {5, 6}) {
    const OrbitSpec spec = stn_orbit_spec(n);
    const SecondMoment mom = orbit_second_moment(spec, 0, RngSeed{0});
    const StnReport closed = stn_closed_forms(n);
    // Center matches.
    for (size_t i = 0; i < closed.center.size(); ++i)
      CHECK(mom.center_exact[i] == closed.center[i]);
    // R^2 = trace(M) is the closed form, and every vertex is on the boundary.
    CHECK(mom.m_exact.trace() == closed.r_min_sq);
    const auto [ell, rep] = min_volume_ellipsoid(spec, mom);
    for (const auto& t : enumerate_tours(n, true))
      CHECK(ellipsoid_eval(*ell.exact, t.flatten()) == Rat(0));
    CHECK(rep.hull_dim == closed.dim);
  }
}
