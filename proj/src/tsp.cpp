#include "orbitope/tsp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace orbitope {

TourMatrix tour_matrix(const Tour& t) {
  const int n = static_cast<int>(t.order.size());
  TourMatrix x;
  x.n = n;
  x.entries.assign(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    const int a = t.order[i] - 1;
    const int b = t.order[(i + 1) % n] - 1;
    x.at(a, b) = 1;
    if (t.symmetric) x.at(b, a) = 1;
  }
  return x;
}

void check_tour_matrix(const TourMatrix& x, bool symmetric) {
  const int n = x.n;
  for (int i = 0; i < n; ++i) {
    if (x.at(i, i) != 0) throw std::invalid_argument("TourMatrix: nonzero diagonal");
    int row = 0, col = 0;
    for (int j = 0; j < n; ++j) {
      if (x.at(i, j) != 0 && x.at(i, j) != 1) throw std::invalid_argument("TourMatrix: entries must be 0/1");
      row += x.at(i, j);
      col += x.at(j, i);
      if (symmetric && x.at(i, j) != x.at(j, i)) throw std::invalid_argument("TourMatrix: not symmetric");
    }
    if (symmetric && row != 2) throw std::invalid_argument("TourMatrix: symmetric row sum != 2");
    if (!symmetric && (row != 1 || col != 1))
      throw std::invalid_argument("TourMatrix: asymmetric row/column sum != 1");
  }
}

std::vector<TourMatrix> enumerate_tours(int n, bool symmetric) {
  if (n < 4 || n > 9) throw std::invalid_argument("enumerate_tours: n out of [4, 9]");
  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 2);
  std::vector<TourMatrix> out;
  do {
    if (symmetric && rest.front() > rest.back()) continue;  // keep the smaller direction
    Tour t;
    t.symmetric = symmetric;
    t.order.push_back(1);
    t.order.insert(t.order.end(), rest.begin(), rest.end());
    out.push_back(tour_matrix(t));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

StnReport stn_closed_forms(int n) {
  if (n < 4) throw std::invalid_argument("stn_closed_forms: n < 4");
  StnReport r;
  r.n = n;
  r.dim = static_cast<long>(n) * (n - 3) / 2;
  r.center.assign(static_cast<size_t>(n) * n, Rat(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) r.center[static_cast<size_t>(i) * n + j] = Rat(2, n - 1);
  r.r_min_sq = Rat(2L * n * (n - 3), n - 1);
  if (n >= 5) {
    r.r_max_sq = Rat(8, static_cast<long>(n - 1) * (n - 3));
    r.sym_coeff = Rat(2, n - 3);
    // Centroid of the vertices with x_12 = x_21 = 0; touches the inscribed ball.
    std::vector<Rat> b(static_cast<size_t>(n) * n, Rat(0));
    const Rat off(2, n - 2);
    const Rat inner(2L * (n - 4), static_cast<long>(n - 2) * (n - 3));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const bool i12 = i < 2, j12 = j < 2;
        if (i12 && j12) continue;  // zero block
        b[static_cast<size_t>(i) * n + j] = (i12 || j12) ? off : inner;
      }
    r.deep_point = std::move(b);
  }
  return r;
}

Rat atn_ellipsoid_residual_at(int n, const std::vector<Rat>& flat) {
  if (static_cast<int>(flat.size()) != n * n)
    throw std::invalid_argument("atn_ellipsoid_residual: wrong ambient dimension");
  const Rat inv(1, n - 1);
  const Rat half(1, 2);
  Rat sym_sum, skew_sum;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Rat& xij = flat[static_cast<size_t>(i) * n + j];
      const Rat& xji = flat[static_cast<size_t>(j) * n + i];
      const Rat s = (xij + xji) * half - inv;
      const Rat a = (xij - xji) * half;
      sym_sum += s * s;
      skew_sum += a * a;
    }
  return Rat(n - 1) * sym_sum + Rat(static_cast<long>(n - 1) * (n - 2), n) * skew_sum -
         Rat(static_cast<long>(n) * n - 3L * n + 1);
}

Rat atn_ellipsoid_residual(int n, const TourMatrix& x) {
  check_tour_matrix(x, false);
  return atn_ellipsoid_residual_at(n, x.flatten());
}

std::vector<TourMatrix> face_vertices(const TourMatrix& v, const std::vector<TourMatrix>& all) {
  std::vector<TourMatrix> out;
  for (const auto& h : all) {
    bool shares = false;
    for (size_t i = 0; i < h.entries.size() && !shares; ++i)
      if (h.entries[i] && v.entries[i]) shares = true;
    if (!shares) out.push_back(h);
  }
  return out;
}

namespace {

OrbitSpec sn_matrix_orbit(int n, bool symmetric) {
  // v is the standard tour; g acts by (ga)_{ij} = a_{g^{-1}(i) g^{-1}(j)}.
  OrbitSpec spec;
  spec.ambient_dim = n * n;
  Tour t;
  t.symmetric = symmetric;
  t.order.resize(n);
  std::iota(t.order.begin(), t.order.end(), 1);
  const TourMatrix v = tour_matrix(t);
  spec.base_point = v.flatten_d();
  spec.base_point_exact = v.flatten();
  spec.center_mode = CenterMode::AutoCenter;

  FiniteGroup group;
  std::vector<int> perm(n);  // perm = g^{-1} as we enumerate all of S_n
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> src(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) src[static_cast<size_t>(i) * n + j] = perm[i] * n + perm[j];
    group.elements.push_back(SparseAction::permutation(src));
  } while (std::next_permutation(perm.begin(), perm.end()));
  spec.group = std::move(group);
  return spec;
}

}  // namespace

OrbitSpec stn_orbit_spec(int n) { return sn_matrix_orbit(n, true); }
OrbitSpec atn_orbit_spec(int n) { return sn_matrix_orbit(n, false); }

std::vector<Rat> atn_center(int n) {
  std::vector<Rat> c(static_cast<size_t>(n) * n, Rat(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) c[static_cast<size_t>(i) * n + j] = Rat(1, n - 1);
  return c;
}

int affine_dim(const std::vector<std::vector<Rat>>& pts) {
  if (pts.size() < 2) return 0;
  MatQ diffs(static_cast<int>(pts.size()) - 1, static_cast<int>(pts[0].size()));
  for (size_t i = 1; i < pts.size(); ++i)
    for (size_t j = 0; j < pts[0].size(); ++j)
      diffs(static_cast<int>(i) - 1, static_cast<int>(j)) = pts[i][j] - pts[0][j];
  return rank_rat(diffs);
}

}  // namespace orbitope
