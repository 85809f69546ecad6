#pragma once

#include <optional>
#include <vector>

#include "orbitope/orbit.hpp"
#include "orbitope/rational.hpp"
#include "orbitope/simplex.hpp"

namespace orbitope {

/// Hamiltonian tour in canonical form: starts at city 1; undirected tours
/// additionally store the lexicographically smaller of the two directions.
struct Tour {
  std::vector<int> order;  // permutation of 1..n, order[0] == 1
  bool symmetric = true;
};

/// 0/1 adjacency matrix of a tour. Symmetric case: symmetric, zero diagonal,
/// row sums 2. Asymmetric case: zero diagonal, row and column sums 1.
struct TourMatrix {
  int n = 0;
  std::vector<int> entries;  // row-major n*n

  int at(int i, int j) const { return entries[static_cast<size_t>(i) * n + j]; }
  int& at(int i, int j) { return entries[static_cast<size_t>(i) * n + j]; }

  /// Row-major flattening to Q^{n^2}.
  std::vector<Rat> flatten() const {
    std::vector<Rat> v(entries.size());
    for (size_t i = 0; i < entries.size(); ++i) v[i] = Rat(entries[i]);
    return v;
  }
  std::vector<double> flatten_d() const {
    return std::vector<double>(entries.begin(), entries.end());
  }
};

TourMatrix tour_matrix(const Tour& t);
void check_tour_matrix(const TourMatrix& x, bool symmetric);

/// All tour matrices for n cities: (n-1)!/2 undirected cycles or (n-1)!
/// directed circuits. Guarded to 4 <= n <= 9.
std::vector<TourMatrix> enumerate_tours(int n, bool symmetric);

/// Closed forms of Example-2.1 type for ST_n, all exact. The symmetry fields
/// need n >= 5 and are absent below that.
struct StnReport {
  int n = 0;
  long dim = 0;                       // (n^2 - 3n)/2
  std::vector<Rat> center;            // c: 2/(n-1) off-diagonal
  Rat r_min_sq;                       // 2n(n-3)/(n-1)
  std::optional<Rat> r_max_sq;        // 8/((n-1)(n-3)), n >= 5
  std::optional<Rat> sym_coeff;       // 2/(n-3), n >= 5
  std::optional<std::vector<Rat>> deep_point;  // b, the touching centroid
};

StnReport stn_closed_forms(int n);

/// Exact convex-hull membership with certificate (weights or separator).
inline LpFeasibility hull_membership(const std::vector<TourMatrix>& vertices,
                                     const std::vector<Rat>& point) {
  std::vector<std::vector<Rat>> pts;
  pts.reserve(vertices.size());
  for (const auto& v : vertices) pts.push_back(v.flatten());
  return exact_convex_membership(pts, point);
}

/// Left side minus right side of the AT_n minimum-volume-ellipsoid inequality,
/// evaluated exactly; vanishes at every directed tour vertex.
Rat atn_ellipsoid_residual(int n, const TourMatrix& x);

/// Same residual at an arbitrary rational matrix (relaxed mode: no tour
/// invariants enforced; used for the center and other probes).
Rat atn_ellipsoid_residual_at(int n, const std::vector<Rat>& flat);

/// Vertices of the face F_v: tours sharing no edge with v.
std::vector<TourMatrix> face_vertices(const TourMatrix& v, const std::vector<TourMatrix>& all);

/// Orbit specs for the S_n actions behind ST_n / AT_n (simultaneous row and
/// column permutation of n x n matrices; all n! coordinate permutations).
OrbitSpec stn_orbit_spec(int n);
OrbitSpec atn_orbit_spec(int n);

/// AT_n center: 1/(n-1) off-diagonal.
std::vector<Rat> atn_center(int n);

/// Affine dimension of a rational point set (rank of differences).
int affine_dim(const std::vector<std::vector<Rat>>& pts);

}  // namespace orbitope
