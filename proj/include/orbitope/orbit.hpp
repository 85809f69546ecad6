#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "orbitope/linalg.hpp"
#include "orbitope/rational.hpp"
#include "orbitope/rng.hpp"

namespace orbitope {

/// Orthogonal group action stored sparsely: (Ax)_i = sum over stored
/// (i, j, v) of v * x_j. Permutation actions carry one entry per row.
class SparseAction {
 public:
  SparseAction(int dim) : dim_(dim) {}

  /// Coordinate permutation action: (Ax)_i = x_{src[i]}.
  static SparseAction permutation(const std::vector<int>& src) {
    SparseAction a(static_cast<int>(src.size()));
    for (int i = 0; i < a.dim_; ++i) a.add(i, src[i], Rat(1));
    return a;
  }

  void add(int row, int col, Rat v) { entries_.push_back({row, col, std::move(v)}); }
  int dim() const { return dim_; }

  std::vector<Rat> apply(const std::vector<Rat>& x) const {
    std::vector<Rat> y(dim_);
    for (const auto& e : entries_) y[e.row] += e.value * x[e.col];
    return y;
  }
  std::vector<double> apply(const std::vector<double>& x) const {
    std::vector<double> y(dim_, 0.0);
    for (const auto& e : entries_) y[e.row] += e.value.to_double() * x[e.col];
    return y;
  }

  /// A * M * A^T for symmetric M (used by the commutation check).
  SymQ conjugate(const SymQ& m) const;

 private:
  struct Entry {
    int row, col;
    Rat value;
  };
  int dim_;
  std::vector<Entry> entries_;
};

struct FiniteGroup {
  std::vector<SparseAction> elements;
};

/// Compact group given by a Haar sampler; haar_draw returns the orthogonal
/// action matrix of a Haar-random element on the ambient space.
struct CompactGroup {
  std::function<MatD(Rng&)> haar_draw;
};

enum class CenterMode { PreCentered, AutoCenter };

/// Description of an orbit {gv : g in G} in R^ambient_dim.
struct OrbitSpec {
  int ambient_dim = 0;
  std::vector<double> base_point;                  // v (float view, always set)
  std::optional<std::vector<Rat>> base_point_exact;  // v (exact; required for the finite exact path)
  std::variant<FiniteGroup, CompactGroup> group;
  CenterMode center_mode = CenterMode::AutoCenter;
};

/// Second-moment form M = avg_g (gv - c)(gv - c)^T together with the orbit
/// center c. Finite groups are averaged exactly; compact groups are sampled
/// and carry a per-entry standard error.
struct SecondMoment {
  bool exact = false;
  SymQ m_exact;                      // set when exact
  std::vector<Rat> center_exact;     // set when exact
  SymD m;                            // always set (float view)
  SymD std_err;                      // zero on the exact path
  std::vector<double> center;
  long samples_used = 0;
};

SecondMoment orbit_second_moment(const OrbitSpec& spec, long samples, RngSeed seed);

/// Ellipsoid {x : (x - center)^T form (x - center) <= radius_scale}.
template <class T>
struct Ellipsoid {
  std::vector<T> center;
  SymMat<T> form;
  T radius_scale;
};

/// One ellipsoid in both scalar regimes; `exact` is present on the finite
/// rational path.
struct EllipsoidPair {
  Ellipsoid<double> approx;
  std::optional<Ellipsoid<Rat>> exact;
};

struct DecompositionReport {
  std::vector<int> component_dims;        // dim V_i per eigenvalue cluster
  std::vector<double> lambdas;            // cluster eigenvalue = <v_i,v_i>/dim V_i
  std::vector<double> v_component_norms;  // |P_i (v - c)|^2
  std::vector<MatD> component_projections;
  int hull_dim = 0;
  std::vector<double> spectrum;  // eigenvalues of M, descending
  // Spectra cannot distinguish isomorphic components with equal lambda from a
  // single component; when a cluster could hide such a merge we say so here
  // rather than guess.
  bool components_may_be_merged = false;
};

/// Minimum-volume ellipsoid of conv(orbit) from its second-moment form:
/// E_min = {x : (x-c)^T M^+ (x-c) <= dim V}. Exact (rational pseudo-inverse)
/// when the moment is exact; the float ellipsoid and the cluster report come
/// from the Jacobi spectrum.
std::pair<EllipsoidPair, DecompositionReport> min_volume_ellipsoid(const OrbitSpec& spec,
                                                                   const SecondMoment& moment,
                                                                   double eig_gap_tol = 1e-6);

/// Maximum-volume ellipsoid of the polar body: {l : l^T M l <= 1/dim V}.
EllipsoidPair max_volume_ellipsoid_polar(const OrbitSpec& spec, const SecondMoment& moment);

/// Membership residual (x - center)^T Q (x - center) - radius_scale; <= 0 inside.
template <class T>
T ellipsoid_eval(const Ellipsoid<T>& e, const std::vector<T>& x) {
  if (static_cast<int>(x.size()) != e.form.dim() || x.size() != e.center.size())
    throw std::invalid_argument("ellipsoid_eval: dimension mismatch");
  std::vector<T> d(x.size());
  for (size_t i = 0; i < x.size(); ++i) d[i] = x[i] - e.center[i];
  return e.form.quad(d) - e.radius_scale;
}

/// Haar-distributed SO(n) matrix: Gaussian matrix orthonormalized with the
/// positive-diagonal convention; determinant fixed to +1 by flipping the last
/// column when needed.
MatD haar_so(int n, Rng& rng);

}  // namespace orbitope
