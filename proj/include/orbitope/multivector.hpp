#pragma once

#include <map>
#include <vector>

#include "json.hpp"
#include "orbitope/linalg.hpp"
#include "orbitope/rational.hpp"
#include "orbitope/rng.hpp"

namespace orbitope {

/// Sorted m-subset of {1..n}, the index of a basis element e_I of /\^m R^n.
using IndexSet = std::vector<int>;

/// All m-subsets of {1..n} in lexicographic order.
std::vector<IndexSet> index_sets(int n, int m);

/// Element of the m-th exterior power of R^n in the orthonormal basis
/// {e_{i_1} ^ ... ^ e_{i_m}}. Keys are strictly increasing; no stored zeros.
class MultiVector {
 public:
  MultiVector() : n_(0), m_(0) {}
  MultiVector(int n, int m) : n_(n), m_(m) {}

  int n() const { return n_; }
  int m() const { return m_; }
  const std::map<IndexSet, double>& coords() const { return c_; }

  void set(const IndexSet& idx, double v);
  double get(const IndexSet& idx) const {
    auto it = c_.find(idx);
    return it == c_.end() ? 0.0 : it->second;
  }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& [i, v] : c_) s += v * v;
    return s;
  }

  double dot(const MultiVector& o) const {
    double s = 0.0;
    for (const auto& [i, v] : c_) s += v * o.get(i);
    return s;
  }

  MultiVector& operator*=(double s);

  /// Coordinate sign flip induced by e_i -> -e_i for each i in `flips`.
  MultiVector sign_flipped(const std::vector<int>& flips) const;

 private:
  int n_, m_;
  std::map<IndexSet, double> c_;
};

/// Point of G_m(R^n) before embedding: n x m matrix with orthonormal columns,
/// orientation given by column order.
struct Frame {
  int n = 0, m = 0;
  MatD columns;
  /// max |cols^T cols - I|.
  double orthonormality_defect() const;
};

/// Pluecker embedding: coords[I] = det of the m x m submatrix of rows I.
MultiVector pluecker(const Frame& f);

/// Haar-distributed frame: Gaussian n x m matrix orthonormalized with the
/// positive-diagonal convention.
Frame sample_grassmann(int n, int m, Rng& rng);

/// The m-th exterior-power action matrix of g on /\^m R^n, rows/columns
/// indexed by index_sets(n, m): entries are m x m minors of g.
MatD exterior_power_matrix(const MatD& g, int m);

/// omega^p / p! for the standard Kaehler form omega = sum e_{2i-1} ^ e_{2i}
/// on R^{2q}; unit coefficients on p-subsets of the q pair blocks,
/// norm^2 = C(q, p).
MultiVector kaehler_power(int p, int q);

/// Re (e_1 + i e_2) ^ ... ^ (e_{2m-1} + i e_{2m}) on R^{2m}, with the pairing
/// (e_1,e_2), (e_3,e_4), ... fixed explicitly; norm^2 = sum_{j <= m/2} C(m, 2j).
MultiVector special_lagrangian(int m);

/// Dimension of the span of {g v^{x k}} for v = e_1 ^ ... ^ e_m: the
/// rectangular m x k diagram module dimension
/// prod_{i=1..m} prod_{j=1..k} (n + j - i) / (m + k - i - j + 1).
/// Exact rational product, asserted integral.
Int d_k_rect(int m, int n, int k);

// JSON wire format: {"n":…,"m":…,"coords":[{"I":[…],"c":…}]}
nlohmann::json multivector_to_json(const MultiVector& v);
MultiVector multivector_from_json(const nlohmann::json& j);

}  // namespace orbitope
