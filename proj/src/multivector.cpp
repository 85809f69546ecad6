#include "orbitope/multivector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orbitope {

std::vector<IndexSet> index_sets(int n, int m) {
  std::vector<IndexSet> out;
  if (m < 0 || m > n) return out;
  IndexSet cur(m);
  for (int i = 0; i < m; ++i) cur[i] = i + 1;
  for (;;) {
    out.push_back(cur);
    int i = m - 1;
    while (i >= 0 && cur[i] == n - m + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < m; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

void MultiVector::set(const IndexSet& idx, double v) {
  if (static_cast<int>(idx.size()) != m_) throw std::invalid_argument("MultiVector: index size != m");
  for (size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 1 || idx[i] > n_) throw std::invalid_argument("MultiVector: index out of range");
    if (i + 1 < idx.size() && idx[i] >= idx[i + 1])
      throw std::invalid_argument("MultiVector: index not strictly increasing");
  }
  if (v == 0.0)
    c_.erase(idx);
  else
    c_[idx] = v;
}

MultiVector& MultiVector::operator*=(double s) {
  if (s == 0.0) {
    c_.clear();
    return *this;
  }
  for (auto& [i, v] : c_) v *= s;
  return *this;
}

MultiVector MultiVector::sign_flipped(const std::vector<int>& flips) const {
  MultiVector out(n_, m_);
  for (const auto& [idx, v] : c_) {
    int count = 0;
    for (int i : idx)
      if (std::find(flips.begin(), flips.end(), i) != flips.end()) ++count;
    out.set(idx, (count % 2 == 0) ? v : -v);
  }
  return out;
}

double Frame::orthonormality_defect() const {
  double worst = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += columns(i, a) * columns(i, b);
      worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

namespace {

double det_small(MatD a) {
  const int n = a.rows();
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int i = c + 1; i < n; ++i)
      if (std::abs(a(i, c)) > std::abs(a(p, c))) p = i;
    if (a(p, c) == 0.0) return 0.0;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (int i = c + 1; i < n; ++i) {
      const double f = a(i, c) / a(c, c);
      for (int j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

}  // namespace

MultiVector pluecker(const Frame& f) {
  MultiVector out(f.n, f.m);
  for (const auto& idx : index_sets(f.n, f.m)) {
    MatD sub(f.m, f.m);
    for (int r = 0; r < f.m; ++r)
      for (int c = 0; c < f.m; ++c) sub(r, c) = f.columns(idx[r] - 1, c);
    const double d = det_small(sub);
    if (d != 0.0) out.set(idx, d);
  }
  return out;
}

Frame sample_grassmann(int n, int m, Rng& rng) {
  if (m < 1 || m > n) throw std::invalid_argument("sample_grassmann: need 1 <= m <= n");
  Frame f;
  f.n = n;
  f.m = m;
  f.columns = MatD(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) f.columns(i, j) = rng.next_gaussian();
  for (int c = 0; c < m; ++c) {
    for (int p = 0; p < c; ++p) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += f.columns(i, p) * f.columns(i, c);
      for (int i = 0; i < n; ++i) f.columns(i, c) -= dot * f.columns(i, p);
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += f.columns(i, c) * f.columns(i, c);
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) f.columns(i, c) /= norm;
  }
  return f;
}

MatD exterior_power_matrix(const MatD& g, int m) {
  const int n = g.rows();
  const auto sets = index_sets(n, m);
  const int d = static_cast<int>(sets.size());
  MatD out(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      MatD sub(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) sub(i, j) = g(sets[r][i] - 1, sets[c][j] - 1);
      out(r, c) = det_small(sub);
    }
  return out;
}

MultiVector kaehler_power(int p, int q) {
  if (p < 1 || q < 1 || p > q) throw std::invalid_argument("kaehler_power: need 1 <= p <= q");
  MultiVector out(2 * q, 2 * p);
  // Choose p of the q blocks (e_{2i-1}, e_{2i}); the wedge of chosen blocks in
  // increasing order has coefficient 1 (blocks are even-graded, they commute).
  std::vector<int> choice(p);
  for (int i = 0; i < p; ++i) choice[i] = i;
  for (;;) {
    IndexSet idx;
    for (int i = 0; i < p; ++i) {
      idx.push_back(2 * choice[i] + 1);
      idx.push_back(2 * choice[i] + 2);
    }
    out.set(idx, 1.0);
    int i = p - 1;
    while (i >= 0 && choice[i] == q - p + i) --i;
    if (i < 0) break;
    ++choice[i];
    for (int j = i + 1; j < p; ++j) choice[j] = choice[j - 1] + 1;
  }
  return out;
}

MultiVector special_lagrangian(int m) {
  if (m < 1) throw std::invalid_argument("special_lagrangian: m < 1");
  MultiVector out(2 * m, m);
  // Expand prod_j (e_{2j-1} + i e_{2j}) and keep the real part: subsets J of
  // factors contributing i e_{2j} with |J| = 2t carry the sign (-1)^t. Each
  // factor contributes one index from its own block, so index order is
  // already increasing and no reordering signs appear.
  for (long mask = 0; mask < (1L << m); ++mask) {
    const int bits = __builtin_popcountl(mask);
    if (bits % 2 != 0) continue;
    IndexSet idx(m);
    for (int j = 0; j < m; ++j) idx[j] = (mask >> j & 1) ? 2 * j + 2 : 2 * j + 1;
    out.set(idx, (bits / 2) % 2 == 0 ? 1.0 : -1.0);
  }
  return out;
}

Int d_k_rect(int m, int n, int k) {
  if (m < 1 || m > n || k < 1) throw std::invalid_argument("d_k_rect: need 1 <= m <= n, k >= 1");
  Rat prod(1);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= k; ++j) prod *= Rat(n + j - i, m + k - i - j + 1);
  if (!prod.is_integer())
    throw std::runtime_error("d_k_rect: non-integer product (invariant breach): " + prod.str());
  return prod.num();
}

nlohmann::json multivector_to_json(const MultiVector& v) {
  nlohmann::json coords = nlohmann::json::array();
  for (const auto& [idx, c] : v.coords()) coords.push_back({{"I", idx}, {"c", c}});
  return {{"n", v.n()}, {"m", v.m()}, {"coords", std::move(coords)}};
}

MultiVector multivector_from_json(const nlohmann::json& j) {
  MultiVector v(j.at("n").get<int>(), j.at("m").get<int>());
  for (const auto& t : j.at("coords")) v.set(t.at("I").get<IndexSet>(), t.at("c").get<double>());
  return v;
}

}  // namespace orbitope
