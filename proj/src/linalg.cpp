#include "orbitope/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace orbitope {

EigResult sym_eig(const SymD& q) {
  const int n = q.dim();
  MatD a = q.full();
  MatD v = MatD::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
  };
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  const double tol = (scale > 0 ? scale : 1.0) * 1e-14 * n;

  const int max_sweeps = 64;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_norm() <= tol) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int ql = p + 1; ql < n; ++ql) {
        const double apq = a(p, ql);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(ql, ql) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, ql);
          a(k, p) = c * akp - s * akq;
          a(k, ql) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(ql, k);
          a(p, k) = c * apk - s * aqk;
          a(ql, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, ql);
          v(k, p) = c * vkp - s * vkq;
          v(k, ql) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (off_norm() > tol) {
    std::ostringstream msg;
    msg << "sym_eig: Jacobi failed to converge in " << max_sweeps
        << " sweeps; off-diagonal residual " << off_norm() << " (tol " << tol << ")";
    throw std::runtime_error(msg.str());
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

  EigResult r;
  r.values.resize(n);
  r.vectors = MatD(n, n);
  for (int c = 0; c < n; ++c) {
    r.values[c] = a(order[c], order[c]);
    for (int k = 0; k < n; ++k) r.vectors(k, c) = v(k, order[c]);
  }
  r.sweeps = sweep;
  return r;
}

namespace {

// Row-reduces `a` in place. Returns pivot column list; if `record` is given,
// applies the same row operations to it (for inverse computation).
std::vector<int> gauss(MatQ& a, MatQ* record) {
  const int rows = a.rows(), cols = a.cols();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (!a(i, c).is_zero()) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r) {
      for (int j = 0; j < cols; ++j) std::swap(a(pr, j), a(r, j));
      if (record)
        for (int j = 0; j < record->cols(); ++j) std::swap((*record)(pr, j), (*record)(r, j));
    }
    const Rat inv = Rat(1) / a(r, c);
    for (int j = 0; j < cols; ++j) a(r, j) *= inv;
    if (record)
      for (int j = 0; j < record->cols(); ++j) (*record)(r, j) *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Rat f = a(i, c);
      for (int j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
      if (record)
        for (int j = 0; j < record->cols(); ++j) (*record)(i, j) -= f * (*record)(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rank_rat(MatQ a) { return static_cast<int>(gauss(a, nullptr).size()); }

std::vector<int> independent_columns(MatQ a) { return gauss(a, nullptr); }

MatQ inverse_rat(MatQ a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse_rat: not square");
  MatQ inv = MatQ::identity(a.rows());
  const auto pivots = gauss(a, &inv);
  if (static_cast<int>(pivots.size()) != a.rows()) throw std::runtime_error("inverse_rat: singular matrix");
  return inv;
}

namespace {

MatQ columns(const SymQ& m, const std::vector<int>& idx) {
  MatQ b(m.dim(), static_cast<int>(idx.size()));
  for (int i = 0; i < m.dim(); ++i)
    for (size_t j = 0; j < idx.size(); ++j) b(i, static_cast<int>(j)) = m.at(i, idx[j]);
  return b;
}

SymQ sandwich(const MatQ& b, const MatQ& core) {
  // B core B^T, symmetric output.
  const MatQ bc = b * core;
  const int n = b.rows();
  SymQ out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Rat s;
      for (int k = 0; k < b.cols(); ++k) s += bc(i, k) * b(j, k);
      out.at(i, j) = s;
    }
  return out;
}

}  // namespace

SymQ pseudo_inverse_rat(const SymQ& m) {
  const auto piv = independent_columns(m.full());
  if (piv.empty()) return SymQ(m.dim());
  const MatQ b = columns(m, piv);
  const MatQ btmb = b.transposed() * (m.full() * b);
  return sandwich(b, inverse_rat(btmb));
}

SymQ range_projector_rat(const SymQ& m) {
  const auto piv = independent_columns(m.full());
  if (piv.empty()) return SymQ(m.dim());
  const MatQ b = columns(m, piv);
  const MatQ btb = b.transposed() * b;
  return sandwich(b, inverse_rat(btb));
}

}  // namespace orbitope
