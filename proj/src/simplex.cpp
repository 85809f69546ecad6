#include "orbitope/simplex.hpp"

#include <stdexcept>

namespace orbitope {

LpFeasibility exact_convex_membership(const std::vector<std::vector<Rat>>& points,
                                      const std::vector<Rat>& target) {
  if (points.empty()) throw std::invalid_argument("exact_convex_membership: no points");
  const int dim = static_cast<int>(target.size());
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != dim)
      throw std::invalid_argument("exact_convex_membership: dimension mismatch");

  const int ncols = static_cast<int>(points.size());
  const int m = dim + 1;  // coordinates plus the convex-combination row

  // Constraint system [V; 1] w = [target; 1]; rows flipped to make rhs >= 0.
  std::vector<int> flip(m, 1);
  std::vector<Rat> rhs(m);
  for (int i = 0; i < dim; ++i) rhs[i] = target[i];
  rhs[dim] = Rat(1);
  for (int i = 0; i < m; ++i)
    if (rhs[i].sign() < 0) {
      flip[i] = -1;
      rhs[i] = -rhs[i];
    }

  // Full tableau: original columns, artificial columns, rhs.
  const int width = ncols + m + 1;
  MatQ t(m, width);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < ncols; ++j) {
      const Rat raw = (i < dim) ? points[j][i] : Rat(1);
      t(i, j) = (flip[i] < 0) ? -raw : raw;
    }
    t(i, ncols + i) = Rat(1);
    t(i, width - 1) = rhs[i];
  }

  // Phase-1 objective: minimize the artificial sum. obj[j] are reduced costs.
  std::vector<Rat> obj(width);
  for (int j = 0; j < width; ++j) {
    Rat s;
    for (int i = 0; i < m; ++i) s += t(i, j);
    obj[j] = ((j >= ncols && j < ncols + m) ? Rat(1) : Rat(0)) - s;
  }
  // obj[width-1] currently holds -(objective value).

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = ncols + i;

  for (;;) {
    // Bland: entering variable is the lowest index with a negative reduced cost.
    int enter = -1;
    for (int j = 0; j < ncols + m; ++j)
      if (obj[j].sign() < 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;

    int leave = -1;
    Rat best_ratio;
    for (int i = 0; i < m; ++i) {
      if (t(i, enter).sign() <= 0) continue;
      const Rat ratio = t(i, width - 1) / t(i, enter);
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::runtime_error("exact_convex_membership: phase-1 unbounded (internal error)");

    const Rat inv = Rat(1) / t(leave, enter);
    for (int j = 0; j < width; ++j) t(leave, j) *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || t(i, enter).is_zero()) continue;
      const Rat f = t(i, enter);
      for (int j = 0; j < width; ++j) t(i, j) -= f * t(leave, j);
    }
    if (!obj[enter].is_zero()) {
      const Rat f = obj[enter];
      for (int j = 0; j < width; ++j) obj[j] -= f * t(leave, j);
    }
    basis[leave] = enter;
  }

  LpFeasibility out;
  const Rat value = -obj[width - 1];
  if (value.is_zero()) {
    out.feasible = true;
    out.weights.assign(ncols, Rat(0));
    for (int i = 0; i < m; ++i)
      if (basis[i] < ncols) out.weights[basis[i]] = t(i, width - 1);
    return out;
  }

  // Farkas certificate from the phase-1 duals: y_i = 1 - reduced cost of the
  // i-th artificial. Then y.A_j <= 0 for all columns and y.b > 0; undo flips.
  out.feasible = false;
  out.separator.assign(dim, Rat(0));
  std::vector<Rat> y(m);
  for (int i = 0; i < m; ++i) y[i] = Rat(1) - obj[ncols + i];
  for (int i = 0; i < dim; ++i) out.separator[i] = (flip[i] < 0) ? -y[i] : y[i];
  out.separator_offset = (flip[dim] < 0) ? -y[dim] : y[dim];
  return out;
}

}  // namespace orbitope
