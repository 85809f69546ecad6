#include "orbitope/comass.hpp"

#include <algorithm>
#include <cmath>

#include "orbitope/util.hpp"

namespace orbitope {

int default_comass_k(int n, int m) {
  const int k = static_cast<int>(std::ceil(m * n * std::log(m + 1.0)));
  return std::min(std::max(k, 1), 6);
}

std::pair<double, double> grassmann_norm_2k(const MultiVector& c, int k, long samples, RngSeed seed) {
  const int n = c.n(), m = c.m();
  const long block_size = 16384;
  const std::uint64_t nblocks = (samples + block_size - 1) / block_size;
  struct Acc {
    double sum = 0.0, sum_sq = 0.0;
    long count = 0;
  };
  std::function<Acc(std::uint64_t)> body = [&](std::uint64_t b) {
    Rng rng = derive_rng(seed, b);
    Acc acc;
    const long lo = static_cast<long>(b) * block_size;
    const long hi = std::min(samples, lo + block_size);
    for (long s = lo; s < hi; ++s) {
      const Frame f = sample_grassmann(n, m, rng);
      const double v = c.dot(pluecker(f));
      double t = 1.0;
      for (int j = 0; j < 2 * k; ++j) t *= v;
      acc.sum += t;
      acc.sum_sq += t * t;
      ++acc.count;
    }
    return acc;
  };
  const auto accs = map_blocks<Acc>(nblocks, body);
  double sum = 0.0, sum_sq = 0.0;
  long count = 0;
  for (const auto& a : accs) {
    sum += a.sum;
    sum_sq += a.sum_sq;
    count += a.count;
  }
  const double mean = std::max(sum / count, 0.0);
  const double var = std::max(0.0, sum_sq / count - mean * mean);
  const double se_mean = std::sqrt(var / count);
  const double value = std::pow(mean, 1.0 / (2.0 * k));
  const double se = mean > 0 ? se_mean * value / (2.0 * k * mean) : 0.0;
  return {value, se};
}

namespace {

// d/dF of <c, pluecker(F)>: the (r, s) entry sums cofactor expansions of the
// row-submatrix determinants through every index set containing row r.
MatD euclidean_gradient(const MultiVector& c, const Frame& f) {
  const int m = f.m;
  MatD grad(f.n, m);
  MatD sub(m, m), minor(m - 1, m - 1);
  for (const auto& [idx, coef] : c.coords()) {
    for (int r = 0; r < m; ++r)
      for (int cc = 0; cc < m; ++cc) sub(r, cc) = f.columns(idx[r] - 1, cc);
    for (int r = 0; r < m; ++r) {
      for (int s = 0; s < m; ++s) {
        if (m == 1) {
          grad(idx[r] - 1, s) += coef;
          continue;
        }
        int mi = 0;
        for (int i = 0; i < m; ++i) {
          if (i == r) continue;
          int mj = 0;
          for (int j = 0; j < m; ++j) {
            if (j == s) continue;
            minor(mi, mj) = sub(i, j);
            ++mj;
          }
          ++mi;
        }
        double det = 0.0;
        {
          // Reuse the small pivoted elimination.
          MatD t = minor;
          det = 1.0;
          const int q = m - 1;
          for (int col = 0; col < q; ++col) {
            int p = col;
            for (int i = col + 1; i < q; ++i)
              if (std::abs(t(i, col)) > std::abs(t(p, col))) p = i;
            if (t(p, col) == 0.0) {
              det = 0.0;
              break;
            }
            if (p != col) {
              for (int j = 0; j < q; ++j) std::swap(t(p, j), t(col, j));
              det = -det;
            }
            det *= t(col, col);
            for (int i = col + 1; i < q; ++i) {
              const double fac = t(i, col) / t(col, col);
              for (int j = col; j < q; ++j) t(i, j) -= fac * t(col, j);
            }
          }
        }
        const double sign = ((r + s) % 2 == 0) ? 1.0 : -1.0;
        grad(idx[r] - 1, s) += coef * sign * det;
      }
    }
  }
  return grad;
}

Frame retract(const Frame& f, const MatD& step) {
  Frame g = f;
  for (int i = 0; i < f.n; ++i)
    for (int j = 0; j < f.m; ++j) g.columns(i, j) += step(i, j);
  // Re-orthonormalize (modified Gram-Schmidt, positive diagonal).
  for (int c = 0; c < g.m; ++c) {
    for (int p = 0; p < c; ++p) {
      double dot = 0.0;
      for (int i = 0; i < g.n; ++i) dot += g.columns(i, p) * g.columns(i, c);
      for (int i = 0; i < g.n; ++i) g.columns(i, c) -= dot * g.columns(i, p);
    }
    double norm = 0.0;
    for (int i = 0; i < g.n; ++i) norm += g.columns(i, c) * g.columns(i, c);
    norm = std::sqrt(norm);
    for (int i = 0; i < g.n; ++i) g.columns(i, c) /= norm;
  }
  return g;
}

/// Single ascent run; returns the best objective value found. Stops when the
/// line search cannot improve at any step (improvement below float noise).
double ascend(const MultiVector& c, Frame f) {
  double value = c.dot(pluecker(f));
  double step = 0.5;
  for (int iter = 0; iter < 2000; ++iter) {
    const MatD g = euclidean_gradient(c, f);
    // Tangent projection on the Stiefel manifold: G - F sym(F^T G).
    MatD ftg(f.m, f.m);
    for (int a = 0; a < f.m; ++a)
      for (int b = 0; b < f.m; ++b) {
        double s = 0.0;
        for (int i = 0; i < f.n; ++i) s += f.columns(i, a) * g(i, b);
        ftg(a, b) = s;
      }
    MatD tangent = g;
    for (int i = 0; i < f.n; ++i)
      for (int j = 0; j < f.m; ++j) {
        double s = 0.0;
        for (int a = 0; a < f.m; ++a) s += f.columns(i, a) * 0.5 * (ftg(a, j) + ftg(j, a));
        tangent(i, j) -= s;
      }
    double gn = 0.0;
    for (int i = 0; i < f.n; ++i)
      for (int j = 0; j < f.m; ++j) gn += tangent(i, j) * tangent(i, j);
    if (gn < 1e-30) break;

    double ls = step;
    bool success = false;
    while (ls > 1e-16) {
      MatD scaled = tangent;
      for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.m; ++j) scaled(i, j) *= ls;
      const Frame cand = retract(f, scaled);
      const double cv = c.dot(pluecker(cand));
      if (cv > value) {
        f = cand;
        value = cv;
        success = true;
        break;
      }
      ls *= 0.5;
    }
    if (!success) break;
    step = std::min(ls * 2.0, 4.0);
  }
  return value;
}

}  // namespace

ComassEstimate comass(const MultiVector& c, int k, int restarts, long mc_samples, RngSeed seed) {
  if (k < 1) throw std::invalid_argument("comass: k < 1");
  if (restarts < 1) throw std::invalid_argument("comass: restarts < 1");
  if (mc_samples < 1000) throw std::invalid_argument("comass: mc_samples < 1000");

  std::function<double(std::uint64_t)> run = [&](std::uint64_t r) {
    Rng rng = derive_rng(seed, 1000 + r);
    return ascend(c, sample_grassmann(c.n(), c.m(), rng));
  };
  const auto values = map_blocks<double>(restarts, run);

  ComassEstimate est;
  est.lower = *std::max_element(values.begin(), values.end());
  est.k_used = k;
  est.restarts = restarts;
  est.mc_samples = mc_samples;
  est.seed = seed;
  const auto [norm, norm_se] = grassmann_norm_2k(c, k, mc_samples, derive_seed(seed, 7));
  est.norm_2k = norm;
  est.norm_2k_std_err = norm_se;
  const double dk_root = std::pow(d_k_rect(c.m(), c.n(), k).to_double(), 1.0 / (2.0 * k));
  est.upper = dk_root * norm;
  est.upper_std_err = dk_root * norm_se;
  return est;
}

nlohmann::json LongCalibrationReport::to_json() const {
  return {{"n", n},
          {"m", m},
          {"pool", pool},
          {"k", k},
          {"seed", seed.value},
          {"achieved_length_sq", achieved_length_sq},
          {"upper_bound_used", upper_bound_used},
          {"ratio_vs_ceiling", ratio_vs_ceiling},
          {"ratio_vs_paper_rate", ratio_vs_paper_rate},
          {"kaehler_length_sq", kaehler_length_sq},
          {"numeric_rank_found", numeric_rank_found}};
}

std::pair<MultiVector, LongCalibrationReport> long_calibration(int n, int m, int pool, int k,
                                                               RngSeed seed) {
  if (pool < 10) throw std::invalid_argument("long_calibration: pool < 10");
  const auto sets = index_sets(n, m);
  const int dim = static_cast<int>(sets.size());

  MultiVector best;
  double best_upper = 0.0;
  SymD coord_moment(dim);
  for (int p = 0; p < pool; ++p) {
    Rng rng = derive_rng(seed, p);
    const auto dir = rng.unit_sphere(dim);
    MultiVector c(n, m);
    for (int i = 0; i < dim; ++i) c.set(sets[i], dir[i]);
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) coord_moment.at(i, j) += dir[i] * dir[j];

    const auto [norm, se] = grassmann_norm_2k(c, k, 20000, derive_seed(seed, 100000 + p));
    (void)se;
    const double upper = std::pow(d_k_rect(m, n, k).to_double(), 1.0 / (2.0 * k)) * norm;
    if (best.coords().empty() || upper < best_upper) {
      best = c;
      best_upper = upper;
    }
  }
  best *= 1.0 / best_upper;

  LongCalibrationReport rep;
  rep.n = n;
  rep.m = m;
  rep.pool = pool;
  rep.k = k;
  rep.seed = seed;
  rep.achieved_length_sq = best.norm_sq();
  rep.upper_bound_used = best_upper;
  const double ceiling = binomial(n, m).to_double();
  rep.ratio_vs_ceiling = rep.achieved_length_sq / ceiling;
  rep.ratio_vs_paper_rate = rep.achieved_length_sq / (ceiling / (n * m * std::log(m + 1.0)));
  if (n % 2 == 0 && m % 2 == 0) rep.kaehler_length_sq = binomial(n / 2, m / 2).to_double();
  // The ambient space is treated as the affine hull; report any rank
  // deficiency seen in the sampled directions rather than assuming it.
  const auto eig = sym_eig(coord_moment);
  int rank = 0;
  for (double v : eig.values)
    if (v > 1e-10 * eig.values[0]) ++rank;
  rep.numeric_rank_found = rank;
  return {std::move(best), std::move(rep)};
}

}  // namespace orbitope
