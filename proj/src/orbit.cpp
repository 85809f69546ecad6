#include "orbitope/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace orbitope {

SymQ SparseAction::conjugate(const SymQ& m) const {
  // Rows of A as sparse lists.
  std::vector<std::vector<std::pair<int, Rat>>> rows(dim_);
  for (const auto& e : entries_) rows[e.row].push_back({e.col, e.value});
  SymQ out(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j) {
      Rat s;
      for (const auto& [ci, vi] : rows[i])
        for (const auto& [cj, vj] : rows[j]) s += vi * vj * m.at(ci, cj);
      out.at(i, j) = s;
    }
  return out;
}

namespace {

SecondMoment finite_second_moment(const OrbitSpec& spec, const FiniteGroup& g) {
  if (g.elements.size() > 10000000u)
    throw std::runtime_error("orbit_second_moment: finite group larger than 1e7 elements");
  if (!spec.base_point_exact)
    throw std::invalid_argument("orbit_second_moment: finite path needs an exact base point");
  const int n = spec.ambient_dim;
  const auto& v = *spec.base_point_exact;
  if (static_cast<int>(v.size()) != n) throw std::invalid_argument("orbit_second_moment: base point size");

  // Accumulate uncentered sums over the nonzero support of each gv, then
  // center via avg((gv-c)(gv-c)^T) = avg(gv gv^T) - c c^T.
  SymQ sum(n);
  std::vector<Rat> csum(n);
  std::vector<int> support;
  support.reserve(n);
  for (const auto& a : g.elements) {
    const auto y = a.apply(v);
    support.clear();
    for (int i = 0; i < n; ++i)
      if (!y[i].is_zero()) support.push_back(i);
    for (size_t p = 0; p < support.size(); ++p) {
      const int i = support[p];
      csum[i] += y[i];
      for (size_t q = p; q < support.size(); ++q) {
        const int j = support[q];
        sum.at(i, j) += y[i] * y[j];
      }
    }
  }
  const Rat inv_order(Int(1), Int(static_cast<long>(g.elements.size())));
  SecondMoment out;
  out.exact = true;
  out.center_exact.assign(n, Rat(0));
  if (spec.center_mode == CenterMode::AutoCenter)
    for (int i = 0; i < n; ++i) out.center_exact[i] = csum[i] * inv_order;
  out.m_exact = SymQ(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      out.m_exact.at(i, j) = sum.at(i, j) * inv_order - out.center_exact[i] * out.center_exact[j];
  out.m = to_double(out.m_exact);
  out.std_err = SymD(n);
  out.center = to_double(out.center_exact);
  out.samples_used = static_cast<long>(g.elements.size());
  return out;
}

SecondMoment compact_second_moment(const OrbitSpec& spec, const CompactGroup& g, long samples,
                                   RngSeed seed) {
  if (samples < 1000) throw std::invalid_argument("orbit_second_moment: compact path needs samples >= 1000");
  const int n = spec.ambient_dim;
  SymD sum(n), sum_sq(n);
  std::vector<double> csum(n, 0.0);
  Rng rng(seed);
  for (long s = 0; s < samples; ++s) {
    const MatD a = g.haar_draw(rng);
    const auto y = a.apply(spec.base_point);
    for (int i = 0; i < n; ++i) {
      csum[i] += y[i];
      for (int j = i; j < n; ++j) {
        const double t = y[i] * y[j];
        sum.at(i, j) += t;
        sum_sq.at(i, j) += t * t;
      }
    }
  }
  SecondMoment out;
  out.exact = false;
  out.center.assign(n, 0.0);
  if (spec.center_mode == CenterMode::AutoCenter)
    for (int i = 0; i < n; ++i) out.center[i] = csum[i] / samples;
  out.m = SymD(n);
  out.std_err = SymD(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double mean = sum.at(i, j) / samples;
      out.m.at(i, j) = mean - out.center[i] * out.center[j];
      const double var = std::max(0.0, sum_sq.at(i, j) / samples - mean * mean);
      out.std_err.at(i, j) = std::sqrt(var / samples);
    }
  out.samples_used = samples;
  return out;
}

/// Clusters a descending spectrum by relative gap. Returns cluster extents
/// [begin, end). Gaps within a factor 4 of the threshold are ambiguous.
std::vector<std::pair<int, int>> cluster_spectrum(const std::vector<double>& ev, int hull_dim,
                                                  double gap_tol) {
  std::vector<std::pair<int, int>> clusters;
  const double top = ev.empty() ? 0.0 : std::abs(ev[0]);
  int begin = 0;
  for (int i = 0; i + 1 < hull_dim; ++i) {
    const double gap = ev[i] - ev[i + 1];
    const double threshold = gap_tol * (top > 0 ? top : 1.0);
    if (gap > threshold / 4.0 && gap < threshold * 4.0) {
      std::ostringstream msg;
      msg << "min_volume_ellipsoid: eigenvalue gap " << gap << " straddles tolerance " << threshold
          << "; spectrum:";
      for (int j = 0; j < hull_dim; ++j) msg << " " << ev[j];
      throw std::runtime_error(msg.str());
    }
    if (gap >= threshold) {
      clusters.push_back({begin, i + 1});
      begin = i + 1;
    }
  }
  if (hull_dim > 0) clusters.push_back({begin, hull_dim});
  return clusters;
}

}  // namespace

SecondMoment orbit_second_moment(const OrbitSpec& spec, long samples, RngSeed seed) {
  if (const auto* fin = std::get_if<FiniteGroup>(&spec.group)) return finite_second_moment(spec, *fin);
  return compact_second_moment(spec, std::get<CompactGroup>(spec.group), samples, seed);
}

std::pair<EllipsoidPair, DecompositionReport> min_volume_ellipsoid(const OrbitSpec& spec,
                                                                   const SecondMoment& moment,
                                                                   double eig_gap_tol) {
  const int n = spec.ambient_dim;
  const EigResult eig = sym_eig(moment.m);

  double trace = 0.0;
  for (double l : eig.values) trace += std::max(l, 0.0);
  const double kernel_tol = 1e-12 * (trace > 0 ? trace : 1.0);
  int hull_dim = 0;
  while (hull_dim < n && eig.values[hull_dim] > kernel_tol) ++hull_dim;
  if (hull_dim == 0) throw std::runtime_error("min_volume_ellipsoid: zero second moment (orbit does not span)");

  DecompositionReport report;
  report.hull_dim = hull_dim;
  report.spectrum.assign(eig.values.begin(), eig.values.begin() + hull_dim);

  const auto clusters = cluster_spectrum(eig.values, hull_dim, eig_gap_tol);

  // Centered base point in float.
  std::vector<double> v0(n);
  for (int i = 0; i < n; ++i) v0[i] = spec.base_point[i] - moment.center[i];

  SymD form_d(n);
  for (const auto& [b, e] : clusters) {
    const int dim_i = e - b;
    double lambda = 0.0;
    for (int c = b; c < e; ++c) lambda += eig.values[c];
    lambda /= dim_i;

    MatD proj(n, n);
    for (int c = b; c < e; ++c)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) proj(i, j) += eig.vectors(i, c) * eig.vectors(j, c);

    double vnorm = 0.0;
    for (int i = 0; i < n; ++i) {
      double pi = 0.0;
      for (int j = 0; j < n; ++j) pi += proj(i, j) * v0[j];
      vnorm += pi * pi;
    }
    const double vi_sq = lambda * dim_i;  // <v_i, v_i> per the second-moment identity
    if (vnorm < 1e-12 * vi_sq || vi_sq <= 0)
      throw std::runtime_error("min_volume_ellipsoid: zero component norm (orbit does not span)");

    report.component_dims.push_back(dim_i);
    report.lambdas.push_back(lambda);
    report.v_component_norms.push_back(vnorm);
    report.component_projections.push_back(proj);
    if (dim_i > 1) report.components_may_be_merged = true;

    // Sum of P_i / lambda_i is the pseudo-inverse restricted to the hull.
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) form_d.at(i, j) += proj(i, j) / lambda;
  }

  EllipsoidPair pair;
  pair.approx = Ellipsoid<double>{moment.center, form_d, static_cast<double>(hull_dim)};

  if (moment.exact) {
    const SymQ pinv = pseudo_inverse_rat(moment.m_exact);
    const int rank = rank_rat(moment.m_exact.full());
    if (rank != hull_dim)
      throw std::runtime_error("min_volume_ellipsoid: exact rank disagrees with float hull dimension");
    pair.exact = Ellipsoid<Rat>{moment.center_exact, pinv, Rat(rank)};
  }
  return {std::move(pair), std::move(report)};
}

EllipsoidPair max_volume_ellipsoid_polar(const OrbitSpec& spec, const SecondMoment& moment) {
  (void)spec;
  const EigResult eig = sym_eig(moment.m);
  double trace = 0.0;
  for (double l : eig.values) trace += std::max(l, 0.0);
  const double kernel_tol = 1e-12 * (trace > 0 ? trace : 1.0);
  int hull_dim = 0;
  while (hull_dim < moment.m.dim() && eig.values[hull_dim] > kernel_tol) ++hull_dim;
  if (hull_dim == 0) throw std::runtime_error("max_volume_ellipsoid_polar: zero second moment");

  EllipsoidPair pair;
  pair.approx = Ellipsoid<double>{std::vector<double>(moment.m.dim(), 0.0), moment.m, 1.0 / hull_dim};
  if (moment.exact) {
    const int rank = rank_rat(moment.m_exact.full());
    if (rank != hull_dim)
      throw std::runtime_error("max_volume_ellipsoid_polar: exact rank disagrees with float hull dimension");
    pair.exact = Ellipsoid<Rat>{std::vector<Rat>(moment.m_exact.dim(), Rat(0)), moment.m_exact,
                                Rat(Int(1), Int(rank))};
  }
  return pair;
}

MatD haar_so(int n, Rng& rng) {
  MatD a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.next_gaussian();

  // Determinant sign of the Gaussian matrix. QR with positive R-diagonal
  // preserves it, so this is the sign of det(Q).
  double det_sign = 1.0;
  {
    MatD lu = a;
    for (int c = 0; c < n; ++c) {
      int p = c;
      for (int i = c + 1; i < n; ++i)
        if (std::abs(lu(i, c)) > std::abs(lu(p, c))) p = i;
      if (std::abs(lu(p, c)) < 1e-300) {
        det_sign = 1.0;
        break;
      }
      if (p != c) {
        for (int j = 0; j < n; ++j) std::swap(lu(p, j), lu(c, j));
        det_sign = -det_sign;
      }
      if (lu(c, c) < 0) det_sign = -det_sign;
      for (int i = c + 1; i < n; ++i) {
        const double f = lu(i, c) / lu(c, c);
        for (int j = c; j < n; ++j) lu(i, j) -= f * lu(c, j);
      }
    }
  }

  // Modified Gram-Schmidt, diagonal of the triangular factor kept positive.
  for (int c = 0; c < n; ++c) {
    for (int p = 0; p < c; ++p) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += a(i, p) * a(i, c);
      for (int i = 0; i < n; ++i) a(i, c) -= dot * a(i, p);
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += a(i, c) * a(i, c);
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) a(i, c) /= norm;
  }

  if (det_sign < 0)
    for (int i = 0; i < n; ++i) a(i, n - 1) = -a(i, n - 1);
  return a;
}

}  // namespace orbitope
