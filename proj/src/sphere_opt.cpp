#include "orbitope/sphere_opt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orbitope {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;
}  // namespace

void for_each_sphere_grid_point(int n, long points, const std::function<void(const double*)>& fn) {
  if (points < 8) points = 8;
  if (n == 2) {
    double x[2];
    for (long i = 0; i < points; ++i) {
      const double a = kTwoPi * i / points;
      x[0] = std::cos(a);
      x[1] = std::sin(a);
      fn(x);
    }
    return;
  }
  if (n == 3) {
    // Fibonacci lattice.
    const double golden = 0.6180339887498948482;
    double x[3];
    for (long i = 0; i < points; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / points;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = kTwoPi * std::fmod(i * golden, 1.0);
      x[0] = r * std::cos(a);
      x[1] = r * std::sin(a);
      x[2] = z;
      fn(x);
    }
    return;
  }
  if (n == 4) {
    // Product grid in spherical coordinates (theta1, theta2 polar, theta3 azimuthal).
    const long side = std::max<long>(6, std::lround(std::cbrt(static_cast<double>(points))));
    double x[4];
    for (long a = 0; a < side; ++a) {
      const double t1 = kPi * (a + 0.5) / side;
      const double c1 = std::cos(t1), s1 = std::sin(t1);
      for (long b = 0; b < side; ++b) {
        const double t2 = kPi * (b + 0.5) / side;
        const double c2 = std::cos(t2), s2 = std::sin(t2);
        for (long c = 0; c < side; ++c) {
          const double t3 = kTwoPi * c / side;
          x[0] = c1;
          x[1] = s1 * c2;
          x[2] = s1 * s2 * std::cos(t3);
          x[3] = s1 * s2 * std::sin(t3);
          fn(x);
        }
      }
    }
    return;
  }
  throw std::invalid_argument("sphere grid: only n in {2, 3, 4} supported");
}

namespace {

struct Best {
  std::vector<std::vector<double>> points;  // best-first, up to `keep`
  std::vector<double> values;
  size_t keep;

  explicit Best(size_t k) : keep(k) {}

  void offer(const double* x, int n, double v) {
    if (values.size() < keep || v > values.back()) {
      size_t pos = values.size();
      while (pos > 0 && values[pos - 1] < v) --pos;
      values.insert(values.begin() + pos, v);
      points.insert(points.begin() + pos, std::vector<double>(x, x + n));
      if (values.size() > keep) {
        values.pop_back();
        points.pop_back();
      }
    }
  }
};

/// Projected-gradient ascent of f on the sphere from x0. The gradient is
/// finite-difference-free: callers pass an analytic gradient.
double ascend_from(const CompiledPoly& p, double sign, std::vector<double> x,
                   const SphereOptOptions& opt) {
  const int n = p.n;
  // Analytic gradient of the polynomial via per-variable differentiation of
  // each term, evaluated directly.
  auto grad_at = [&](const std::vector<double>& pt, std::vector<double>& g) {
    std::fill(g.begin(), g.end(), 0.0);
    const int* ep = p.exps.data();
    for (size_t t = 0; t < p.coef.size(); ++t, ep += n) {
      for (int d = 0; d < n; ++d) {
        if (ep[d] == 0) continue;
        double v = p.coef[t] * ep[d];
        for (int i = 0; i < n; ++i) {
          const int e = (i == d) ? ep[i] - 1 : ep[i];
          for (int rep = 0; rep < e; ++rep) v *= pt[i];
        }
        g[d] += v;
      }
    }
  };

  double value = sign * p.eval(x.data());
  double step = opt.step_init;
  std::vector<double> g(n), cand(n);
  for (int it = 0; it < opt.refine_iters; ++it) {
    grad_at(x, g);
    double xg = 0.0;
    for (int i = 0; i < n; ++i) xg += x[i] * g[i];
    double gn = 0.0;
    for (int i = 0; i < n; ++i) {
      g[i] = sign * (g[i] - xg * x[i]);  // tangent component
      gn += g[i] * g[i];
    }
    if (gn < 1e-26) break;
    bool moved = false;
    while (step > 1e-13) {
      double norm = 0.0;
      for (int i = 0; i < n; ++i) {
        cand[i] = x[i] + step * g[i];
        norm += cand[i] * cand[i];
      }
      norm = std::sqrt(norm);
      for (int i = 0; i < n; ++i) cand[i] /= norm;
      const double cv = sign * p.eval(cand.data());
      if (cv > value) {
        moved = cv - value > 1e-14;
        x = cand;
        value = cv;
        step = std::min(step * 2.0, 1.0);
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return value;
}

double optimize(const CompiledPoly& p, double sign, bool absolute, const SphereOptOptions& opt) {
  Best best(std::max(1, opt.refine_starts));
  for_each_sphere_grid_point(p.n, opt.grid_points, [&](const double* x) {
    const double v = p.eval(x);
    best.offer(x, p.n, absolute ? std::abs(v) : sign * v);
  });
  double out = best.values.empty() ? 0.0 : best.values.front();
  for (const auto& x0 : best.points) {
    if (absolute) {
      const double raw = p.eval(x0.data());
      out = std::max(out, ascend_from(p, raw >= 0 ? 1.0 : -1.0, x0, opt));
    } else {
      out = std::max(out, ascend_from(p, sign, x0, opt));
    }
  }
  return out;
}

}  // namespace

double sphere_max(const CompiledPoly& p, const SphereOptOptions& opt) {
  return optimize(p, 1.0, false, opt);
}

double sphere_min(const CompiledPoly& p, const SphereOptOptions& opt) {
  return -optimize(p, -1.0, false, opt);
}

double sphere_sup_norm(const CompiledPoly& p, const SphereOptOptions& opt) {
  return optimize(p, 1.0, true, opt);
}

}  // namespace orbitope
