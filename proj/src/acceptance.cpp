#include "orbitope/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "orbitope/comass.hpp"
#include "orbitope/norms.hpp"
#include "orbitope/orbit.hpp"
#include "orbitope/pos.hpp"
#include "orbitope/report.hpp"
#include "orbitope/tsp.hpp"
#include "orbitope/util.hpp"

namespace orbitope {

namespace {

struct SuiteParams {
  std::vector<int> tsp_ns;
  long grassmann_samples;
  long comass_mc;
  int sandwich_polys;
  long sandwich_grid;
  int lemma_cs;
  long lemma_x_samples;
  long pos_ball_samples;
  long volume_samples;
  long moment_mc;
};

SuiteParams params_for(AcceptanceSuite suite) {
  if (suite == AcceptanceSuite::Full)
    return {{5, 6, 7}, 100000, 200000, 100, 200000, 500, 20000, 1000, 10000, 10000000};
  return {{5, 6}, 20000, 20000, 25, 20000, 200, 4000, 400, 2000, 1000000};
}

class Runner {
 public:
  Runner(std::ostream& log) : log_(log) {}

  void run(const std::string& id, const std::string& title,
           const std::function<void(nlohmann::json&)>& body) {
    nlohmann::json detail;
    bool pass = true;
    std::string error;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(detail);
    } catch (const std::exception& e) {
      pass = false;
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    log_ << (pass ? "[PASS] " : "[FAIL] ") << id << " " << title;
    if (!pass) log_ << " -- " << error;
    log_ << "  (" << std::fixed << secs << "s)\n";
    log_.unsetf(std::ios::fixed);
    nlohmann::json entry;
    entry["id"] = id;
    entry["title"] = title;
    entry["pass"] = pass;
    if (!error.empty()) entry["error"] = error;
    entry["detail"] = std::move(detail);
    results_.push_back(std::move(entry));
    all_pass_ = all_pass_ && pass;
  }

  bool all_pass() const { return all_pass_; }
  nlohmann::json results() const { return results_; }

 private:
  std::ostream& log_;
  nlohmann::json results_ = nlohmann::json::array();
  bool all_pass_ = true;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

template <class T>
std::string str_of(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// ---- criterion bodies ------------------------------------------------------

void stn_exact_ellipsoid(const SuiteParams& p, nlohmann::json& detail) {
  for (int n : p.tsp_ns) {
    const OrbitSpec spec = stn_orbit_spec(n);
    const SecondMoment mom = orbit_second_moment(spec, 0, RngSeed{0});
    const auto [ell, report] = min_volume_ellipsoid(spec, mom);
    require(ell.exact.has_value(), "missing exact ellipsoid");
    const StnReport closed = stn_closed_forms(n);

    require(report.hull_dim == closed.dim, "hull dim != (n^2-3n)/2 at n=" + std::to_string(n));
    // Single nonzero eigenvalue on the hull => R^2 = trace(M) exactly.
    const Rat r_sq = mom.m_exact.trace();
    require(r_sq == closed.r_min_sq, "R^2 mismatch at n=" + std::to_string(n) + ": got " + r_sq.str());
    // Ball shape: M * dim == R^2 * P_hull, entrywise exact.
    const SymQ proj = range_projector_rat(mom.m_exact);
    for (int i = 0; i < mom.m_exact.dim(); ++i)
      for (int j = i; j < mom.m_exact.dim(); ++j)
        require(mom.m_exact.at(i, j) * Rat(closed.dim) == r_sq * proj.at(i, j),
                "E_min is not a ball at n=" + std::to_string(n));
    // Every tour vertex sits exactly on the boundary.
    for (const auto& v : enumerate_tours(n, true))
      require(ellipsoid_eval(*ell.exact, v.flatten()).is_zero(),
              "vertex off the E_min boundary at n=" + std::to_string(n));
    detail["n" + std::to_string(n)] = {{"r_min_sq", r_sq.str()}, {"dim", report.hull_dim}};
  }
}

void stn_inscribed_ball(const SuiteParams& p, nlohmann::json& detail) {
  for (int n : p.tsp_ns) {
    const StnReport r = stn_closed_forms(n);
    require(r.deep_point.has_value() && r.r_max_sq.has_value() && r.sym_coeff.has_value(),
            "partial report at n >= 5");
    // |b - c|^2 exactly 8/((n-1)(n-3)).
    Rat dist_sq;
    for (size_t i = 0; i < r.center.size(); ++i) {
      const Rat d = (*r.deep_point)[i] - r.center[i];
      dist_sq += d * d;
    }
    require(dist_sq == *r.r_max_sq, "|b-c|^2 mismatch at n=" + std::to_string(n));

    // -lambda (v - c) + c lies in the face F_v, certified by exact weights.
    const auto tours = enumerate_tours(n, true);
    const TourMatrix& v = tours.front();
    const auto face = face_vertices(v, tours);
    require(!face.empty(), "empty face F_v");
    const Rat lambda = *r.sym_coeff;
    std::vector<Rat> target(r.center.size());
    const auto vf = v.flatten();
    for (size_t i = 0; i < target.size(); ++i)
      target[i] = -lambda * (vf[i] - r.center[i]) + r.center[i];
    const LpFeasibility lp = hull_membership(face, target);
    require(lp.feasible, "deep point not certified in F_v at n=" + std::to_string(n));
    // Re-verify the certificate independently.
    Rat wsum;
    std::vector<Rat> combo(target.size());
    for (size_t j = 0; j < face.size(); ++j) {
      require(lp.weights[j].sign() >= 0, "negative weight");
      wsum += lp.weights[j];
      const auto col = face[j].flatten();
      for (size_t i = 0; i < combo.size(); ++i) combo[i] += lp.weights[j] * col[i];
    }
    require(wsum == Rat(1), "weights do not sum to 1");
    for (size_t i = 0; i < combo.size(); ++i) require(combo[i] == target[i], "combination mismatch");
    detail["n" + std::to_string(n)] = {{"face_vertices", face.size()},
                                       {"r_max_sq", r.r_max_sq->str()},
                                       {"sym_coeff", r.sym_coeff->str()}};
  }
}

void atn_boundary(const SuiteParams& p, nlohmann::json& detail) {
  for (int n : p.tsp_ns) {
    const auto tours = enumerate_tours(n, false);
    for (const auto& x : tours)
      require(atn_ellipsoid_residual(n, x).is_zero(), "nonzero residual at n=" + std::to_string(n));
    // Relaxed mode at the center: both sums vanish.
    const Rat at_center = atn_ellipsoid_residual_at(n, atn_center(n));
    require(at_center == -Rat(static_cast<long>(n) * n - 3L * n + 1), "center residual mismatch");
    detail["n" + std::to_string(n)] = {{"vertices", tours.size()}};
  }
}

void grassmann_moments(const SuiteParams& p, RngSeed seed, nlohmann::json& detail) {
  const int n = 5, m = 2;
  OrbitSpec spec;
  spec.center_mode = CenterMode::PreCentered;
  const auto sets = index_sets(n, m);
  spec.ambient_dim = static_cast<int>(sets.size());
  spec.base_point.assign(spec.ambient_dim, 0.0);
  spec.base_point[0] = 1.0;  // e_1 ^ e_2
  CompactGroup g;
  g.haar_draw = [n, m](Rng& rng) { return exterior_power_matrix(haar_so(n, rng), m); };
  spec.group = std::move(g);

  const SecondMoment mom = orbit_second_moment(spec, p.grassmann_samples, seed);
  const double target = 1.0 / binomial(n, m).to_double();
  double worst_pull = 0.0;
  for (int i = 0; i < spec.ambient_dim; ++i)
    for (int j = i; j < spec.ambient_dim; ++j) {
      const double want = (i == j) ? target : 0.0;
      const double se = std::max(mom.std_err.at(i, j), 1e-15);
      const double pull = std::abs(mom.m.at(i, j) - want) / se;
      worst_pull = std::max(worst_pull, pull);
      require(pull <= 3.0, "second moment entry (" + std::to_string(i) + "," + std::to_string(j) +
                               ") off by " + str_of(pull) + " sigma");
    }
  detail = {{"samples", mom.samples_used}, {"target", target}, {"worst_pull_sigma", worst_pull}};
}

void calibration_comass(const SuiteParams& p, RngSeed seed, nlohmann::json& detail) {
  struct Case {
    std::string name;
    MultiVector c;
  };
  const std::vector<Case> cases = {{"kaehler_1_2", kaehler_power(1, 2)},
                                   {"kaehler_1_3", kaehler_power(1, 3)},
                                   {"special_lagrangian_2", special_lagrangian(2)}};
  int idx = 0;
  for (const auto& cs : cases) {
    const int k = default_comass_k(cs.c.n(), cs.c.m());
    const ComassEstimate est = comass(cs.c, k, 64, p.comass_mc, derive_seed(seed, idx++));
    require(std::abs(est.lower - 1.0) <= 1e-6,
            cs.name + ": comass lower bound " + str_of(est.lower) + " not within 1e-6 of 1");
    require(est.upper >= 1.0, cs.name + ": sandwich upper bound " + str_of(est.upper) + " < 1");
    detail[cs.name] = {{"lower", est.lower}, {"upper", est.upper}, {"k", k}};
  }
}

void dk_formula(const SuiteParams&, RngSeed seed, nlohmann::json& detail) {
  // Integrality over the grid (d_k_rect asserts internally) plus the closed
  // special cases.
  for (int m = 1; m <= 5; ++m)
    for (int n = m; n <= 8; ++n)
      for (int k = 1; k <= 6; ++k) {
        const Int d = d_k_rect(m, n, k);
        if (m == 1) require(d == binomial(n + k - 1, k), "d_k != C(n+k-1,k) at m=1");
        if (m == 2 && k == 1) require(d == binomial(n, 2), "d_1 != C(n,2) at m=2");
      }
  require(d_k_rect(2, 4, 2) == Int(20), "d_2(2,4) != 20");

  // Numerical orbit-span rank at (m,n,k) = (2,4,2): Gram matrix of 500
  // sampled (gv)^{(x)2}, thresholded SVD rank.
  const int samples = 500;
  Rng rng(derive_seed(seed, 99));
  std::vector<std::vector<double>> ys;
  ys.reserve(samples);
  for (int s = 0; s < samples; ++s) {
    const MultiVector mv = pluecker(sample_grassmann(4, 2, rng));
    std::vector<double> y6(6, 0.0);
    const auto sets = index_sets(4, 2);
    for (int i = 0; i < 6; ++i) y6[i] = mv.get(sets[i]);
    std::vector<double> z(36);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) z[i * 6 + j] = y6[i] * y6[j];
    ys.push_back(std::move(z));
  }
  SymD gram(samples);
  for (int a = 0; a < samples; ++a)
    for (int b = a; b < samples; ++b) {
      double s = 0.0;
      for (int i = 0; i < 36; ++i) s += ys[a][i] * ys[b][i];
      gram.at(a, b) = s;
    }
  const EigResult eig = sym_eig(gram);
  int rank = 0;
  for (double v : eig.values)
    if (v > 1e-10 * eig.values[0]) ++rank;
  require(rank == 20, "orbit-span rank " + std::to_string(rank) + " != d_2 = 20");
  detail = {{"rank_at_2_4_2", rank}};
}

void sandwich_bounds(const SuiteParams& p, RngSeed seed, nlohmann::json& detail) {
  const int n = 3, m = 4;
  const auto monos = monomials_of_degree(n, m);
  Rng rng(derive_seed(seed, 7));
  SphereOptOptions opt;
  opt.grid_points = p.sandwich_grid;
  double worst_low = 1e9, worst_high = -1e9;
  for (int t = 0; t < p.sandwich_polys; ++t) {
    HomPoly poly(n, m);
    for (const auto& a : monos) poly.add_term(a, rng.next_gaussian());
    const double sup = sphere_sup_norm(CompiledPoly::from(poly), opt);
    for (int k = 1; k <= 4; ++k) {
      const SandwichBound b = sphere_sandwich(poly, k, false, SandwichMethod::Exact);
      require(sup >= b.lower - 1e-9, "grid sup below lower bound (poly " + std::to_string(t) +
                                         ", k=" + std::to_string(k) + ")");
      require(sup <= b.upper + 1e-6, "grid sup above upper bound (poly " + std::to_string(t) +
                                         ", k=" + std::to_string(k) + ")");
      worst_low = std::min(worst_low, sup - b.lower);
      worst_high = std::max(worst_high, sup - b.upper);
    }
  }
  detail = {{"polys", p.sandwich_polys}, {"min_sup_minus_lower", worst_low},
            {"max_sup_minus_upper", worst_high}};
}

void lemma_expectation(const SuiteParams& p, RngSeed seed, nlohmann::json& detail) {
  const int n = 5, m = 2, k = 2;
  const auto sets = index_sets(n, m);
  const int d = static_cast<int>(sets.size());  // 10

  // Shared Grassmannian sample pool.
  std::vector<std::vector<double>> xs;
  xs.reserve(p.lemma_x_samples);
  Rng xrng(derive_seed(seed, 1));
  for (long s = 0; s < p.lemma_x_samples; ++s) {
    const MultiVector mv = pluecker(sample_grassmann(n, m, xrng));
    std::vector<double> x(d);
    for (int i = 0; i < d; ++i) x[i] = mv.get(sets[i]);
    xs.push_back(std::move(x));
  }

  Rng crng(derive_seed(seed, 2));
  double sum = 0.0, sum_sq = 0.0;
  for (int t = 0; t < p.lemma_cs; ++t) {
    const auto c = crng.unit_sphere(d);
    double acc = 0.0;
    for (const auto& x : xs) {
      double dot = 0.0;
      for (int i = 0; i < d; ++i) dot += c[i] * x[i];
      const double d2 = dot * dot;
      acc += d2 * d2;
    }
    const double norm = std::pow(acc / xs.size(), 1.0 / (2.0 * k));
    sum += norm;
    sum_sq += norm * norm;
  }
  const double mean = sum / p.lemma_cs;
  const double se =
      std::sqrt(std::max(0.0, sum_sq / p.lemma_cs - mean * mean) / p.lemma_cs);
  const double bound = expected_norm_bound(d, k, 1.0);
  require(mean <= bound + 3.0 * se, "average L^{2k} norm " + str_of(mean) + " above the sqrt(2k/d) bound " +
                                        str_of(bound));
  detail = {{"mean", mean}, {"std_err", se}, {"bound", bound}};
}

void pos_inscribed_ball(const SuiteParams& p, RngSeed seed, nlohmann::json& detail) {
  const int n = 3, k = 1;
  const PosBallReport ball = pos_ball_report(n, k);
  const double r_max = std::sqrt(ball.r_max_sq.to_double());
  const PolyBasis basis = orthonormal_basis_U(n, 2 * k);
  const HomPoly r_poly = to_double(radius_power(n, k));

  Rng rng(derive_seed(seed, 3));
  int violations_inflated = 0;
  double min_eig_seen = 1e9;
  for (long s = 0; s < p.pos_ball_samples; ++s) {
    const auto z = rng.unit_sphere(static_cast<int>(basis.size()));
    HomPoly q(n, 2 * k);
    for (size_t j = 0; j < basis.size(); ++j)
      for (const auto& [a, c] : basis.elements[j].terms()) q.add_term(a, z[j] * c);

    HomPoly on_ball = r_poly;
    for (const auto& [a, c] : q.terms()) on_ball.add_term(a, r_max * c);
    const double lam = psd_oracle_quadratic(on_ball);
    min_eig_seen = std::min(min_eig_seen, lam);
    require(lam >= -1e-9, "boundary sample not PSD: lambda_min = " + str_of(lam));

    HomPoly inflated = r_poly;
    for (const auto& [a, c] : q.terms()) inflated.add_term(a, 1.05 * r_max * c);
    if (psd_oracle_quadratic(inflated) < -1e-12) ++violations_inflated;
  }
  require(violations_inflated > 0, "5%-inflated ball produced no non-PSD sample");
  detail = {{"samples", p.pos_ball_samples},
            {"min_lambda_on_ball", min_eig_seen},
            {"inflated_violations", violations_inflated}};
}

void volume_cross_oracle(const SuiteParams& p, RngSeed seed, nlohmann::json& detail) {
  const int n = 3, k = 1;
  const VolumeRatioEstimate main_est = volume_ratio_pos(n, k, p.volume_samples, derive_seed(seed, 4));

  // Independent eigenvalue-oracle MC at a different seed.
  const PolyBasis basis = orthonormal_basis_U(n, 2 * k);
  const int d = static_cast<int>(basis.size());
  Rng rng(derive_seed(seed, 5));
  std::vector<double> vals;
  vals.reserve(p.volume_samples);
  for (long s = 0; s < p.volume_samples; ++s) {
    const auto z = rng.unit_sphere(d);
    HomPoly q(n, 2 * k);
    for (int j = 0; j < d; ++j)
      for (const auto& [a, c] : basis.elements[j].terms()) q.add_term(a, z[j] * c);
    const double lam = psd_oracle_quadratic(q);
    vals.push_back(std::pow(-lam, -static_cast<double>(d)));
  }
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= vals.size();
  const double oracle = std::pow(mean, 1.0 / d);
  // Delta-method error bar for the oracle estimate.
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var /= vals.size() * (vals.size() - 1.0);
  const double oracle_se = std::sqrt(var) * oracle / (d * mean);

  const double diff = std::abs(main_est.estimate - oracle);
  const double tol_rel = 0.05 * 0.5 * (main_est.estimate + oracle);
  const double tol_sigma = 3.0 * std::sqrt(main_est.std_err * main_est.std_err + oracle_se * oracle_se);
  require(diff <= std::max(tol_rel, tol_sigma),
          "estimators disagree: " + str_of(main_est.estimate) + " vs " + str_of(oracle));
  require(main_est.estimate >= 0.2 && oracle >= 0.2, "estimate below the inscribed-ball sanity floor");
  detail = {{"estimate", main_est.estimate},
            {"estimate_se", main_est.std_err},
            {"robust_estimate", main_est.robust_estimate},
            {"oracle", oracle},
            {"oracle_se", oracle_se}};
}

void moment_engine(const SuiteParams& p, RngSeed seed, nlohmann::json& detail) {
  // 20 multi-indices over n = 2..6, degree <= 8, including odd (zero) cases.
  const std::vector<std::pair<int, std::vector<int>>> suite = {
      {2, {2, 0}},       {2, {4, 2}},       {2, {6, 0}},       {2, {3, 1}},
      {3, {2, 0, 0}},    {3, {4, 0, 0}},    {3, {2, 2, 0}},    {3, {4, 2, 2}},
      {3, {8, 0, 0}},    {3, {1, 2, 0}},    {4, {2, 2, 0, 0}}, {4, {4, 4, 0, 0}},
      {4, {2, 2, 2, 2}}, {4, {6, 2, 0, 0}}, {5, {2, 2, 2, 0, 0}}, {5, {4, 2, 0, 0, 0}},
      {5, {1, 1, 1, 1, 0}}, {6, {2, 2, 0, 0, 0, 0}}, {6, {4, 0, 0, 2, 0, 0}},
      {6, {2, 2, 2, 2, 0, 0}}};

  double worst_pull = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  for (size_t t = 0; t < suite.size(); ++t) {
    const int n = suite[t].first;
    const MultiIndex alpha(suite[t].second);
    const Rat exact = monomial_moment(n, alpha);

    const long block_size = 250000;
    const std::uint64_t nblocks = (p.moment_mc + block_size - 1) / block_size;
    struct Acc {
      double sum = 0.0, sum_sq = 0.0;
      long count = 0;
    };
    const RngSeed s0 = derive_seed(seed, 600 + t);
    std::function<Acc(std::uint64_t)> body = [&](std::uint64_t b) {
      Rng rng = derive_rng(s0, b);
      Acc acc;
      const long lo = static_cast<long>(b) * block_size;
      const long hi = std::min(p.moment_mc, lo + block_size);
      for (long i = lo; i < hi; ++i) {
        const auto x = rng.unit_sphere(n);
        double v = 1.0;
        for (int d = 0; d < n; ++d)
          for (int e = 0; e < alpha[d]; ++e) v *= x[d];
        acc.sum += v;
        acc.sum_sq += v * v;
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
    const double mean = sum / count;
    const double se = std::sqrt(std::max(0.0, sum_sq / count - mean * mean) / count);
    const double pull = std::abs(exact.to_double() - mean) / std::max(se, 1e-15);
    worst_pull = std::max(worst_pull, pull);
    require(pull <= 3.0, "moment n=" + std::to_string(n) + " off by " + str_of(pull) + " sigma");
    rows.push_back({{"n", n}, {"exact", exact.str()}, {"mc", mean}, {"pull_sigma", pull}});
  }
  detail = {{"worst_pull_sigma", worst_pull}, {"rows", rows}};
}

nlohmann::json run_impl(AcceptanceSuite suite, RngSeed seed, std::ostream& log, bool* all_passed,
                        bool include_determinism);

void determinism(RngSeed seed, nlohmann::json& detail) {
  std::ostringstream sink1, sink2;
  bool ok1 = false, ok2 = false;
  const nlohmann::json r1 = run_impl(AcceptanceSuite::Fast, seed, sink1, &ok1, false);
  const nlohmann::json r2 = run_impl(AcceptanceSuite::Fast, seed, sink2, &ok2, false);
  const std::string b1 = report_bytes(make_report("verify", {{"suite", "fast"}}, seed, r1));
  const std::string b2 = report_bytes(make_report("verify", {{"suite", "fast"}}, seed, r2));
  require(b1 == b2, "fast-suite reports differ between identical runs");
  detail = {{"bytes", b1.size()}, {"identical", true}};
}

nlohmann::json run_impl(AcceptanceSuite suite, RngSeed seed, std::ostream& log, bool* all_passed,
                        bool include_determinism) {
  const SuiteParams p = params_for(suite);
  Runner r(log);
  r.run("01", "stn-exact-ellipsoid", [&](nlohmann::json& d) { stn_exact_ellipsoid(p, d); });
  r.run("02", "stn-inscribed-ball-and-symmetry", [&](nlohmann::json& d) { stn_inscribed_ball(p, d); });
  r.run("03", "atn-boundary-equality", [&](nlohmann::json& d) { atn_boundary(p, d); });
  r.run("04", "grassmann-second-moments",
        [&](nlohmann::json& d) { grassmann_moments(p, derive_seed(seed, 104), d); });
  r.run("05", "calibration-comass",
        [&](nlohmann::json& d) { calibration_comass(p, derive_seed(seed, 105), d); });
  r.run("06", "dk-formula", [&](nlohmann::json& d) { dk_formula(p, derive_seed(seed, 106), d); });
  r.run("07", "sandwich-bounds", [&](nlohmann::json& d) { sandwich_bounds(p, derive_seed(seed, 107), d); });
  r.run("08", "lemma-expectation",
        [&](nlohmann::json& d) { lemma_expectation(p, derive_seed(seed, 108), d); });
  r.run("09", "pos-inscribed-ball",
        [&](nlohmann::json& d) { pos_inscribed_ball(p, derive_seed(seed, 109), d); });
  r.run("10", "volume-ratio-cross-oracle",
        [&](nlohmann::json& d) { volume_cross_oracle(p, derive_seed(seed, 110), d); });
  r.run("11", "moment-engine", [&](nlohmann::json& d) { moment_engine(p, derive_seed(seed, 111), d); });
  if (include_determinism)
    r.run("12", "determinism", [&](nlohmann::json& d) { determinism(derive_seed(seed, 112), d); });
  if (all_passed) *all_passed = r.all_pass();
  return r.results();
}

}  // namespace

nlohmann::json run_acceptance(AcceptanceSuite suite, RngSeed seed, std::ostream& log,
                              bool* all_passed) {
  return run_impl(suite, seed, log, all_passed, true);
}

}  // namespace orbitope
