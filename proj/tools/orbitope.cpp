// orbitope: library CLI. Subcommands mirror the library modules; every
// stochastic command takes an explicit --seed and reports are deterministic
// for a fixed command line. Wall times go to stderr.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "orbitope/acceptance.hpp"
#include "orbitope/comass.hpp"
#include "orbitope/norms.hpp"
#include "orbitope/orbit.hpp"
#include "orbitope/pos.hpp"
#include "orbitope/report.hpp"
#include "orbitope/tsp.hpp"

namespace {

using nlohmann::json;
using namespace orbitope;

struct Output {
  std::string path;     // empty = stdout
  std::string format = "json";
};

void emit(const Output& out, const json& report, const std::string& csv = "") {
  const std::string body = (out.format == "csv" && !csv.empty()) ? csv : report_bytes(report);
  if (out.path.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out.path);
    f << body;
  }
}

json ellipsoid_to_json(const EllipsoidPair& e, const DecompositionReport& rep) {
  json j;
  auto& approx = j["ellipsoid"];
  approx["center"] = e.approx.center;
  approx["radius_scale"] = e.approx.radius_scale;
  json rows = json::array();
  for (int i = 0; i < e.approx.form.dim(); ++i) {
    std::vector<double> row(e.approx.form.dim());
    for (int k = 0; k < e.approx.form.dim(); ++k) row[k] = e.approx.form.at(i, k);
    rows.push_back(row);
  }
  approx["form"] = rows;
  approx["representation"] = e.exact ? "exact" : "float";
  if (e.exact) {
    json ex;
    std::vector<std::string> c;
    for (const auto& v : e.exact->center) c.push_back(v.str());
    ex["center"] = c;
    ex["radius_scale"] = e.exact->radius_scale.str();
    json exrows = json::array();
    for (int i = 0; i < e.exact->form.dim(); ++i) {
      std::vector<std::string> row;
      for (int k = 0; k < e.exact->form.dim(); ++k) row.push_back(e.exact->form.at(i, k).str());
      exrows.push_back(row);
    }
    ex["form"] = exrows;
    j["ellipsoid_exact"] = std::move(ex);
  }
  json d;
  d["component_dims"] = rep.component_dims;
  d["lambdas"] = rep.lambdas;
  d["v_component_norms"] = rep.v_component_norms;
  d["hull_dim"] = rep.hull_dim;
  d["spectrum"] = rep.spectrum;
  d["components_may_be_merged"] = rep.components_may_be_merged;
  j["decomposition"] = std::move(d);
  return j;
}

int cmd_dk(int m, int n, int k, const Output& out) {
  const Int d = d_k_rect(m, n, k);
  std::cout << d.str() << "\n";
  if (!out.path.empty()) {
    const json rep = make_report("dk", {{"m", m}, {"n", n}, {"k", k}}, RngSeed{0},
                                 {{"d_k", d.str()}});
    emit(out, rep);
  }
  return 0;
}

int cmd_tsp(int n, const std::string& variant, const std::string& check, const Output& out) {
  json results;
  std::ostringstream csv;
  if (variant == "sym") {
    const StnReport r = stn_closed_forms(n);
    json jr;
    jr["n"] = r.n;
    jr["dim"] = r.dim;
    jr["r_min_sq"] = r.r_min_sq.str();
    if (r.r_max_sq) jr["r_max_sq"] = r.r_max_sq->str();
    if (r.sym_coeff) jr["sym_coeff"] = r.sym_coeff->str();
    results["stn_report"] = jr;
    csv << "n,dim,r_min_sq,r_max_sq,sym_coeff\n"
        << n << "," << r.dim << "," << r.r_min_sq.str() << ","
        << (r.r_max_sq ? r.r_max_sq->str() : "") << ","
        << (r.sym_coeff ? r.sym_coeff->str() : "") << "\n";
    if (check == "all") {
      const OrbitSpec spec = stn_orbit_spec(n);
      const SecondMoment mom = orbit_second_moment(spec, 0, RngSeed{0});
      const auto [ell, rep] = min_volume_ellipsoid(spec, mom);
      bool vertices_on_boundary = true;
      for (const auto& v : enumerate_tours(n, true))
        vertices_on_boundary =
            vertices_on_boundary && ellipsoid_eval(*ell.exact, v.flatten()).is_zero();
      const bool radius_ok = mom.m_exact.trace() == r.r_min_sq;
      results["checks"] = {{"vertices_on_emin_boundary", vertices_on_boundary},
                           {"r_min_sq_exact_match", radius_ok},
                           {"hull_dim", rep.hull_dim}};
      results["pass"] = vertices_on_boundary && radius_ok;
    }
  } else if (variant == "asym") {
    const auto tours = enumerate_tours(n, false);
    json residuals = json::array();
    bool all_zero = true;
    csv << "vertex,residual\n";
    for (size_t i = 0; i < tours.size(); ++i) {
      const Rat res = atn_ellipsoid_residual(n, tours[i]);
      all_zero = all_zero && res.is_zero();
      if (i < 32) residuals.push_back(res.str());
      csv << i << "," << res.str() << "\n";
    }
    results["vertices"] = tours.size();
    results["residuals_head"] = residuals;
    results["all_residuals_zero"] = all_zero;
    if (check == "all") results["pass"] = all_zero;
  } else {
    throw CLI::ValidationError("--variant must be sym or asym");
  }
  emit(out, make_report("tsp", {{"n", n}, {"variant", variant}, {"check", check}}, RngSeed{0}, results),
       csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbitope: ellipsoids, norms and volumes of compact-group orbit hulls"};
  app.set_config("--config", "", "flat key=value config file; flags override file values");
  app.require_subcommand(1);

  Output out;
  app.add_option("--out", out.path, "write the JSON/CSV report here (default stdout)")
      ->configurable(true);
  app.add_option("--format", out.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->configurable(true);

  int exit_code = 0;
  const auto t0 = std::chrono::steady_clock::now();

  // --- dk ---
  auto* dk = app.add_subcommand("dk", "rectangular-diagram dimension d_k");
  int dk_m = 2, dk_n = 4, dk_k = 1;
  dk->add_option("--m", dk_m)->required();
  dk->add_option("--n", dk_n)->required();
  dk->add_option("--k", dk_k)->required();
  dk->callback([&] { exit_code = cmd_dk(dk_m, dk_n, dk_k, out); });

  // --- tsp ---
  auto* tsp = app.add_subcommand("tsp", "Traveling Salesman Polytope closed forms and checks");
  int tsp_n = 5;
  std::string tsp_variant = "sym", tsp_check = "none";
  tsp->add_option("--n", tsp_n)->required()->check(CLI::Range(4, 9));
  tsp->add_option("--variant", tsp_variant)->check(CLI::IsMember({"sym", "asym"}));
  tsp->add_option("--check", tsp_check)->check(CLI::IsMember({"none", "all"}));
  tsp->callback([&] { exit_code = cmd_tsp(tsp_n, tsp_variant, tsp_check, out); });

  // --- ellipsoid ---
  auto* ell = app.add_subcommand("ellipsoid", "E_min / E_max of a named orbit family");
  std::string ell_family = "stn";
  int ell_n = 5, ell_m = 2;
  long ell_samples = 20000;
  std::uint64_t ell_seed = 0;
  bool ell_polar = false;
  ell->add_option("--family", ell_family, "stn|atn|grassmann")
      ->check(CLI::IsMember({"stn", "atn", "grassmann"}));
  ell->add_option("--n", ell_n)->required();
  ell->add_option("--m", ell_m, "Grassmannian plane dimension");
  ell->add_option("--samples", ell_samples, "Haar samples (compact families)");
  ell->add_option("--seed", ell_seed, "seed (compact families)");
  ell->add_flag("--polar", ell_polar, "emit E_max of the polar instead of E_min");
  ell->callback([&] {
    OrbitSpec spec;
    if (ell_family == "stn")
      spec = stn_orbit_spec(ell_n);
    else if (ell_family == "atn")
      spec = atn_orbit_spec(ell_n);
    else {
      const auto sets = index_sets(ell_n, ell_m);
      spec.ambient_dim = static_cast<int>(sets.size());
      spec.base_point.assign(spec.ambient_dim, 0.0);
      spec.base_point[0] = 1.0;
      spec.center_mode = CenterMode::PreCentered;
      CompactGroup g;
      const int gn = ell_n, gm = ell_m;
      g.haar_draw = [gn, gm](Rng& rng) { return exterior_power_matrix(haar_so(gn, rng), gm); };
      spec.group = std::move(g);
    }
    const SecondMoment mom = orbit_second_moment(spec, ell_samples, RngSeed{ell_seed});
    json results;
    if (ell_polar) {
      const EllipsoidPair e = max_volume_ellipsoid_polar(spec, mom);
      DecompositionReport dummy;
      results = ellipsoid_to_json(e, dummy);
      results["kind"] = "E_max_of_polar";
    } else {
      const auto [e, rep] = min_volume_ellipsoid(spec, mom);
      results = ellipsoid_to_json(e, rep);
      results["kind"] = "E_min";
    }
    emit(out, make_report("ellipsoid",
                          {{"family", ell_family}, {"n", ell_n}, {"m", ell_m},
                           {"samples", ell_samples}, {"polar", ell_polar}},
                          RngSeed{ell_seed}, results));
  });

  // --- comass ---
  auto* com = app.add_subcommand("comass", "comass sandwich estimate of a multivector");
  std::string com_input, com_calibration;
  int com_n = 6, com_m = 3, com_k = 0, com_restarts = 64;
  long com_mc = 100000;
  std::uint64_t com_seed = 0;
  com->add_option("--input", com_input, "MultiVector JSON file");
  com->add_option("--calibration", com_calibration, "kaehler:p,q | sl:m (alternative to --input)");
  com->add_option("--n", com_n);
  com->add_option("--m", com_m);
  com->add_option("--k", com_k, "sandwich power (0 = default cap rule)");
  com->add_option("--restarts", com_restarts);
  com->add_option("--mc-samples", com_mc);
  com->add_option("--seed", com_seed)->required();
  com->callback([&] {
    MultiVector c;
    if (!com_input.empty()) {
      std::ifstream f(com_input);
      if (!f) throw std::runtime_error("cannot read " + com_input);
      json j;
      f >> j;
      c = multivector_from_json(j);
    } else if (com_calibration.rfind("kaehler:", 0) == 0) {
      int p = 0, q = 0;
      if (std::sscanf(com_calibration.c_str(), "kaehler:%d,%d", &p, &q) != 2)
        throw CLI::ValidationError("--calibration kaehler:p,q");
      c = kaehler_power(p, q);
    } else if (com_calibration.rfind("sl:", 0) == 0) {
      c = special_lagrangian(std::atoi(com_calibration.c_str() + 3));
    } else {
      throw CLI::ValidationError("need --input or --calibration");
    }
    const int k = com_k > 0 ? com_k : default_comass_k(c.n(), c.m());
    const ComassEstimate est = comass(c, k, com_restarts, com_mc, RngSeed{com_seed});
    const json results = {{"lower", est.lower},
                          {"upper", est.upper},
                          {"upper_std_err", est.upper_std_err},
                          {"norm_2k", est.norm_2k},
                          {"norm_2k_std_err", est.norm_2k_std_err},
                          {"k_used", est.k_used},
                          {"restarts", est.restarts},
                          {"input", multivector_to_json(c)}};
    emit(out, make_report("comass",
                          {{"n", c.n()}, {"m", c.m()}, {"k", k}, {"restarts", com_restarts},
                           {"mc_samples", com_mc}},
                          RngSeed{com_seed}, results));
  });

  // --- sandwich ---
  auto* sw = app.add_subcommand("sandwich", "L^{2k} sandwich bound for a polynomial");
  std::string sw_poly;
  int sw_k = 3;
  bool sw_centered = false;
  std::uint64_t sw_seed = 0;
  long sw_samples = 200000;
  sw->add_option("--poly", sw_poly, "HomPoly JSON file")->required();
  sw->add_option("--k", sw_k)->required();
  sw->add_flag("--centered", sw_centered, "odd-power centered mode (bounds max p)");
  sw->add_option("--seed", sw_seed, "seed for the mc fallback");
  sw->add_option("--samples", sw_samples);
  sw->callback([&] {
    std::ifstream f(sw_poly);
    if (!f) throw std::runtime_error("cannot read " + sw_poly);
    json j;
    f >> j;
    const HomPoly p = poly_d_from_json(j);
    const SandwichBound b =
        sphere_sandwich(p, sw_k, sw_centered, SandwichMethod::Auto, RngSeed{sw_seed}, sw_samples);
    const json results = {{"lower", b.lower},
                          {"upper", b.upper},
                          {"lower_std_err", b.lower_std_err},
                          {"d_k", b.d_k.str()},
                          {"k", b.k},
                          {"centered", b.centered},
                          {"method", b.method == NormMethod::Exact ? "exact" : "mc"}};
    emit(out, make_report("sandwich", {{"poly", sw_poly}, {"k", sw_k}, {"centered", sw_centered}},
                          RngSeed{sw_seed}, results));
  });

  // --- avg-sup ---
  auto* avg = app.add_subcommand("avg-sup", "average sup-norm on the unit L^2 sphere of U_{m,n}");
  int avg_n = 3, avg_m = 4, avg_samples = 200;
  long avg_grid = 200000;
  std::uint64_t avg_seed = 0;
  avg->add_option("--n", avg_n)->required();
  avg->add_option("--m", avg_m)->required();
  avg->add_option("--samples", avg_samples);
  avg->add_option("--grid", avg_grid);
  avg->add_option("--seed", avg_seed)->required();
  avg->callback([&] {
    SphereOptOptions opt;
    opt.grid_points = avg_grid;
    const AvgSupNormReport rep = avg_sup_norm_experiment(avg_n, avg_m, avg_samples,
                                                         RngSeed{avg_seed}, opt);
    emit(out, make_report("avg-sup",
                          {{"n", avg_n}, {"m", avg_m}, {"samples", avg_samples}, {"grid", avg_grid}},
                          RngSeed{avg_seed}, rep.to_json()));
  });

  // --- pos-ball ---
  auto* pb = app.add_subcommand("pos-ball", "exact radii for the nonnegative-polynomial body");
  int pb_n = 3, pb_k = 1;
  pb->add_option("--n", pb_n)->required();
  pb->add_option("--k", pb_k)->required();
  pb->callback([&] {
    const PosBallReport r = pos_ball_report(pb_n, pb_k);
    std::ostringstream csv;
    csv << "n,k,r_max_sq,sym_coeff,outer_radius_sq\n"
        << pb_n << "," << pb_k << "," << r.r_max_sq.str() << "," << r.sym_coeff.str() << ","
        << r.outer_radius_sq.str() << "\n";
    emit(out, make_report("pos-ball", {{"n", pb_n}, {"k", pb_k}}, RngSeed{0}, r.to_json()),
         csv.str());
  });

  // --- pos-volume ---
  auto* pv = app.add_subcommand("pos-volume", "MC volume-ratio estimate for Pos'");
  int pv_n = 3, pv_k = 1;
  long pv_samples = 5000, pv_grid = 2000;
  std::uint64_t pv_seed = 0;
  pv->add_option("--n", pv_n)->required();
  pv->add_option("--k", pv_k)->required();
  pv->add_option("--samples", pv_samples);
  pv->add_option("--grid", pv_grid);
  pv->add_option("--seed", pv_seed)->required();
  pv->callback([&] {
    const VolumeRatioEstimate est =
        volume_ratio_pos(pv_n, pv_k, pv_samples, RngSeed{pv_seed}, pv_grid);
    emit(out, make_report("pos-volume",
                          {{"n", pv_n}, {"k", pv_k}, {"samples", pv_samples}, {"grid", pv_grid}},
                          RngSeed{pv_seed}, est.to_json()));
  });

  // --- verify ---
  auto* ver = app.add_subcommand("verify", "run the verification suite");
  std::string ver_suite = "fast";
  std::uint64_t ver_seed = 0xC0FFEEULL;
  ver->add_option("--suite", ver_suite)->check(CLI::IsMember({"fast", "full"}));
  ver->add_option("--seed", ver_seed);
  ver->callback([&] {
    bool ok = false;
    const AcceptanceSuite suite =
        ver_suite == "full" ? AcceptanceSuite::Full : AcceptanceSuite::Fast;
    const json results = run_acceptance(suite, RngSeed{ver_seed}, std::cerr, &ok);
    emit(out, make_report("verify", {{"suite", ver_suite}}, RngSeed{ver_seed}, results));
    exit_code = ok ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints usage / message
    return rc == 0 ? 0 : 2;     // validation errors exit 2
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "wall time: " << secs << " s\n";
  return exit_code;
}
