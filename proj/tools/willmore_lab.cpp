// willmore-lab: batch driver over the verification suites and
// experiments. Every command reads a JSON config, runs deterministically
// given (config, seed), and writes report.json plus per-command CSV
// dumps into --out. Exit status is 0 iff every non-informational check
// passed.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <string>

#include "willmore/analysis.hpp"
#include "willmore/conservation.hpp"
#include "willmore/flows.hpp"
#include "willmore/minimize.hpp"

using json = nlohmann::ordered_json;
using namespace willmore;

namespace {

const char* kVersion = "1.0";
const double kPi = std::acos(-1.0);

struct ReportBuilder {
  json entries = json::array();
  bool all_pass = true;

  void add(const std::string& name, const std::string& anchor, const json& norms,
           double tolerance, bool pass, bool informational = false) {
    json e;
    e["name"] = name;
    e["anchor"] = anchor;
    e["norms"] = norms;
    e["tolerance"] = tolerance;
    e["pass"] = pass;
    e["informational"] = informational;
    entries.push_back(e);
    if (!informational && !pass) all_pass = false;
  }
  void add_order(const std::string& name, const std::string& anchor, double coarse,
                 double fine, double order, double min_order) {
    json n;
    n["residual_coarse"] = coarse;
    n["residual_fine"] = fine;
    n["observed_order"] = order;
    // discretely exact identities have no measurable order; pass on the
    // fine residual staying at round-off
    const bool exact = coarse < 1e-10;
    add(name, anchor, n, min_order, exact ? fine < 1e-10 : order >= min_order);
  }
};

AnalyticImmersion make_surface(const std::string& name, double radius) {
  if (name == "plane") return plane();
  if (name == "sphere") return sphere_stereo(radius);
  if (name == "cylinder") return cylinder();
  if (name == "catenoid") return catenoid();
  if (name == "torus") return willmore_torus();
  throw std::invalid_argument("unknown surface: " + name);
}

AmbientMetric make_metric(const json& cfg) {
  const std::string kind = cfg.value("kind", "euclidean");
  if (kind == "euclidean") return euclidean_metric();
  if (kind == "constant_curvature")
    return normal_form_metric(Riemann3::constant_curvature(cfg.value("kappa", 1.0)));
  if (kind == "conformal_well") {
    const auto q = cfg.value("q", std::vector<double>{0, 0, 0});
    if (q.size() != 3) throw std::invalid_argument("metric.q must have 3 components");
    return conformal_metric(cfg.value("eps", 0.05), {q[0], q[1], q[2]},
                            cfg.value("beta", 1.0));
  }
  throw std::invalid_argument("unknown metric kind: " + kind);
}

std::vector<int> resolutions_from(const json& cfg, bool need_pair) {
  std::vector<int> res = cfg.value("resolutions", std::vector<int>{65, 129});
  if (need_pair && res.size() < 2)
    throw std::invalid_argument("order checks need at least two resolutions");
  for (int n : res)
    if (n < 33 || n % 2 == 0)
      throw std::invalid_argument("resolutions must be odd and >= 33");
  return res;
}

// ---------------------------------------------------------------- verify

void cmd_verify(const json& cfg, ReportBuilder& rep, const std::filesystem::path&) {
  const std::string sname = cfg.value("surface", "sphere");
  const AnalyticImmersion imm = make_surface(sname, cfg.value("radius", 1.0));
  const std::vector<int> res = resolutions_from(cfg, true);
  const bool expect_nonconserved = cfg.value("expect_conservation_failure", false);

  for (size_t k = 0; k + 1 < res.size(); ++k) {
    const Chart cc = imm.make_chart(res[k]), cf = imm.make_chart(res[k + 1]);
    const IdentityResiduals ic = identity_checks(evaluate_bundle(imm, cc));
    const IdentityResiduals iff = identity_checks(evaluate_bundle(imm, cf));
    const double hc = cc.hx(), hf = cf.hx();
    auto ord = [&](const InteriorNorms& a, const InteriorNorms& b) {
      return observed_order(a.max, b.max, hc, hf);
    };
    const std::string pair =
        " (" + std::to_string(res[k]) + "/" + std::to_string(res[k + 1]) + ")";
    rep.add_order("laplace_structure" + pair,
                  "Delta Phi = 2 e^{2 lambda} H n", ic.delta_phi.max, iff.delta_phi.max,
                  ord(ic.delta_phi, iff.delta_phi), 3.5);
    rep.add_order("mean_curvature_from_gradients" + pair,
                  "H = -(e^{-2 lambda}/2) grad n . grad Phi", ic.mean_from_grads.max,
                  iff.mean_from_grads.max, ord(ic.mean_from_grads, iff.mean_from_grads),
                  3.5);
    rep.add_order("conformal_metric" + pair, "grad Phi . grad Phi = 2 e^{2 lambda}",
                  ic.conformal_metric.max, iff.conformal_metric.max,
                  ord(ic.conformal_metric, iff.conformal_metric), 3.5);
    rep.add_order("wedge_structure" + pair, "grad Phi ^ n = grad_perp Phi",
                  ic.wedge_phi.max, iff.wedge_phi.max, ord(ic.wedge_phi, iff.wedge_phi),
                  3.5);

    const ConservationResiduals rc = conservation_residual(evaluate_bundle(imm, cc));
    const ConservationResiduals rf = conservation_residual(evaluate_bundle(imm, cf));
    const double dc = interior_norms(rc.div_T).max, df = interior_norms(rf.div_T).max;
    const double gc = interior_norms(rc.generalized).max,
                 gf = interior_norms(rf.generalized).max;
    if (expect_nonconserved) {
      json n;
      n["div_T_coarse"] = dc;
      n["div_T_fine"] = df;
      rep.add("conserved_field_nonzero" + pair,
              "div T plateaus on non-critical surfaces (negative control)", n, 0.5,
              df > 0.5 * dc && df > 1e-6);
    } else {
      rep.add_order("conserved_field" + pair, "div T = 0 on critical surfaces", dc, df,
                    observed_order(dc, df, hc, hf), 3.5);
    }
    rep.add_order("generalized_conservation" + pair,
                  "div T + 2 e^{2 lambda} (Lap_g H + 2H(H^2 - K)) n = 0", gc, gf,
                  observed_order(gc, gf, hc, hf), 3.5);
  }
}

// ------------------------------------------------------------ potentials

void cmd_potentials(const json& cfg, ReportBuilder& rep,
                    const std::filesystem::path& out) {
  const std::string sname = cfg.value("surface", "torus");
  const AnalyticImmersion imm = make_surface(sname, cfg.value("radius", 1.0));
  const std::vector<int> res = resolutions_from(cfg, false);

  std::vector<PotentialSet> sets;
  std::vector<GeometryBundle> bundles;
  for (int n : res) {
    bundles.push_back(evaluate_bundle(imm, imm.make_chart(n)));
    sets.push_back(build_potentials(bundles.back(), willmore_quality_threshold(n)));
  }

  if (res.size() >= 2) {
    const size_t k = res.size() - 2;
    const double hc = bundles[k].chart.hx(), hf = bundles[k + 1].chart.hx();
    rep.add_order("path_consistency_L", "grad_perp L = T is integrable",
                  sets[k].defect_L, sets[k + 1].defect_L,
                  observed_order(sets[k].defect_L, sets[k + 1].defect_L, hc, hf), 3.0);
    rep.add_order("curl_S_generator", "the S generator field is curl-free",
                  sets[k].curl_GS.max, sets[k + 1].curl_GS.max,
                  observed_order(sets[k].curl_GS.max, sets[k + 1].curl_GS.max, hc, hf),
                  3.0);
    rep.add_order("curl_R_generator", "the R generator field is curl-free",
                  sets[k].curl_GR.max, sets[k + 1].curl_GR.max,
                  observed_order(sets[k].curl_GR.max, sets[k + 1].curl_GR.max, hc, hf),
                  3.0);
    const RsResiduals rsc = rs_residuals(sets[k], bundles[k]);
    const RsResiduals rsf = rs_residuals(sets[k + 1], bundles[k + 1]);
    rep.add_order("first_order_system", "grad_perp R = grad S n + grad R ^ n",
                  rsc.rs1.max, rsf.rs1.max,
                  observed_order(rsc.rs1.max, rsf.rs1.max, hc, hf), 2.5);
    rep.add_order("second_order_system",
                  "Lap R = grad S . grad_perp n + grad R ^ grad_perp n", rsc.rs2.max,
                  rsf.rs2.max, observed_order(rsc.rs2.max, rsf.rs2.max, hc, hf), 2.5);
  }

  if (sname == "sphere" || sname == "plane") {
    const PotentialSet& s = sets.back();
    const int m = s.recon_margin + 1;
    json n;
    n["max_L"] = subgrid_norms(s.L, m).max;
    n["max_S"] = subgrid_norms(s.S, m).max;
    rep.add("potentials_vanish", "T = 0 forces constant L and S", n, 1e-8,
            n["max_L"].get<double>() < 1e-8 && n["max_S"].get<double>() < 1e-8);
  }

  // field dump at the finest resolution
  const PotentialSet& s = sets.back();
  const Chart& c = bundles.back().chart;
  std::ofstream csv(out / ("potentials_" + sname + ".csv"));
  csv << "i,j,x,y,S,Lx,Ly,Lz,Rx,Ry,Rz\n";
  csv.precision(17);
  for (int j = 0; j < c.n; ++j)
    for (int i = 0; i < c.n; ++i) {
      const Vec3 L = s.L.at(i, j), R = s.R.at(i, j);
      csv << i << ',' << j << ',' << c.x(i) << ',' << c.y(j) << ',' << s.S.at(i, j)
          << ',' << L.x << ',' << L.y << ',' << L.z << ',' << R.x << ',' << R.y << ','
          << R.z << '\n';
    }
}

// ---------------------------------------------------------------- expand

void cmd_expand(const json& cfg, ReportBuilder& rep, const std::filesystem::path& out) {
  const AmbientMetric g = make_metric(cfg.value("metric", json::object()));
  std::vector<double> radii =
      cfg.value("radii", std::vector<double>{0.02, 0.04, 0.06, 0.08, 0.1});
  const SweepResult sw = sphere_energy_sweep(g, radii, cfg.value("ntheta", 64),
                                             cfg.value("nphi", 128));

  std::ofstream csv(out / "expansion.csv");
  csv << "r,W\n";
  csv.precision(17);
  for (const auto& e : sw.table) csv << e.r << ',' << e.W << '\n';

  json n;
  n["c2"] = sw.c2;
  n["fit_residual"] = sw.fit_residual;
  if (g.kind == AmbientMetric::Kind::NormalForm) {
    const double target = -(4.0 * kPi / 3.0) * g.riem.scal();
    n["target"] = target;
    rep.add("energy_expansion_coefficient",
            "W(S_r) = 8 pi - (4 pi r^2 / 3) Scal(p) + O(r^3)", n, 0.05,
            std::abs(sw.c2 - target) <= 0.05 * std::abs(target));
  } else {
    rep.add("energy_expansion_coefficient", "flat background: the r^2 coefficient is 0",
            n, 1e-6, std::abs(sw.c2) < 1e-6);
  }
}

// -------------------------------------------------------------- minimize

RadialShape shape_from_config(const json& cfg, std::mt19937_64& rng) {
  const auto c = cfg.value("center", std::vector<double>{0, 0, 0});
  if (c.size() != 3) throw std::invalid_argument("center must have 3 components");
  RadialShape s =
      RadialShape::sphere({c[0], c[1], c[2]}, cfg.value("R", 1.0), cfg.value("L", 4),
                          cfg.value("ntheta", 48), cfg.value("nphi", 96));
  if (cfg.contains("perturb_a20")) s.coeff(2, 0) = cfg["perturb_a20"].get<double>();
  if (cfg.contains("perturb_random_scale")) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double scale = cfg["perturb_random_scale"].get<double>();
    for (int l = 2; l <= s.L; ++l)
      for (int m = -l; m <= l; ++m) s.coeff(l, m) = scale * u(rng);
  }
  return s;
}

void cmd_minimize(const json& cfg, ReportBuilder& rep, const std::filesystem::path& out,
                  std::mt19937_64& rng) {
  const AmbientMetric g = make_metric(cfg.value("metric", json::object()));
  const RadialShape s0 = shape_from_config(cfg.value("start", json::object()), rng);
  const double a = cfg.value("area", 4.0 * kPi * s0.R * s0.R);

  MinimizeOptions opts;
  const json ocfg = cfg.value("options", json::object());
  opts.max_iter = ocfg.value("max_iter", opts.max_iter);
  opts.grad_tol = ocfg.value("grad_tol", opts.grad_tol);
  opts.step0 = ocfg.value("step0", opts.step0);

  const MinimizeResult res = minimize_shape(s0, a, g, opts);

  std::ofstream csv(out / "minimize_trace.csv");
  csv << "iter,W,A,lambda,grad_norm,cx,cy,cz\n";
  csv.precision(17);
  for (size_t i = 0; i < res.trace.entries.size(); ++i) {
    const TraceEntry& e = res.trace.entries[i];
    csv << i << ',' << e.W << ',' << e.A << ',' << e.lambda << ',' << e.grad_norm << ','
        << e.center.x << ',' << e.center.y << ',' << e.center.z << '\n';
  }
  json shape;
  shape["center"] = {res.shape.center.x, res.shape.center.y, res.shape.center.z};
  shape["R"] = res.shape.R;
  shape["L"] = res.shape.L;
  shape["coefficients"] = res.shape.a;
  std::ofstream(out / "shape.json") << shape.dump(2) << '\n';

  double max_area_drift = 0;
  for (const auto& e : res.trace.entries)
    max_area_drift = std::max(max_area_drift, std::abs(e.A - a) / a);
  {
    json n;
    n["max_relative_drift"] = max_area_drift;
    rep.add("area_constraint_held", "area restored after every accepted step", n, 1e-8,
            max_area_drift < 1e-8);
  }
  {
    json n;
    n["termination"] = res.trace.termination;
    n["iterations"] = res.trace.entries.size();
    rep.add("descent_terminated", "projected gradient descent with backtracking", n, 0,
            res.trace.termination != "line_search_failure", true);
  }
  if (g.flat()) {
    const EnergyArea ea = energy_area(res.shape, g);
    json n;
    n["W"] = ea.W;
    n["excess"] = ea.W - 8 * kPi;
    n["max_coeff"] = res.shape.max_coeff();
    rep.add("flat_minimum_is_round", "constrained minimum at fixed area is the sphere",
            n, 1e-3, ea.W <= 8 * kPi + 1e-3 && res.shape.max_coeff() < 1e-2);
    const GradientPair grad = shape_gradient(res.shape, g);
    const double lam = lagrange_estimate(grad);
    json n2;
    n2["lambda"] = lam;
    n2["kkt_residual"] = kkt_residual(grad, lam);
    rep.add("multiplier_stationarity", "grad W = lambda grad A at the minimum", n2, 5e-4,
            kkt_residual(grad, lam) < 5e-4);
  }
  if (g.kind == AmbientMetric::Kind::Conformal) {
    const double d0 = norm(s0.center - g.conf_q);
    const double d1 = norm(res.shape.center - g.conf_q);
    json n;
    n["start_distance"] = d0;
    n["final_distance"] = d1;
    rep.add("curvature_well_attracts",
            "fixed-area minimizers move toward the scalar-curvature maximum", n, 0,
            d1 < d0);
  }
}

// ------------------------------------------------------------- estimates

void cmd_estimates(const json& cfg, ReportBuilder& rep,
                   const std::filesystem::path& out, std::mt19937_64& rng) {
  // ball-intersection monotonicity on a sphere sweep
  const std::vector<double> radii =
      cfg.value("simon_radii", std::vector<double>{0.3, 0.6, 1.0, 1.5, 2.5});
  const RadialShape sph = RadialShape::sphere({0, 0, 0}, cfg.value("R", 1.0), 2, 48, 96);
  const SimonReport sim = simon_checks(sph, radii);
  {
    std::ofstream csv(out / "simon.csv");
    csv << "r,area,W,flux,slack,area_bound_slack\n";
    csv.precision(17);
    for (const auto& e : sim.entries)
      csv << e.r << ',' << e.area_r << ',' << e.W_r << ',' << e.flux_r << ',' << e.slack
          << ',' << e.area_bound_slack << '\n';
    bool ok = true;
    double worst = 0;
    for (const auto& e : sim.entries) {
      ok = ok && e.slack > -1e-6 && (!e.contained || e.area_bound_slack >= -1e-9);
      worst = std::min(worst, e.slack);
    }
    json n;
    n["min_slack"] = worst;
    n["diameter_ratio"] = sim.diameter_ratio;
    rep.add("ball_monotonicity",
            "pi <= r^-2 |S n B_r| + W/8 - r^-2/2 int H <x, nu> (equality on spheres)", n,
            1e-6, ok);
  }

  // integral identity for the covariant Hessian under refinement; the
  // coarse level must stay well above the quadrature floor of the
  // defect, hence the higher default resolutions
  const AmbientMetric flat = euclidean_metric();
  std::vector<int> res = cfg.value("resolutions", std::vector<int>{129, 257});
  if (res.size() < 2)
    throw std::invalid_argument("order checks need at least two resolutions");
  for (int n : res)
    if (n < 33 || n % 2 == 0)
      throw std::invalid_argument("resolutions must be odd and >= 33");
  const int nbumps = cfg.value("bumps", 5);
  for (const AnalyticImmersion& imm : {sphere_stereo(1.0), willmore_torus()}) {
    std::uniform_real_distribution<double> cpos(-0.25, 0.25);
    std::uniform_real_distribution<double> crad(0.3, 0.5);
    const Chart cc = imm.make_chart(res[res.size() - 2]);
    const Chart cf = imm.make_chart(res.back());
    const GeometryBundle bc = evaluate_bundle(imm, cc);
    const GeometryBundle bf = evaluate_bundle(imm, cf);
    for (int t = 0; t < nbumps; ++t) {
      const double span = imm.natural_extent;
      const BumpFunction f{span * cpos(rng), span * cpos(rng), span * crad(rng)};
      const double dc = bochner_check(f, bc, flat).defect;
      const double df = bochner_check(f, bf, flat).defect;
      rep.add_order("hessian_identity_" + imm.name + "_" + std::to_string(t),
                    "int |Hess f|^2 = int (Lap f)^2 + curvature correction", dc, df,
                    observed_order(dc, df, cc.hx(), cf.hx()), 2.0);
    }
  }

  // test-function inequality on the round sphere chart
  {
    const AnalyticImmersion imm = sphere_stereo(1.0);
    const GeometryBundle b = evaluate_bundle(imm, imm.make_chart(res.back()));
    std::uniform_real_distribution<double> cpos(-0.2, 0.2);
    std::uniform_real_distribution<double> crad(0.3, 0.5);
    for (int t = 0; t < nbumps; ++t) {
      const BumpFunction f{cpos(rng), cpos(rng), crad(rng)};
      const StabilityResult r = stability_check(f, b, 0.0, flat);
      json n;
      n["lhs"] = r.lhs;
      n["rhs"] = r.rhs;
      n["margin"] = r.margin;
      n["min_lambda_plus_half_scal"] = r.min_lambda_plus_half_scal;
      rep.add("test_function_inequality_" + std::to_string(t),
              "int f^2 (curvature bracket + lambda) <= int |grad f|^2", n, -1e-4,
              r.margin >= -1e-4);
    }
  }

  // sphere-deviation report quantities (informational)
  {
    const EstimateReport er = estimate_report(sph, flat);
    json n;
    n["grad2H_integral"] = er.grad2H_integral;
    n["A0_l2"] = er.A0_l2;
    n["H_dev_inf"] = er.H_dev_inf;
    n["C_realized"] = er.C_corollary;
    n["H_positive"] = er.H_positive;
    rep.add("curvature_deviation_report", "realized constants of the H - 2/R bound", n,
            0, true, true);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"willmore-lab: verification suites and experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  unsigned long long seed = 0;
  bool seed_set = false;
  for (const char* name : {"verify", "potentials", "expand", "minimize", "estimates"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "RNG seed (overrides config)")
        ->each([&](const std::string&) { seed_set = true; });
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  json cfg;
  try {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config: " + config_path);
    in >> cfg;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }
  if (!seed_set) seed = cfg.value("seed", 12345ULL);

  ReportBuilder rep;
  const std::filesystem::path out(out_dir);
  try {
    std::filesystem::create_directories(out);
    std::mt19937_64 rng(seed);
    if (command == "verify")
      cmd_verify(cfg, rep, out);
    else if (command == "potentials")
      cmd_potentials(cfg, rep, out);
    else if (command == "expand")
      cmd_expand(cfg, rep, out);
    else if (command == "minimize")
      cmd_minimize(cfg, rep, out, rng);
    else
      cmd_estimates(cfg, rep, out, rng);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s failed: %s\n", command.c_str(), e.what());
    return 2;
  }

  json report;
  report["version"] = kVersion;
  report["command"] = command;
  report["seed"] = seed;
  report["config"] = cfg;
  report["entries"] = rep.entries;
  report["pass"] = rep.all_pass;
  std::ofstream(out / "report.json") << report.dump(2) << '\n';

  return rep.all_pass ? 0 : 1;
}
