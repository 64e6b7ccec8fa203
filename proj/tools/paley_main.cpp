// paley: command-line front end for the modulus / weight / Littlewood-Paley /
// paraproduct verifiers and the Carleman sweep harness.
//
// Exit codes: 0 all checks pass, 1 at least one fail verdict, 2 usage or
// config error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "paley/carleman.hpp"
#include "paley/gridio.hpp"
#include "paley/report.hpp"
#include "paley/svg.hpp"

namespace fs = std::filesystem;
using namespace paley;

namespace {

int g_threads = 1;  // reserved; execution is single-threaded and deterministic

Modulus parse_modulus(const std::string& family, double alpha) {
  if (family == "power") return Modulus::power(alpha);
  if (family == "loglip" || family == "log-lipschitz") return Modulus::log_lipschitz(alpha);
  throw CLI::ValidationError("--family", "unknown family '" + family + "' (power | log-lipschitz)");
}

/// Spec strings: "power:0.5", "loglip:1", "omega-of:loglip:1".
Modulus parse_modulus_spec(const std::string& spec) {
  if (spec.rfind("omega-of:", 0) == 0) return parse_modulus_spec(spec.substr(9)).derived_omega();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw CLI::ValidationError("modulus", "expected family:alpha, got '" + spec + "'");
  }
  return parse_modulus(spec.substr(0, colon), std::stod(spec.substr(colon + 1)));
}

void write_json(const std::string& path, const json& doc) {
  if (path.empty()) return;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << doc.dump(1) << "\n";
}

void reject_unknown_keys(const json& node, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& [key, value] : node.items()) {
    bool ok = false;
    for (const char* a : allowed) {
      if (key == a) ok = true;
    }
    if (!ok) throw std::runtime_error("config: unknown key '" + key + "' in " + where);
  }
}

json load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read config " + path);
  return json::parse(is);
}

int finish(ReportDocument& doc, const std::string& out_path) {
  const json rendered = doc.render();
  write_json(out_path, rendered);
  if (out_path.empty()) std::cout << rendered.dump(1) << "\n";
  return doc.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// modulus check
// ---------------------------------------------------------------------------

int run_modulus_check(const std::string& family, double alpha, int kmax, bool omega_conditions,
                      const std::vector<double>& s_values, const std::string& out) {
  const auto mu = parse_modulus(family, alpha);
  ReportDocument doc(json{{"subcommand", "modulus check"},
                          {"family", family},
                          {"alpha", alpha},
                          {"kmax", kmax},
                          {"threads", g_threads}});
  doc.add("osgood", to_json(check_osgood(mu, kmax)));
  for (const auto& r : check_modulus_axioms(mu)) doc.add("axiom:" + r.condition, to_json(r));
  if (omega_conditions) {
    const auto omega = mu.derived_omega();
    for (const auto& r : check_omega_conditions(omega, s_values, std::max(10, kmax / 3))) {
      doc.add("omega:" + r.condition, to_json(r));
    }
  }
  doc.stage_done("checks");
  return finish(doc, out);
}

// ---------------------------------------------------------------------------
// weight build
// ---------------------------------------------------------------------------

int run_weight_build(const std::string& family, double alpha, double tau_max,
                     const std::string& csv_out, const std::string& json_out) {
  const auto mu = parse_modulus(family, alpha);
  const auto wt = WeightTable::build(mu, tau_max);
  std::ofstream os(csv_out);
  if (!os) throw std::runtime_error("cannot write " + csv_out);
  os.precision(16);
  os << "tau,Phi,Phi_prime,Phi_double_prime,residual\n";
  double worst = 0.0;
  auto emit = [&](double tau) {
    const double resid = tau > 0.01 ? wt.ode_residual(tau) : 0.0;
    worst = std::max(worst, resid);
    os << tau << "," << wt.Phi(tau) << "," << wt.Phi_prime(tau) << "," << wt.Phi_double_prime(tau)
       << "," << resid << "\n";
  };
  for (double tau : wt.tau_nodes()) {
    if (tau >= tau_max) break;
    emit(tau);
  }
  emit(tau_max);

  ReportDocument doc(json{{"subcommand", "weight build"},
                          {"family", family},
                          {"alpha", alpha},
                          {"tau_max", tau_max},
                          {"threads", g_threads}});
  doc.add("ode_residual", json{{"max", worst}, {"pass", worst <= 1e-6}, {"csv", csv_out}});
  doc.stage_done("table");
  return finish(doc, json_out);
}

// ---------------------------------------------------------------------------
// lp decompose / lp norm
// ---------------------------------------------------------------------------

int run_lp_decompose(const std::string& input, const std::string& out_dir) {
  const auto u = load_grid_function(input);
  fs::create_directories(out_dir);
  const auto d = decompose(u);
  json cert = json::array();
  for (const auto& b : d.blocks) {
    const std::string name = "block_q" + std::to_string(b.q) + ".json";
    save_grid_function((fs::path(out_dir) / name).string(), b.values);
    cert.push_back(json{{"q", b.q},
                        {"file", name},
                        {"l2", b.values.l2()},
                        {"out_of_annulus_mass", b.out_of_annulus_mass}});
  }
  const auto back = reconstruct(d);
  const double resid = u.l2() > 0 ? l2_distance(back, u) / u.l2() : 0.0;
  ReportDocument doc(json{{"subcommand", "lp decompose"}, {"input", input}, {"threads", g_threads}});
  doc.add("blocks", cert);
  doc.add("reconstruction",
          json{{"relative_residual", resid}, {"pass", resid <= 1e-12}});
  doc.stage_done("decompose");
  return finish(doc, (fs::path(out_dir) / "certificates.json").string());
}

int run_lp_norm(const std::string& input, double s, const std::string& omega_spec,
                const std::string& out) {
  const auto u = load_grid_function(input);
  SobolevSpec spec{s, std::nullopt};
  if (!omega_spec.empty()) spec.omega = parse_modulus_spec(omega_spec);
  ReportDocument doc(json{{"subcommand", "lp norm"},
                          {"input", input},
                          {"s", s},
                          {"omega", omega_spec},
                          {"threads", g_threads}});
  doc.add("norm", json{{"dyadic", dyadic_sobolev_norm(u, spec)},
                       {"multiplier_unweighted_cross_check", multiplier_sobolev_norm(u, s)}});
  doc.stage_done("norm");
  return finish(doc, out);
}

// ---------------------------------------------------------------------------
// verify subcommands
// ---------------------------------------------------------------------------

int run_verify_remainder(double s, const std::string& omega_spec, int trials, std::uint64_t seed,
                         int n, const std::string& out) {
  const auto omega = parse_modulus_spec(omega_spec);
  const Grid g{1, n, kTwoPi};
  ReportDocument doc(json{{"subcommand", "verify remainder"},
                          {"s", s},
                          {"omega", omega_spec},
                          {"trials", trials},
                          {"seed", seed},
                          {"N", n},
                          {"threads", g_threads}});
  std::array<double, 3> worst{0.0, 0.0, 0.0};
  json per_trial = json::array();
  for (int t = 0; t < trials; ++t) {
    const auto a = random_band_limited(g, {.seed = seed + 2 * std::uint64_t(t), .omega_profile = &omega});
    const auto b = random_band_limited(g, {.seed = seed + 2 * std::uint64_t(t) + 1});
    const auto r = verify_remainder_estimate(a, b, s, omega);
    for (int i = 0; i < 3; ++i) worst[i] = std::max(worst[i], r.ratio[i]);
    per_trial.push_back(to_json(r));
  }
  const bool finite = std::isfinite(worst[0]) && std::isfinite(worst[1]) && std::isfinite(worst[2]);
  doc.add("measured_constants",
          json{{"C1", worst[0]}, {"C2", worst[1]}, {"C3", worst[2]}, {"pass", finite}});
  doc.add("trials", per_trial);
  doc.stage_done("remainder");
  return finish(doc, out);
}

int run_verify_bernstein(const json& cfg, std::uint64_t seed, const std::string& out) {
  reject_unknown_keys(cfg, {"grid", "trials"}, "bernstein config");
  const json grid_cfg = cfg.value("grid", json{{"n", 1}, {"N", 1024}, {"L", kTwoPi}});
  reject_unknown_keys(grid_cfg, {"n", "N", "L"}, "grid");
  const Grid g{grid_cfg.value("n", 1), grid_cfg.value("N", 1024), grid_cfg.value("L", kTwoPi)};
  const int trials = cfg.value("trials", 50);
  ReportDocument doc(json{{"subcommand", "verify bernstein"},
                          {"grid", grid_cfg},
                          {"trials", trials},
                          {"seed", seed},
                          {"threads", g_threads}});
  double lo = 1e300, hi = 0.0;
  bool pass = true;
  for (int t = 0; t < trials; ++t) {
    const auto u = random_band_limited(g, {.seed = seed + std::uint64_t(t)});
    const auto rep = bernstein_report(u);
    for (const auto& e : rep.samples) {
      if (e.skipped || e.descriptor == "q=-1") continue;
      const double r = e.values.at("block_l2");
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      if (r < 0.75 - 1e-6 || r > 8.0 / 3.0 + 1e-6) pass = false;
    }
  }
  doc.add("block_ratios", json{{"min", lo}, {"max", hi}, {"pass", pass}});
  doc.stage_done("bernstein");
  return finish(doc, out);
}

int run_verify_commutator(const json& cfg, std::uint64_t seed, const std::string& out) {
  reject_unknown_keys(cfg, {"grid", "trials", "q_lo", "q_hi", "xi_cut"}, "commutator config");
  const json grid_cfg = cfg.value("grid", json{{"n", 1}, {"N", 512}, {"L", kTwoPi}});
  const Grid g{grid_cfg.value("n", 1), grid_cfg.value("N", 512), grid_cfg.value("L", kTwoPi)};
  const int trials = cfg.value("trials", 20);
  const int q_lo = cfg.value("q_lo", 0);
  const int q_hi = cfg.value("q_hi", std::min(5, q_certified(g)));
  const double xi_cut = cfg.value("xi_cut", 24.0);
  ReportDocument doc(json{{"subcommand", "verify commutator"},
                          {"grid", grid_cfg},
                          {"trials", trials},
                          {"q_lo", q_lo},
                          {"q_hi", q_hi},
                          {"seed", seed},
                          {"threads", g_threads}});
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto a = random_band_limited(g, {.seed = seed + 2 * std::uint64_t(t), .xi_cut = xi_cut});
    const auto u = random_band_limited(g, {.seed = seed + 2 * std::uint64_t(t) + 1, .xi_cut = xi_cut});
    const auto rep = commutator_report(a, u, q_lo, q_hi);
    worst = std::max(worst, rep.max_ratio);
  }
  doc.add("measured_constant", json{{"max_ratio", worst}, {"pass", std::isfinite(worst)}});
  doc.stage_done("commutator");
  return finish(doc, out);
}

int run_verify_mollifier(const json& cfg, std::uint64_t seed, const std::string& out) {
  reject_unknown_keys(cfg, {"mu", "levels", "time_samples", "x_points", "eps_exponents"},
                      "mollifier config");
  const json mu_cfg = cfg.value("mu", json{{"family", "power"}, {"alpha", 0.5}});
  reject_unknown_keys(mu_cfg, {"family", "alpha"}, "mu");
  const auto mu = parse_modulus(mu_cfg.value("family", "power"), mu_cfg.value("alpha", 0.5));
  const int levels = cfg.value("levels", 9);
  const int m = cfg.value("time_samples", 4097);
  const int nx = cfg.value("x_points", 16);
  std::vector<int> eps_exp = cfg.value("eps_exponents", std::vector<int>{2, 3, 4, 5, 6});

  const Grid g{1, nx, kTwoPi};
  const auto w = lacunary_series(mu, levels, m, seed);
  TimeAxis axis{1.0, m};
  std::vector<GridFunction> slices;
  for (int i = 0; i < m; ++i) {
    std::vector<cplx> s(g.size());
    for (int j = 0; j < g.n; ++j) {
      s[j] = (1.0 + 0.3 * std::cos(g.period * j / g.n)) * w[static_cast<std::size_t>(i)];
    }
    slices.push_back(GridFunction::from_samples(g, std::move(s), true));
  }
  const TimeGridFunction a(axis, std::move(slices));

  ReportDocument doc(json{{"subcommand", "verify mollifier"},
                          {"mu", mu_cfg},
                          {"levels", levels},
                          {"time_samples", m},
                          {"seed", seed},
                          {"threads", g_threads}});
  json sweep = json::array();
  double d_lo = 1e300, d_hi = 0.0, v_lo = 1e300, v_hi = 0.0;
  for (int e : eps_exp) {
    const auto r = mollifier_ratios(a, mu, std::exp2(-e));
    sweep.push_back(json{{"eps", r.eps},
                         {"diff_over_mu", r.diff_over_mu},
                         {"deriv_times_eps_over_mu", r.deriv_over_mu_eps}});
    d_lo = std::min(d_lo, r.diff_over_mu);
    d_hi = std::max(d_hi, r.diff_over_mu);
    v_lo = std::min(v_lo, r.deriv_over_mu_eps);
    v_hi = std::max(v_hi, r.deriv_over_mu_eps);
  }
  doc.add("sweep", sweep);
  doc.add("uniformity", json{{"diff_variation", d_hi / d_lo},
                             {"deriv_variation", v_hi / v_lo},
                             {"pass", d_hi / d_lo < 2.0 && v_hi / v_lo < 2.0}});
  doc.stage_done("mollifier");
  return finish(doc, out);
}

// ---------------------------------------------------------------------------
// carleman run
// ---------------------------------------------------------------------------

int run_carleman(const std::string& config_path, const std::string& out, const std::string& csv,
                 const std::string& svg_path) {
  const json cfg = load_config(config_path);
  reject_unknown_keys(cfg,
                      {"s", "mu", "T", "grid", "gamma", "coeffs", "v", "seed", "ratio_floor",
                       "diagnostics", "zero_order"},
                      "carleman config");
  const json mu_cfg = cfg.at("mu");
  reject_unknown_keys(mu_cfg, {"family", "alpha"}, "mu");
  const json grid_cfg = cfg.at("grid");
  reject_unknown_keys(grid_cfg, {"n", "N", "L", "M"}, "grid");
  const std::uint64_t seed = cfg.value("seed", 1);

  CarlemanConfig cc;
  cc.s = cfg.at("s").get<double>();
  cc.mu = parse_modulus(mu_cfg.at("family").get<std::string>(), mu_cfg.value("alpha", 1.0));
  cc.gammas = cfg.at("gamma").get<std::vector<double>>();
  cc.ratio_floor = cfg.value("ratio_floor", 1e-3);
  const double T = cfg.at("T").get<double>();
  const Grid g{grid_cfg.value("n", 1), grid_cfg.at("N").get<int>(), grid_cfg.value("L", kTwoPi)};
  const int m = grid_cfg.at("M").get<int>();
  TimeAxis axis{T, m};

  double gamma_max = 0.0;
  for (double ga : cc.gammas) gamma_max = std::max(gamma_max, ga);
  cc.weight = std::make_shared<WeightTable>(WeightTable::build(cc.mu, gamma_max * T * 1.05));

  const json v_cfg = cfg.at("v");
  reject_unknown_keys(v_cfg, {"kind", "params"}, "v");
  const std::string v_kind = v_cfg.at("kind").get<std::string>();
  if (v_kind == "bump-mode") {
    const json p = v_cfg.value("params", json::object());
    reject_unknown_keys(p, {"mode", "mode_y", "amplitude"}, "v params");
    cc.v = bump_mode_field(g, axis, p.value("mode", 8), p.value("mode_y", 0),
                           p.value("amplitude", 1.0));
  } else if (v_kind == "file") {
    cc.v = load_time_grid_function(v_cfg.at("params").at("path").get<std::string>());
  } else {
    throw std::runtime_error("carleman config: v.kind must be bump-mode or file");
  }

  const json c_cfg = cfg.at("coeffs");
  reject_unknown_keys(c_cfg, {"kind", "params"}, "coeffs");
  const std::string c_kind = c_cfg.at("kind").get<std::string>();
  const auto omega = cc.omega();
  CoefficientField coeffs = [&] {
    if (c_kind == "constant") {
      return identity_coefficients(g, axis, cc.mu, omega);
    }
    if (c_kind == "sinusoidal") {
      const json p = c_cfg.value("params", json::object());
      reject_unknown_keys(p, {"amplitude", "mode", "w_levels"}, "coeffs params");
      const auto w = lacunary_series(cc.mu, p.value("w_levels", 6), m, seed);
      return sinusoidal_coefficients(g, axis, p.value("amplitude", 0.5), p.value("mode", 1), w,
                                     cc.mu, omega);
    }
    if (c_kind == "file") {
      const auto paths = c_cfg.at("params").at("paths").get<std::vector<std::string>>();
      std::vector<TimeGridFunction> entries;
      for (const auto& p : paths) entries.push_back(load_time_grid_function(p));
      return CoefficientField::build(g.dim, std::move(entries), cc.mu, omega);
    }
    throw std::runtime_error("carleman config: coeffs.kind must be constant, sinusoidal or file");
  }();

  // Exploratory zero-order hook; outside the verified estimate.
  if (cfg.contains("zero_order")) {
    const json z = cfg.at("zero_order");
    reject_unknown_keys(z, {"value"}, "zero_order");
    const double val = z.value("value", 0.0);
    std::vector<GridFunction> zs(
        static_cast<std::size_t>(m),
        GridFunction::from_samples(g, std::vector<cplx>(g.size(), cplx{val, 0.0}), true));
    coeffs.attach_zero_order(TimeGridFunction(axis, std::move(zs)));
    cc.include_zero_order = true;
  }

  const bool with_diag = cfg.value("diagnostics", true);
  const auto rep = evaluate_carleman(cc, coeffs, with_diag);

  ReportDocument doc(json{{"subcommand", "carleman run"},
                          {"config", cfg},
                          {"threads", g_threads}});
  json payload = to_json(rep);
  payload["pass"] = !rep.degenerate && rep.gamma0_found;
  if (cc.include_zero_order) payload["zero_order_included_outside_verified_estimate"] = true;
  doc.add("carleman", payload);
  doc.stage_done("sweep");

  if (!csv.empty()) {
    std::ofstream os(csv);
    if (!os) throw std::runtime_error("cannot write " + csv);
    os.precision(16);
    os << "gamma,lhs,rhs_grad,rhs_l2,ratio\n";
    for (const auto& r : rep.sweep) {
      os << r.gamma << "," << r.lhs << "," << r.rhs_grad << "," << r.rhs_l2 << "," << r.ratio << "\n";
    }
  }
  if (!svg_path.empty()) {
    svg::Series ratio_series;
    ratio_series.label = "ratio";
    for (const auto& r : rep.sweep) {
      ratio_series.x.push_back(r.gamma);
      ratio_series.y.push_back(r.ratio);
    }
    svg::write_loglog(svg_path, "sweep ratio vs gamma", {ratio_series});
  }
  return finish(doc, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"paley: Littlewood-Paley analysis, Bony paraproducts, Osgood weights, and "
               "Carleman-type inequality experiments on periodic grids"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "seed for all sampled data")->capture_default_str();
  app.add_option("--threads", g_threads, "thread count (reserved; runs are deterministic)")
      ->check(CLI::PositiveNumber)
      ->envname("PALEY_THREADS");

  // modulus check
  auto* mod = app.add_subcommand("modulus", "modulus-of-continuity checks");
  mod->fallthrough();
  auto* mod_check = mod->add_subcommand("check", "Osgood and axiom checks");
  mod_check->fallthrough();
  std::string family = "power", out, s_out;
  double alpha = 1.0;
  int kmax = 60;
  bool omega_conditions = false;
  std::vector<double> s_values{0.25, 0.5, 0.75};
  mod_check->add_option("--family", family, "power | log-lipschitz")->required();
  mod_check->add_option("--alpha", alpha, "family parameter")->required();
  mod_check->add_option("--kmax", kmax, "dyadic resolution")->check(CLI::Range(8, 4000));
  mod_check->add_flag("--check-omega", omega_conditions, "also check the derived omega conditions");
  mod_check->add_option("--s-values", s_values, "s values for the summability condition");
  mod_check->add_option("--out", out, "report JSON path");

  // weight build
  auto* wgt = app.add_subcommand("weight", "Osgood weight function");
  wgt->fallthrough();
  auto* wgt_build = wgt->add_subcommand("build", "tabulate Phi and certify its identity");
  wgt_build->fallthrough();
  std::string w_family = "power", w_csv = "table.csv", w_json;
  double w_alpha = 1.0, tau_max = 1.0;
  wgt_build->add_option("--family", w_family)->required();
  wgt_build->add_option("--alpha", w_alpha)->required();
  wgt_build->add_option("--tau-max", tau_max)->required();
  wgt_build->add_option("--out", w_csv, "CSV table path")->capture_default_str();
  wgt_build->add_option("--json", w_json, "report JSON path");

  // lp decompose / lp norm
  auto* lp = app.add_subcommand("lp", "Littlewood-Paley operations");
  lp->fallthrough();
  auto* lp_dec = lp->add_subcommand("decompose", "write dyadic blocks and certificates");
  lp_dec->fallthrough();
  std::string lp_in, lp_out_dir = "blocks";
  lp_dec->add_option("--input", lp_in, "grid-function JSON file")->required();
  lp_dec->add_option("--out", lp_out_dir, "output directory")->capture_default_str();
  auto* lp_norm = lp->add_subcommand("norm", "dyadic (weighted) Sobolev norm");
  lp_norm->fallthrough();
  std::string lpn_in, lpn_omega, lpn_out;
  double lpn_s = 0.0;
  lp_norm->add_option("--input", lpn_in)->required();
  lp_norm->add_option("--s", lpn_s, "Sobolev exponent")->required();
  lp_norm->add_option("--omega", lpn_omega, "weight modulus spec, e.g. loglip:1 or omega-of:loglip:1");
  lp_norm->add_option("--out", lpn_out, "report JSON path");

  // verify
  auto* ver = app.add_subcommand("verify", "estimate verifiers");
  ver->fallthrough();
  auto* ver_rem = ver->add_subcommand("remainder", "weighted remainder estimate constants");
  ver_rem->fallthrough();
  double vr_s = 0.5;
  std::string vr_omega = "omega-of:loglip:1", vr_out;
  int vr_trials = 50, vr_n = 256;
  ver_rem->add_option("--s", vr_s)->required();
  ver_rem->add_option("--omega", vr_omega)->required();
  ver_rem->add_option("--trials", vr_trials)->capture_default_str();
  ver_rem->add_option("--n", vr_n, "grid points")->capture_default_str();
  ver_rem->add_option("--out", vr_out);

  std::string vb_cfg, vb_out, vc_cfg, vc_out, vm_cfg, vm_out;
  auto* ver_b = ver->add_subcommand("bernstein", "block gradient bounds");
  ver_b->fallthrough();
  ver_b->add_option("--config", vb_cfg, "config JSON (defaults apply if omitted)");
  ver_b->add_option("--out", vb_out);
  auto* ver_c = ver->add_subcommand("commutator", "low-frequency commutator bound");
  ver_c->fallthrough();
  ver_c->add_option("--config", vc_cfg);
  ver_c->add_option("--out", vc_out);
  auto* ver_m = ver->add_subcommand("mollifier", "time mollifier bounds");
  ver_m->fallthrough();
  ver_m->add_option("--config", vm_cfg);
  ver_m->add_option("--out", vm_out);

  // carleman run
  auto* car = app.add_subcommand("carleman", "conjugated inequality sweep");
  car->fallthrough();
  auto* car_run = car->add_subcommand("run", "evaluate both sides over a gamma sweep");
  car_run->fallthrough();
  std::string car_cfg, car_out, car_csv, car_svg;
  car_run->add_option("--config", car_cfg)->required();
  car_run->add_option("--out", car_out);
  car_run->add_option("--csv", car_csv);
  car_run->add_option("--svg", car_svg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*mod_check) {
      return run_modulus_check(family, alpha, kmax, omega_conditions, s_values, out);
    }
    if (*wgt_build) return run_weight_build(w_family, w_alpha, tau_max, w_csv, w_json);
    if (*lp_dec) return run_lp_decompose(lp_in, lp_out_dir);
    if (*lp_norm) return run_lp_norm(lpn_in, lpn_s, lpn_omega, lpn_out);
    if (*ver_rem) return run_verify_remainder(vr_s, vr_omega, vr_trials, seed, vr_n, vr_out);
    if (*ver_b) return run_verify_bernstein(vb_cfg.empty() ? json::object() : load_config(vb_cfg), seed, vb_out);
    if (*ver_c) return run_verify_commutator(vc_cfg.empty() ? json::object() : load_config(vc_cfg), seed, vc_out);
    if (*ver_m) return run_verify_mollifier(vm_cfg.empty() ? json::object() : load_config(vm_cfg), seed, vm_out);
    if (*car_run) return run_carleman(car_cfg, car_out, car_csv, car_svg);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    const std::string msg = e.what();
    if (msg.find("config") != std::string::npos || msg.find("cannot read") != std::string::npos) {
      std::cerr << "config error: " << msg << "\n";
      return 2;
    }
    std::cerr << "error: " << msg << "\n";
    return 1;
  }
}
