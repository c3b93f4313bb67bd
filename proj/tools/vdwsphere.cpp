// Command-line driver: distance sweeps of the atom-sphere van der Waals
// potential, the absorption figure, closed-form asymptote coefficients, and
// the built-in verification suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vdw/selftest.hpp"
#include "vdw/sweep.hpp"

namespace {

constexpr const char* kConfigSchema =
    "Config file: one `key = value` per line, `#` comments, lists comma-separated.\n"
    "Keys (defaults in parentheses):\n"
    "  mode             full|short|long|fig1 (full)   evaluation route\n"
    "  units            reduced|si (reduced)          reduced: lengths in lambda_l,\n"
    "                                                 frequencies in Omega_l\n"
    "  R                sphere radius (1.0)\n"
    "  material.Omega   oscillator strengths (1.0)\n"
    "  material.omega   resonance frequencies; 0 = Drude metal (0.0)\n"
    "  material.gamma   absorption constants (0.01)\n"
    "  atom.omega       transition frequencies (0.7)\n"
    "  atom.d2          squared dipole elements, free overall scale (1.0)\n"
    "  sweep.r_min      first atom position r_A (1.02)\n"
    "  sweep.r_max      last atom position r_A (2.0)\n"
    "  sweep.points     grid size >= 2 (16)\n"
    "  sweep.spacing    log|linear (log)\n"
    "  quad.rel_tol     quadrature tolerance (1e-7)\n"
    "  quad.max_panels  panel budget (400)\n"
    "  series.rel_tol   multipole-series tolerance (1e-8)\n"
    "  series.n_max     multipole cap (20000)\n"
    "  jobs             worker threads for the sweep grid (1)\n"
    "  out              output CSV path (sweep.csv)\n"
    "Exit codes: 0 ok, 1 config error, 2 computation failure, 3 selftest failure.";

vdw::RunConfig load_config(const std::string& path) {
  if (path.empty()) return vdw::RunConfig{};
  std::ifstream in(path);
  if (!in) throw vdw::ConfigError("cannot open config file '" + path + "'");
  return vdw::parse_config(in);
}

bool write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << contents;
  return static_cast<bool>(out);
}

int cmd_sweep(const std::string& config_path, const std::string& out_override,
              int jobs_override, double rel_tol_override) {
  vdw::RunConfig cfg;
  try {
    cfg = load_config(config_path);
    if (jobs_override > 0) cfg.jobs = jobs_override;
    if (rel_tol_override > 0.0) cfg.quad_rel_tol = rel_tol_override;
    if (!out_override.empty()) cfg.out = out_override;
    vdw::validate_config(cfg);
  } catch (const vdw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  std::vector<vdw::SweepRow> rows;
  try {
    rows = vdw::run_sweep(cfg);
  } catch (const vdw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 2;
  }

  if (!write_file(cfg.out, vdw::sweep_csv(rows))) {
    std::cerr << "cannot write output file '" << cfg.out << "'\n";
    return 2;
  }

  int failures = 0;
  for (const auto& r : rows) {
    if (!r.ok) {
      ++failures;
      std::cerr << "point r_A = " << r.r_A << " failed: " << r.error << "\n";
    }
  }
  std::cout << "wrote " << rows.size() << " rows to " << cfg.out;
  if (failures) std::cout << " (" << failures << " failed)";
  std::cout << "\n";

  // run summary: fitted log-log slope of |U| over the grid
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int npts = 0;
  for (const auto& r : rows) {
    if (!r.ok || !(std::abs(r.U) > 0.0)) continue;
    const double lx = std::log(r.r_A), ly = std::log(std::abs(r.U));
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++npts;
  }
  if (npts >= 3) {
    const double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
    std::printf("run summary: fitted d ln|U| / d ln r_A = %.4f over %d points\n",
                slope, npts);
  }
  return failures ? 2 : 0;
}

int cmd_fig1(const std::string& out_path, int points, bool emit_script) {
  if (points < 2) {
    std::cerr << "config error: --points must be >= 2\n";
    return 1;
  }
  vdw::Fig1Data data;
  try {
    data = vdw::fig1_curves(points);
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 2;
  }
  if (!write_file(out_path, vdw::fig1_csv(data))) {
    std::cerr << "cannot write output file '" << out_path << "'\n";
    return 2;
  }
  std::cout << "wrote " << data.dr_over_lambda.size() << " grid points to " << out_path << "\n";
  if (emit_script) {
    const std::string script_path = out_path + ".gp";
    if (!write_file(script_path, vdw::fig1_gnuplot_script(out_path))) {
      std::cerr << "cannot write plot script '" << script_path << "'\n";
      return 2;
    }
    std::cout << "wrote plot script to " << script_path << "\n";
  }
  return 0;
}

int cmd_asymptotes(const std::string& config_path) {
  vdw::RunConfig cfg;
  vdw::RunSetup setup;
  try {
    cfg = load_config(config_path);
    setup = vdw::make_setup(cfg);
  } catch (const vdw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  try {
    const double alpha0 = setup.atom.static_polarizability();
    const double R = setup.sphere.radius;
    double k7;
    if (setup.sphere.material.is_metal()) {
      k7 = -vdw::retarded_limit_metal(alpha0, R, 1.0);
      std::printf("retarded law:      U = -K7 / r_A^7, K7 = %.12g (metallic sphere, "
                  "material factor 1)\n", k7);
    } else if (setup.sphere.material.empty()) {
      std::printf("retarded law:      U = 0 (vacuum sphere)\n");
      k7 = 0.0;
    } else {
      const double eps0 = setup.sphere.material.static_permittivity();
      k7 = -vdw::retarded_limit(alpha0, eps0, R, 1.0);
      std::printf("retarded law:      U = -K7 / r_A^7, K7 = %.12g (eps0 = %.12g, "
                  "material factor %.12g)\n", k7, eps0, (eps0 - 1.0) / (eps0 + 2.0));
    }
    const vdw::ShortDistanceLaw law(setup.atom, setup.sphere.material,
                                    {cfg.quad_rel_tol, 0.0, cfg.quad_max_panels});
    std::printf("short-distance law: U = -K3 / delta_r^3, K3 = %.12g "
                "(frequency integral %.12g)\n",
                law.frequency_integral() / (16.0 * vdw::kPi * vdw::kPi),
                law.frequency_integral());
    std::printf("units: hbar = c = eps0 = 1, reference frequency = 1 "
                "(lambda_ref = 2 pi)\n");
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int cmd_selftest(double tol_scale) {
  std::vector<vdw::CheckResult> results;
  try {
    results = vdw::run_selftest(tol_scale);
  } catch (const std::exception& e) {
    std::cerr << "selftest aborted: " << e.what() << "\n";
    return 3;
  }
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("%s %-35s measured=%.3e tol=%.3e\n", r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.measured, r.tolerance);
    all_pass = all_pass && r.pass;
  }
  std::printf("%s (%zu checks)\n", all_pass ? "ALL PASS" : "FAILURES PRESENT", results.size());
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"van der Waals potential of a ground-state atom near an absorbing, "
               "dispersing sphere"};
  app.footer(kConfigSchema);
  app.require_subcommand(1);

  std::string config_path, out_path, format = "csv";
  int jobs = 0, fig1_points = 25;
  double rel_tol = 0.0, tol_scale = 1.0;
  bool emit_script = false;

  auto* sweep = app.add_subcommand("sweep", "distance sweep -> CSV");
  sweep->add_option("--config", config_path, "config file path");
  sweep->add_option("--out", out_path, "output CSV path (overrides config)");
  sweep->add_option("--jobs", jobs, "worker threads (overrides config)");
  sweep->add_option("--rel-tol", rel_tol, "quadrature tolerance (overrides config)");
  sweep->add_option("--format", format, "output format (csv)")
      ->check(CLI::IsMember({"csv"}));

  auto* fig1 = app.add_subcommand("fig1", "absorption figure preset -> CSV");
  fig1->add_option("--out", out_path, "output CSV path")->capture_default_str();
  fig1->add_option("--points", fig1_points, "grid points")->capture_default_str();
  fig1->add_flag("--emit-plot-script", emit_script, "also write a gnuplot script");

  auto* asym = app.add_subcommand("asymptotes",
                                  "print closed-form limit coefficients for the model");
  asym->add_option("--config", config_path, "config file path");

  auto* selftest = app.add_subcommand("selftest", "run the built-in verification suite");
  selftest->add_option("--tol-scale", tol_scale,
                       "scale factor on every tolerance (testing aid)");

  CLI11_PARSE(app, argc, argv);

  if (sweep->parsed()) return cmd_sweep(config_path, out_path, jobs, rel_tol);
  if (fig1->parsed()) return cmd_fig1(out_path.empty() ? "fig1.csv" : out_path,
                                      fig1_points, emit_script);
  if (asym->parsed()) return cmd_asymptotes(config_path);
  if (selftest->parsed()) return cmd_selftest(tol_scale);
  return 0;
}
