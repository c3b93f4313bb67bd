#pragma once

#include <atomic>
#include <cstdio>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "vdw/config.hpp"
#include "vdw/potential.hpp"

// Distance sweeps and the absorption figure, with deterministic CSV output.
// Grid points are dispatched to a worker pool; each point's computation is
// self-contained and single-threaded internally, and rows are emitted in grid
// order, so the bytes written do not depend on the job count.

namespace vdw {

struct SweepRow {
  double r_A = 0.0;
  double delta_r = 0.0;
  double U = 0.0;
  double F = 0.0;
  double U_norm = 0.0;
  double F_norm = 0.0;
  int n_used = 0;
  int panels = 0;
  double est_error = 0.0;
  bool ok = true;
  std::string error;
};

namespace detail {

inline std::string csv_num(double d) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", d);
  return buf;
}

template <class PointFn>
inline void run_grid(int points, int jobs, PointFn&& fn) {
  if (jobs <= 1) {
    for (int i = 0; i < points; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= points) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min(jobs, points);
  pool.reserve(static_cast<size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// Evaluate the configured sweep (modes full, short, long).  Per-point
/// failures are recorded in the row and do not abort the run.
inline std::vector<SweepRow> run_sweep(const RunConfig& cfg) {
  if (cfg.mode == "fig1")
    throw ConfigError("run_sweep: mode fig1 has its own command", 0, "mode");
  const RunSetup setup = make_setup(cfg);
  const QuadratureSpec quad{cfg.quad_rel_tol, 0.0, cfg.quad_max_panels};
  const SeriesSpec series{cfg.series_rel_tol, cfg.series_n_max};

  std::optional<Fig1Normalization> norm;
  if (setup.has_reference && setup.atom.total_d2() > 0.0)
    norm = fig1_normalization(setup.atom, 1.0);

  // The short-distance frequency integral is distance-independent; build the
  // law once and share it across the grid.
  std::optional<ShortDistanceLaw> law;
  if (cfg.mode == "short")
    law.emplace(setup.atom, setup.sphere.material, quad);

  std::vector<SweepRow> rows(setup.r_grid.size());
  auto compute = [&](int i) {
    SweepRow& row = rows[static_cast<size_t>(i)];
    const double r = setup.r_grid[static_cast<size_t>(i)];
    row.r_A = r;
    row.delta_r = r - setup.sphere.radius;
    try {
      if (cfg.mode == "full") {
        const auto s = vdw_potential(setup.atom, setup.sphere, r, quad, series);
        row.U = s.U;
        row.F = vdw_force(setup.atom, setup.sphere, r, quad, series);
        row.n_used = s.diag.n_used;
        row.panels = s.diag.panels;
        row.est_error = s.diag.est_error;
      } else if (cfg.mode == "short") {
        row.U = law->potential(row.delta_r);
        row.F = -law->force_magnitude(row.delta_r);
        row.panels = law->panels();
        const double J = law->frequency_integral();
        row.est_error = J != 0.0 ? std::abs(row.U) * law->integral_error() / std::abs(J) : 0.0;
      } else {  // long
        row.U = long_distance_integral(setup.atom, setup.sphere, r, quad);
        const double h = 1e-4 * r;
        row.F = -derivative_richardson(
            [&](double rr) { return long_distance_integral(setup.atom, setup.sphere, rr, quad); },
            r, h);
      }
      if (norm) {
        row.U_norm = norm->C * row.U;
        row.F_norm = norm->C * std::abs(row.F);
      } else {
        row.U_norm = std::nan("");
        row.F_norm = std::nan("");
      }
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
      row.U = row.F = row.U_norm = row.F_norm = std::nan("");
      row.est_error = std::nan("");
    }
  };
  detail::run_grid(static_cast<int>(setup.r_grid.size()), cfg.jobs, compute);
  return rows;
}

/// CSV with the fixed header; failed points carry nan values, their messages
/// go to the run summary, not the data file.
inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string s = "r_A,delta_r,U,F,U_normalized,F_normalized,n_used,panels,est_error\n";
  for (const auto& r : rows) {
    s += detail::csv_num(r.r_A);
    s += ",";
    s += detail::csv_num(r.delta_r);
    s += ",";
    s += detail::csv_num(r.U);
    s += ",";
    s += detail::csv_num(r.F);
    s += ",";
    s += detail::csv_num(r.U_norm);
    s += ",";
    s += detail::csv_num(r.F_norm);
    s += ",";
    s += std::to_string(r.n_used);
    s += ",";
    s += std::to_string(r.panels);
    s += ",";
    s += detail::csv_num(r.est_error);
    s += "\n";
  }
  return s;
}

/// The absorption figure: normalized force magnitude C |dU/dr_A| of the
/// short-distance law against Delta r / lambda for the Drude-sphere preset
/// (omega_l = 0, omega_n / Omega_l = 0.7) at gamma/Omega_l in {0.01, 0.1, 1}.
struct Fig1Data {
  std::vector<double> gammas;
  std::vector<double> dr_over_lambda;
  std::vector<std::vector<double>> F_norm;  // [gamma][point]
};

inline Fig1Data fig1_curves(int points = 25, double rel_tol = 1e-9) {
  Fig1Data d;
  d.gammas = {1e-2, 1e-1, 1.0};
  const PolarizabilityModel atom({{0.7, 1.0}});
  const auto norm = fig1_normalization(atom, 1.0);
  const QuadratureSpec quad{rel_tol, 0.0, 400};

  d.dr_over_lambda.resize(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i)
    d.dr_over_lambda[static_cast<size_t>(i)] =
        1e-2 * std::pow(10.0, static_cast<double>(i) / (points - 1));

  for (double g : d.gammas) {
    const PermittivityModel metal({{1.0, 0.0, g}});
    const ShortDistanceLaw law(atom, metal, quad);
    std::vector<double> curve;
    curve.reserve(d.dr_over_lambda.size());
    for (double x : d.dr_over_lambda)
      curve.push_back(norm.C * law.force_magnitude(x * norm.lambda));
    d.F_norm.push_back(std::move(curve));
  }
  return d;
}

inline std::string fig1_csv(const Fig1Data& d) {
  std::string s = "delta_r_over_lambda";
  for (double g : d.gammas) {
    char label[32];
    std::snprintf(label, sizeof(label), "%g", g);
    s += ",F_normalized_gamma_";
    s += label;
  }
  s += "\n";
  for (size_t i = 0; i < d.dr_over_lambda.size(); ++i) {
    s += detail::csv_num(d.dr_over_lambda[i]);
    for (size_t k = 0; k < d.gammas.size(); ++k) {
      s += ",";
      s += detail::csv_num(d.F_norm[k][i]);
    }
    s += "\n";
  }
  return s;
}

inline std::string fig1_gnuplot_script(const std::string& csv_path) {
  std::string s;
  s += "set logscale xy\n";
  s += "set xlabel 'Delta r_A / lambda_l'\n";
  s += "set ylabel 'C |dU/dr_A|'\n";
  s += "set datafile separator ','\n";
  s += "plot '" + csv_path + "' using 1:2 with lines title 'gamma/Omega = 0.01', \\\n";
  s += "     '" + csv_path + "' using 1:3 with lines title 'gamma/Omega = 0.1', \\\n";
  s += "     '" + csv_path + "' using 1:4 with lines title 'gamma/Omega = 1'\n";
  return s;
}

}  // namespace vdw
