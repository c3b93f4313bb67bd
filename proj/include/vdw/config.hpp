#pragma once

#include <cstdio>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "vdw/errors.hpp"
#include "vdw/mie.hpp"

// Flat key-value run configuration.  Lines are `key = value`, `#` starts a
// comment, lists are comma-separated.  Reduced units by default: lengths in
// lambda_l = 2 pi c / Omega_1 and frequencies in Omega_1, where Omega_1 is
// the first material oscillator (falling back to the first atomic transition
// for vacuum runs).  units = si reads frequencies in rad/s and lengths in
// meters instead; atom.d2 stays a free overall dipole scale either way, since
// it cancels in every normalized output.

namespace vdw {

struct RunConfig {
  std::string mode = "full";      // full | short | long | fig1
  std::string units = "reduced";  // reduced | si
  double R = 1.0;                 // sphere radius [lambda_l or m]
  std::vector<double> material_Omega{1.0};
  std::vector<double> material_omega{0.0};
  std::vector<double> material_gamma{0.01};
  std::vector<double> atom_omega{0.7};
  std::vector<double> atom_d2{1.0};
  double sweep_r_min = 1.02;
  double sweep_r_max = 2.0;
  int sweep_points = 16;
  std::string sweep_spacing = "log";  // log | linear
  double quad_rel_tol = 1e-7;
  int quad_max_panels = 400;
  double series_rel_tol = 1e-8;
  int series_n_max = 20000;
  int jobs = 1;
  std::string out = "sweep.csv";
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& v, int line, const std::string& field) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config line " + std::to_string(line) + ": field '" + field +
                          "': cannot parse number '" + v + "'",
                      line, field);
  }
}

inline int parse_int(const std::string& v, int line, const std::string& field) {
  try {
    size_t pos = 0;
    const int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("config line " + std::to_string(line) + ": field '" + field +
                          "': cannot parse integer '" + v + "'",
                      line, field);
  }
}

inline std::vector<double> parse_list(const std::string& v, int line, const std::string& field) {
  std::vector<double> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), line, field));
  return out;
}

inline std::string format_double(double d) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", d);
  return buf;
}

inline std::string format_list(const std::vector<double>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_double(v[i]);
  }
  return s;
}

}  // namespace detail

inline void validate_config(const RunConfig& c) {
  auto fail = [](const std::string& msg, const std::string& field) {
    throw ConfigError("config: " + msg, 0, field);
  };
  if (c.mode != "full" && c.mode != "short" && c.mode != "long" && c.mode != "fig1")
    fail("mode must be full|short|long|fig1", "mode");
  if (c.units != "reduced" && c.units != "si") fail("units must be reduced|si", "units");
  if (!(c.R > 0.0)) fail("R must be > 0", "R");
  if (c.material_Omega.size() != c.material_omega.size() ||
      c.material_Omega.size() != c.material_gamma.size())
    fail("material.Omega/material.omega/material.gamma must have equal lengths", "material");
  if (c.atom_omega.size() != c.atom_d2.size())
    fail("atom.omega/atom.d2 must have equal lengths", "atom");
  if (c.sweep_points < 2) fail("sweep.points must be >= 2", "sweep.points");
  if (!(c.sweep_r_max > c.sweep_r_min)) fail("sweep.r_max must exceed sweep.r_min", "sweep.r_max");
  if (c.sweep_spacing != "log" && c.sweep_spacing != "linear")
    fail("sweep.spacing must be log|linear", "sweep.spacing");
  if (c.mode == "full" && !(c.sweep_r_min > c.R))
    fail("sweep.r_min must exceed R for mode = full", "sweep.r_min");
  if (c.mode == "short" && !(c.sweep_r_min > c.R))
    fail("sweep.r_min must exceed R (grid is in r_A, not Delta r)", "sweep.r_min");
  if (!(c.quad_rel_tol > 0.0) || c.quad_rel_tol > 1e-2)
    fail("quad.rel_tol must lie in (0, 1e-2]", "quad.rel_tol");
  if (!(c.series_rel_tol > 0.0) || c.series_rel_tol > 1e-2)
    fail("series.rel_tol must lie in (0, 1e-2]", "series.rel_tol");
  if (c.quad_max_panels < 8) fail("quad.max_panels must be >= 8", "quad.max_panels");
  if (c.series_n_max < 8) fail("series.n_max must be >= 8", "series.n_max");
  if (c.jobs < 1) fail("jobs must be >= 1", "jobs");
  for (double v : c.material_Omega)
    if (v < 0.0) fail("material.Omega entries must be >= 0", "material.Omega");
  for (double v : c.material_omega)
    if (v < 0.0) fail("material.omega entries must be >= 0", "material.omega");
  for (double v : c.material_gamma)
    if (v < 0.0) fail("material.gamma entries must be >= 0", "material.gamma");
  for (double v : c.atom_omega)
    if (!(v > 0.0)) fail("atom.omega entries must be > 0", "atom.omega");
  for (double v : c.atom_d2)
    if (v < 0.0) fail("atom.d2 entries must be >= 0", "atom.d2");
}

inline RunConfig parse_config(std::istream& in) {
  RunConfig c;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = detail::trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line) + ": expected 'key = value'", line);
    const std::string key = detail::trim(s.substr(0, eq));
    const std::string val = detail::trim(s.substr(eq + 1));

    if (key == "mode") c.mode = val;
    else if (key == "units") c.units = val;
    else if (key == "R") c.R = detail::parse_double(val, line, key);
    else if (key == "material.Omega") c.material_Omega = detail::parse_list(val, line, key);
    else if (key == "material.omega") c.material_omega = detail::parse_list(val, line, key);
    else if (key == "material.gamma") c.material_gamma = detail::parse_list(val, line, key);
    else if (key == "atom.omega") c.atom_omega = detail::parse_list(val, line, key);
    else if (key == "atom.d2") c.atom_d2 = detail::parse_list(val, line, key);
    else if (key == "sweep.r_min") c.sweep_r_min = detail::parse_double(val, line, key);
    else if (key == "sweep.r_max") c.sweep_r_max = detail::parse_double(val, line, key);
    else if (key == "sweep.points") c.sweep_points = detail::parse_int(val, line, key);
    else if (key == "sweep.spacing") c.sweep_spacing = val;
    else if (key == "quad.rel_tol") c.quad_rel_tol = detail::parse_double(val, line, key);
    else if (key == "quad.max_panels") c.quad_max_panels = detail::parse_int(val, line, key);
    else if (key == "series.rel_tol") c.series_rel_tol = detail::parse_double(val, line, key);
    else if (key == "series.n_max") c.series_n_max = detail::parse_int(val, line, key);
    else if (key == "jobs") c.jobs = detail::parse_int(val, line, key);
    else if (key == "out") c.out = val;
    else
      throw ConfigError("config line " + std::to_string(line) + ": unknown key '" + key + "'",
                        line, key);
  }
  return c;
}

inline RunConfig parse_config_string(const std::string& text) {
  std::istringstream ss(text);
  return parse_config(ss);
}

inline std::string serialize_config(const RunConfig& c) {
  std::string s;
  s += "mode = " + c.mode + "\n";
  s += "units = " + c.units + "\n";
  s += "R = " + detail::format_double(c.R) + "\n";
  s += "material.Omega = " + detail::format_list(c.material_Omega) + "\n";
  s += "material.omega = " + detail::format_list(c.material_omega) + "\n";
  s += "material.gamma = " + detail::format_list(c.material_gamma) + "\n";
  s += "atom.omega = " + detail::format_list(c.atom_omega) + "\n";
  s += "atom.d2 = " + detail::format_list(c.atom_d2) + "\n";
  s += "sweep.r_min = " + detail::format_double(c.sweep_r_min) + "\n";
  s += "sweep.r_max = " + detail::format_double(c.sweep_r_max) + "\n";
  s += "sweep.points = " + std::to_string(c.sweep_points) + "\n";
  s += "sweep.spacing = " + c.sweep_spacing + "\n";
  s += "quad.rel_tol = " + detail::format_double(c.quad_rel_tol) + "\n";
  s += "quad.max_panels = " + std::to_string(c.quad_max_panels) + "\n";
  s += "series.rel_tol = " + detail::format_double(c.series_rel_tol) + "\n";
  s += "series.n_max = " + std::to_string(c.series_n_max) + "\n";
  s += "jobs = " + std::to_string(c.jobs) + "\n";
  s += "out = " + c.out + "\n";
  return s;
}

/// Internal-unit view of a config: hbar = c = eps0 = 1 and the reference
/// frequency (first material oscillator, else first atomic transition) = 1,
/// so lambda_ref = 2 pi.
struct RunSetup {
  PolarizabilityModel atom;
  SphereSystem sphere;
  bool has_reference = false;
  double lambda = 0.0;       // reference wavelength, internal units
  std::vector<double> r_grid;  // atom positions r_A, internal units
};

inline RunSetup make_setup(const RunConfig& c) {
  validate_config(c);
  constexpr double c_si = 299792458.0;

  double omega_ref_input = 0.0;
  for (double v : c.material_Omega)
    if (v > 0.0) {
      omega_ref_input = v;
      break;
    }
  if (omega_ref_input == 0.0 && !c.atom_omega.empty()) omega_ref_input = c.atom_omega[0];

  RunSetup s;
  s.has_reference = omega_ref_input > 0.0;

  // freq_to_internal / len_to_internal map config numbers to internal units.
  double freq_scale = 1.0, len_scale = 1.0;
  if (c.units == "si") {
    if (!s.has_reference)
      throw ConfigError("config: units = si needs a nonzero reference frequency", 0, "units");
    freq_scale = 1.0 / omega_ref_input;
    len_scale = omega_ref_input / c_si;
  } else if (s.has_reference) {
    // reduced: frequencies are already in Omega_ref, lengths in lambda_ref
    len_scale = 2.0 * kPi;
  }

  std::vector<Oscillator> osc;
  for (size_t i = 0; i < c.material_Omega.size(); ++i) {
    if (c.material_Omega[i] == 0.0) continue;
    osc.push_back({c.material_Omega[i] * freq_scale, c.material_omega[i] * freq_scale,
                   c.material_gamma[i] * freq_scale});
  }
  std::vector<Transition> tr;
  for (size_t i = 0; i < c.atom_omega.size(); ++i)
    tr.push_back({c.atom_omega[i] * freq_scale, c.atom_d2[i]});

  s.atom = PolarizabilityModel(std::move(tr));
  s.sphere = SphereSystem{c.R * len_scale, PermittivityModel(std::move(osc))};
  s.lambda = s.has_reference ? 2.0 * kPi : 0.0;

  s.r_grid.reserve(static_cast<size_t>(c.sweep_points));
  for (int i = 0; i < c.sweep_points; ++i) {
    const double f = static_cast<double>(i) / (c.sweep_points - 1);
    double r;
    if (c.sweep_spacing == "log")
      r = c.sweep_r_min * std::pow(c.sweep_r_max / c.sweep_r_min, f);
    else
      r = c.sweep_r_min + f * (c.sweep_r_max - c.sweep_r_min);
    s.r_grid.push_back(r * len_scale);
  }
  return s;
}

}  // namespace vdw
