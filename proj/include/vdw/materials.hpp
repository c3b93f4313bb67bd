#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "vdw/scaled.hpp"

// Dielectric response and atomic polarizability on the positive imaginary
// frequency axis (omega = iu), where both are real, positive and smooth.
//
// Units: hbar = c = eps0 = 1 throughout the library; frequencies are in units
// of some reference frequency fixed by the caller, lengths in units of the
// corresponding c/frequency.

namespace vdw {

/// One Drude-Lorentz oscillator: eps(omega) picks up
/// Omega^2 / (omega_r^2 - omega^2 - i omega gamma).  omega_r = 0 gives a
/// Drude (metallic) term.
struct Oscillator {
  double Omega = 0.0;    // oscillator-strength frequency
  double omega_r = 0.0;  // transverse resonance frequency
  double gamma = 0.0;    // absorption constant
};

class PermittivityModel {
 public:
  PermittivityModel() = default;
  explicit PermittivityModel(std::vector<Oscillator> oscillators)
      : osc_(std::move(oscillators)) {
    for (const auto& o : osc_) {
      if (o.Omega < 0.0 || o.omega_r < 0.0 || o.gamma < 0.0)
        throw std::domain_error("PermittivityModel: oscillator parameters must be >= 0");
    }
  }

  const std::vector<Oscillator>& oscillators() const { return osc_; }
  bool empty() const { return osc_.empty(); }

  /// Any Drude term present: the static permittivity diverges.
  bool is_metal() const {
    for (const auto& o : osc_)
      if (o.Omega > 0.0 && o.omega_r == 0.0) return true;
    return false;
  }

  /// eps(iu) = 1 + sum_l Omega_l^2 / (omega_l^2 + u^2 + u gamma_l), real and
  /// > 1 for u > 0 whenever some Omega_l > 0.  u = 0 is allowed only for
  /// purely dielectric models; the metallic static limit is infinite and must
  /// be handled by the caller's limit formulas, never by evaluation.
  double epsilon_iu(double u) const {
    if (u < 0.0) throw std::domain_error("epsilon_iu: u must be >= 0");
    double eps = 1.0;
    for (const auto& o : osc_) {
      const double den = o.omega_r * o.omega_r + u * (u + o.gamma);
      if (den == 0.0) {
        if (o.Omega == 0.0) continue;
        throw std::domain_error("epsilon_iu: static limit of a Drude term is infinite");
      }
      eps += o.Omega * o.Omega / den;
    }
    return eps;
  }

  /// Static permittivity 1 + sum Omega_l^2/omega_l^2; independent of the
  /// absorption constants.  Throws for metals.
  double static_permittivity() const {
    if (is_metal())
      throw std::domain_error("static_permittivity: diverges for a Drude (metallic) model");
    double eps = 1.0;
    for (const auto& o : osc_) {
      if (o.Omega > 0.0) eps += (o.Omega * o.Omega) / (o.omega_r * o.omega_r);
    }
    return eps;
  }

  /// Closed-form d/dgamma_l of the surface response (eps(iu)-1)/(eps(iu)+1):
  ///   -2 u Omega_l^2 / [(eps+1)^2 (omega_l^2 + u^2 + u gamma_l)^2],
  /// strictly negative for u > 0 when Omega_l > 0.
  double surface_response_derivative(std::size_t l, double u) const {
    if (l >= osc_.size())
      throw std::out_of_range("surface_response_derivative: oscillator index out of range");
    if (!(u > 0.0)) throw std::domain_error("surface_response_derivative: u must be > 0");
    const auto& o = osc_[l];
    if (o.Omega == 0.0) return 0.0;
    const double eps = epsilon_iu(u);
    const double den = o.omega_r * o.omega_r + u * (u + o.gamma);
    return -2.0 * u * o.Omega * o.Omega / ((eps + 1.0) * (eps + 1.0) * den * den);
  }

  /// Copy with every oscillator's absorption constant replaced; used for
  /// absorption sweeps at fixed oscillator strengths.
  PermittivityModel with_gamma(double gamma) const {
    if (gamma < 0.0) throw std::domain_error("with_gamma: gamma must be >= 0");
    std::vector<Oscillator> osc = osc_;
    for (auto& o : osc) o.gamma = gamma;
    return PermittivityModel(std::move(osc));
  }

 private:
  std::vector<Oscillator> osc_;
};

/// One ground-state dipole transition: frequency omega_n > 0 and squared
/// dipole matrix element |d_{0n}|^2.
struct Transition {
  double omega = 0.0;
  double d2 = 0.0;
};

class PolarizabilityModel {
 public:
  PolarizabilityModel() = default;
  explicit PolarizabilityModel(std::vector<Transition> transitions)
      : tr_(std::move(transitions)) {
    for (const auto& t : tr_) {
      if (!(t.omega > 0.0)) throw std::domain_error("PolarizabilityModel: omega_n must be > 0");
      if (t.d2 < 0.0) throw std::domain_error("PolarizabilityModel: |d|^2 must be >= 0");
    }
  }

  const std::vector<Transition>& transitions() const { return tr_; }
  bool empty() const { return tr_.empty(); }

  /// alpha(iu) = (2/3) sum_n omega_n |d_{0n}|^2 / (omega_n^2 + u^2); the
  /// eta -> 0+ regulator of the real-frequency form has been taken
  /// analytically, so the imaginary-axis expression is exact as written.
  double alpha_iu(double u) const {
    if (u < 0.0) throw std::domain_error("alpha_iu: u must be >= 0");
    double a = 0.0;
    for (const auto& t : tr_) a += t.omega * t.d2 / (t.omega * t.omega + u * u);
    return (2.0 / 3.0) * a;
  }

  double static_polarizability() const { return alpha_iu(0.0); }

  /// sum_n |d_{0n}|^2 = <0|d^2|0>; fixes the perfect-reflector coefficient
  /// and the figure normalization constant.
  double total_d2() const {
    double s = 0.0;
    for (const auto& t : tr_) s += t.d2;
    return s;
  }

  /// Largest transition frequency (0 for an empty model); a natural
  /// quadrature scale for frequency integrals over alpha(iu).
  double max_omega() const {
    double m = 0.0;
    for (const auto& t : tr_) m = std::max(m, t.omega);
    return m;
  }

 private:
  std::vector<Transition> tr_;
};

}  // namespace vdw
